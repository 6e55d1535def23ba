#pragma once

// Run artifacts: CSV/JSON files written atomically into one directory, a
// manifest listing every file, and a content-addressed cache of far-field
// matrices.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace cornerscat {

/// Writes `content` to `path` through a temporary file and a rename.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Full-precision number formatting used in every CSV (shortest round-trip form).
std::string csv_number(double v);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}
  /// Numbers are formatted with csv_number; a row must match the header width.
  void add_row(const std::vector<std::string>& cells);
  std::string str() const;
  std::size_t rows() const { return rows_.size(); }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

class ArtifactWriter {
 public:
  /// Creates `dir` (and parents).
  explicit ArtifactWriter(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }
  void write_text(const std::string& name, const std::string& content);
  void write_json(const std::string& name, const nlohmann::json& j);
  void write_csv(const std::string& name, const CsvTable& t);
  const std::vector<std::string>& files() const { return files_; }

  /// Writes manifest.json last.  `partial` flags runs aborted after some output.
  void write_manifest(const nlohmann::json& config, const std::string& mode, bool passed, int exit_code,
                      bool partial, const nlohmann::json& summary);

 private:
  std::filesystem::path dir_;
  std::vector<std::string> files_;
  std::string started_;
};

/// SHA-256 of the canonical (sorted-key, compact) JSON form.
std::string config_hash(const nlohmann::json& config);

/// Binary cache of complex matrices keyed by the SHA-256 of a JSON key document.
class MatrixCache {
 public:
  explicit MatrixCache(std::filesystem::path dir);
  std::optional<Eigen::MatrixXcd> load(const nlohmann::json& key) const;
  void store(const nlohmann::json& key, const Eigen::MatrixXcd& m) const;
  std::filesystem::path path_for(const nlohmann::json& key) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace cornerscat
