#include "cornerscat/artifacts.hpp"

#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstring>
#include <ctime>
#include <fstream>
#include <sstream>

#include "cornerscat/errors.hpp"
#include "cornerscat/report.hpp"

#ifndef CORNERSCAT_VERSION
#define CORNERSCAT_VERSION "unknown"
#endif

namespace cornerscat {

namespace fs = std::filesystem;

namespace {

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

constexpr char kMagic[8] = {'C', 'S', 'M', 'A', 'T', '0', '0', '1'};

}  // namespace

void write_atomic(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string csv_number(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

void CsvTable::add_row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_.size()) throw PreconditionError("CSV row width does not match the header");
  rows_.push_back(cells);
}

std::string CsvTable::str() const {
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  };
  std::ostringstream os;
  for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << quote(columns_[i]);
  os << '\n';
  for (const auto& r : rows_) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << quote(r[i]);
    os << '\n';
  }
  return os.str();
}

ArtifactWriter::ArtifactWriter(fs::path dir) : dir_(std::move(dir)), started_(utc_now()) {
  fs::create_directories(dir_);
}

void ArtifactWriter::write_text(const std::string& name, const std::string& content) {
  write_atomic(dir_ / name, content);
  files_.push_back(name);
}

void ArtifactWriter::write_json(const std::string& name, const nlohmann::json& j) { write_text(name, j.dump(2) + "\n"); }

void ArtifactWriter::write_csv(const std::string& name, const CsvTable& t) { write_text(name, t.str()); }

void ArtifactWriter::write_manifest(const nlohmann::json& config, const std::string& mode, bool passed, int exit_code,
                                    bool partial, const nlohmann::json& summary) {
  nlohmann::json m;
  m["mode"] = mode;
  m["config_hash"] = config_hash(config);
  m["config"] = config;
  m["version"] = CORNERSCAT_VERSION;
  m["started"] = started_;
  m["finished"] = utc_now();
  m["files"] = files_;
  m["passed"] = passed;
  m["exit_code"] = exit_code;
  m["partial"] = partial;
  m["summary"] = summary;
  write_atomic(dir_ / "manifest.json", m.dump(2) + "\n");
}

std::string config_hash(const nlohmann::json& config) { return sha256_hex(config.dump()); }

MatrixCache::MatrixCache(fs::path dir) : dir_(std::move(dir)) {}

fs::path MatrixCache::path_for(const nlohmann::json& key) const { return dir_ / (config_hash(key) + ".bin"); }

std::optional<Eigen::MatrixXcd> MatrixCache::load(const nlohmann::json& key) const {
  std::ifstream in(path_for(key), std::ios::binary);
  if (!in) return std::nullopt;
  char magic[8];
  std::int64_t rows = 0, cols = 0;
  in.read(magic, sizeof magic);
  in.read(reinterpret_cast<char*>(&rows), sizeof rows);
  in.read(reinterpret_cast<char*>(&cols), sizeof cols);
  if (!in || std::memcmp(magic, kMagic, sizeof magic) != 0 || rows < 0 || cols < 0) return std::nullopt;
  Eigen::MatrixXcd m(rows, cols);
  in.read(reinterpret_cast<char*>(m.data()), static_cast<std::streamsize>(sizeof(std::complex<double>) * m.size()));
  if (!in) return std::nullopt;
  return m;
}

void MatrixCache::store(const nlohmann::json& key, const Eigen::MatrixXcd& m) const {
  fs::create_directories(dir_);
  std::string buf(kMagic, sizeof kMagic);
  const std::int64_t rows = m.rows(), cols = m.cols();
  buf.append(reinterpret_cast<const char*>(&rows), sizeof rows);
  buf.append(reinterpret_cast<const char*>(&cols), sizeof cols);
  buf.append(reinterpret_cast<const char*>(m.data()), sizeof(std::complex<double>) * m.size());
  write_atomic(path_for(key), buf);
}

}  // namespace cornerscat
