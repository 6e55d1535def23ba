#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace cornerscat {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Named list of pass/fail checks produced by the verifiers.
struct CheckReport {
  std::string title;
  std::vector<Check> checks;

  void add(std::string name, bool passed, std::string detail = {}) {
    checks.push_back(Check{std::move(name), passed, std::move(detail)});
  }
  void merge(const CheckReport& other);
  bool passed() const;
  std::size_t failures() const;
};

void to_json(nlohmann::json& j, const Check& c);
void to_json(nlohmann::json& j, const CheckReport& r);

/// Lower-case hex SHA-256 of `data`.
std::string sha256_hex(const std::string& data);

}  // namespace cornerscat
