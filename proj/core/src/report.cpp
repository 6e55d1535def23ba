#include "cornerscat/report.hpp"

#include <algorithm>
#include <array>
#include <cstdio>

#include <openssl/evp.h>

namespace cornerscat {

void CheckReport::merge(const CheckReport& other) {
  for (const auto& c : other.checks) {
    checks.push_back(Check{other.title.empty() ? c.name : other.title + ": " + c.name, c.passed, c.detail});
  }
}

bool CheckReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::size_t CheckReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.passed; }));
}

void to_json(nlohmann::json& j, const Check& c) {
  j = nlohmann::json{{"name", c.name}, {"passed", c.passed}};
  if (!c.detail.empty()) j["detail"] = c.detail;
}

void to_json(nlohmann::json& j, const CheckReport& r) {
  j = nlohmann::json{{"title", r.title}, {"passed", r.passed()}, {"checks", r.checks}};
}

std::string sha256_hex(const std::string& data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr);
  std::string hex;
  hex.reserve(2 * len);
  char buf[3];
  for (unsigned int k = 0; k < len; ++k) {
    std::snprintf(buf, sizeof buf, "%02x", md[k]);
    hex += buf;
  }
  return hex;
}

}  // namespace cornerscat
