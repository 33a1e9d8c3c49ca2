#pragma once

#include <array>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "bordered/error.hpp"

namespace bordered {

inline std::string sha256_hex(const std::string& bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
    fail(ErrorCode::Io, "sha256 failed");
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

struct InputDigest {
  std::string path;
  std::string sha256;
  friend bool operator==(const InputDigest&, const InputDigest&) = default;
};

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
  friend bool operator==(const Check&, const Check&) = default;
};

struct RunReport {
  std::string command;
  std::vector<InputDigest> inputs;
  nlohmann::json results = nlohmann::json::object();
  std::vector<Check> checks;
  std::optional<double> seconds;  // only when timing was requested
  std::optional<std::string> error_code;
  std::string error_message;

  bool pass() const {
    if (error_code) return false;
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  void check(std::string name, bool ok, std::string detail = {}) { checks.push_back({std::move(name), ok, std::move(detail)}); }
  friend bool operator==(const RunReport&, const RunReport&) = default;
};

inline nlohmann::json to_json(const RunReport& r) {
  nlohmann::json inputs = nlohmann::json::array(), checks = nlohmann::json::array();
  for (const auto& i : r.inputs) inputs.push_back({{"path", i.path}, {"sha256", i.sha256}});
  for (const auto& c : r.checks) {
    nlohmann::json o = {{"name", c.name}, {"pass", c.pass}};
    if (!c.detail.empty()) o["detail"] = c.detail;
    checks.push_back(o);
  }
  nlohmann::json j = {{"command", r.command}, {"inputs", inputs}, {"results", r.results}, {"checks", checks}, {"pass", r.pass()}};
  if (r.seconds) j["seconds"] = *r.seconds;
  if (r.error_code) j["error"] = {{"code", *r.error_code}, {"message", r.error_message}};
  return j;
}

inline RunReport report_from_json(const nlohmann::json& j) {
  RunReport r;
  try {
    r.command = j.at("command").get<std::string>();
    for (const auto& i : j.at("inputs")) r.inputs.push_back({i.at("path").get<std::string>(), i.at("sha256").get<std::string>()});
    r.results = j.at("results");
    for (const auto& c : j.at("checks")) r.checks.push_back({c.at("name").get<std::string>(), c.at("pass").get<bool>(), c.value("detail", "")});
    if (j.contains("seconds")) r.seconds = j.at("seconds").get<double>();
    if (j.contains("error")) {
      r.error_code = j.at("error").at("code").get<std::string>();
      r.error_message = j.at("error").at("message").get<std::string>();
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, std::string("report: ") + e.what());
  }
  return r;
}

namespace detail {

inline void render_value(std::ostringstream& out, const std::string& key, const nlohmann::json& v, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  if (v.is_object()) {
    out << pad << key << ":\n";
    for (auto it = v.begin(); it != v.end(); ++it) render_value(out, it.key(), it.value(), depth + 1);
  } else if (v.is_string()) {
    out << pad << key << ": " << v.get<std::string>() << "\n";
  } else {
    const auto s = v.dump();
    if (s.size() > 120) out << pad << key << ": " << s.substr(0, 117) << "...\n";
    else out << pad << key << ": " << s << "\n";
  }
}

}  // namespace detail

/// Plain-text rendering for terminals.
inline std::string render_text(const RunReport& r) {
  std::ostringstream out;
  out << "command: " << r.command << "\n";
  for (const auto& i : r.inputs) out << "input: " << i.path << " sha256=" << i.sha256 << "\n";
  for (auto it = r.results.begin(); it != r.results.end(); ++it) detail::render_value(out, it.key(), it.value(), 0);
  for (const auto& c : r.checks) {
    out << "check " << c.name << ": " << (c.pass ? "pass" : "FAIL");
    if (!c.detail.empty()) out << " (" << c.detail << ")";
    out << "\n";
  }
  if (r.error_code) out << "error[" << *r.error_code << "]: " << r.error_message << "\n";
  if (r.seconds) out << "seconds: " << *r.seconds << "\n";
  out << "status: " << (r.pass() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

}  // namespace bordered
