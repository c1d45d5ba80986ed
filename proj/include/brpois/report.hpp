#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

namespace brpois {

struct CheckReport {
  std::string check;
  nlohmann::json params = nlohmann::json::object();
  bool pass = false;
  std::optional<std::string> witness;
  long long elapsed_ms = 0;

  std::string status() const { return pass ? "pass" : "fail"; }
};

inline nlohmann::json to_json(const CheckReport& r) {
  nlohmann::json j{{"check", r.check}, {"params", r.params}, {"status", r.status()}, {"elapsed_ms", r.elapsed_ms}};
  j["witness"] = r.witness ? nlohmann::json(*r.witness) : nlohmann::json(nullptr);
  return j;
}

inline CheckReport report_from_json(const nlohmann::json& j) {
  CheckReport r;
  r.check = j.at("check").get<std::string>();
  r.params = j.at("params");
  auto status = j.at("status").get<std::string>();
  if (status != "pass" && status != "fail") throw std::invalid_argument("bad report status: " + status);
  r.pass = status == "pass";
  if (j.contains("witness") && !j.at("witness").is_null()) r.witness = j.at("witness").get<std::string>();
  r.elapsed_ms = j.at("elapsed_ms").get<long long>();
  return r;
}

/// Runs `body` (returning an optional witness; nullopt means pass) and times it.
template <class F>
CheckReport timed_check(std::string name, nlohmann::json params, F&& body) {
  auto start = std::chrono::steady_clock::now();
  CheckReport r;
  r.check = std::move(name);
  r.params = std::move(params);
  r.witness = body();
  r.pass = !r.witness.has_value();
  r.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return r;
}

/// Shortens long residues so witnesses stay readable.
inline std::string clip(const std::string& s, std::size_t max = 240) {
  return s.size() <= max ? s : s.substr(0, max) + " ...";
}

}  // namespace brpois
