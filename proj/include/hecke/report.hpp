#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hecke/verify.hpp"

namespace hecke {

inline void to_json(nlohmann::json& j, const CheckRecord& r) {
  j = nlohmann::json{{"check_id", r.check_id}, {"paper_ref", r.paper_ref}, {"verdict", r.verdict},
                     {"expected", r.expected}, {"computed", r.computed},   {"millis", r.millis}};
}

inline void from_json(const nlohmann::json& j, CheckRecord& r) {
  j.at("check_id").get_to(r.check_id);
  j.at("paper_ref").get_to(r.paper_ref);
  j.at("verdict").get_to(r.verdict);
  j.at("expected").get_to(r.expected);
  j.at("computed").get_to(r.computed);
  j.at("millis").get_to(r.millis);
}

/// One JSON object per line, keys in fixed order.
inline std::string emit_records(const std::vector<CheckRecord>& rs) {
  std::string out;
  for (const auto& r : rs) {
    nlohmann::ordered_json j;
    j["check_id"] = r.check_id;
    j["paper_ref"] = r.paper_ref;
    j["verdict"] = r.verdict;
    j["expected"] = r.expected;
    j["computed"] = r.computed;
    j["millis"] = r.millis;
    out += j.dump() + "\n";
  }
  return out;
}

inline std::vector<CheckRecord> parse_records(const std::string& text) {
  std::vector<CheckRecord> out;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;
    out.push_back(nlohmann::json::parse(line).get<CheckRecord>());
  }
  return out;
}

inline std::string text_line(const CheckRecord& r) {
  std::string s = "[" + r.verdict + "] " + r.check_id + ": " + r.computed;
  if (r.verdict == "fail" || r.verdict == "mismatch") s += "  (expected " + r.expected + ")";
  return s;
}

}  // namespace hecke
