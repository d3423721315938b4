#pragma once

#include <string>

#include <json.hpp>

#include "binsum/checks.hpp"

namespace binsum {

// JSON-lines encoding of check reports. Residues and moduli are serialized as
// decimal strings so consumers never face integer-width ambiguity; parameter
// order is preserved.
inline nlohmann::ordered_json report_to_json(const CheckReport& r) {
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  return nlohmann::ordered_json{{"name", r.name},
                                {"params", std::move(params)},
                                {"modulus", r.modulus.str()},
                                {"lhs", r.lhs.str()},
                                {"rhs", r.rhs.str()},
                                {"pass", r.pass},
                                {"skipped", r.skipped},
                                {"note", r.note}};
}

inline CheckReport report_from_json(const nlohmann::ordered_json& j) {
  CheckReport r;
  r.name = j.at("name").get<std::string>();
  for (const auto& [k, v] : j.at("params").items())
    r.params.emplace_back(k, v.get<std::string>());
  r.modulus = Int(j.at("modulus").get<std::string>());
  r.lhs = Int(j.at("lhs").get<std::string>());
  r.rhs = Int(j.at("rhs").get<std::string>());
  r.pass = j.at("pass").get<bool>();
  r.skipped = j.at("skipped").get<bool>();
  r.note = j.at("note").get<std::string>();
  return r;
}

}  // namespace binsum
