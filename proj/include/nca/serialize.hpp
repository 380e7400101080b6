#pragma once

// JSON shapes for Betti tables and verification reports.

#include <string>

#include <json.hpp>

#include "nca/regularity.hpp"
#include "nca/resolution.hpp"

namespace nca {

// {"window": [h, D], "entries": [[m, j, beta], ...]}
inline nlohmann::json betti_json(const BettiTable& b) {
  nlohmann::json j;
  j["window"] = {b.h, b.D};
  j["entries"] = nlohmann::json::array();
  for (const auto& [mj, count] : b.entries)
    if (count != 0) j["entries"].push_back({mj.first, mj.second, count});
  return j;
}

// {"claim": ..., "window": [h, D], "status": ..., "details": ...}
inline nlohmann::json report_json(const VerificationReport& r) {
  nlohmann::json j;
  j["claim"] = r.claim;
  j["window"] = {r.h, r.D};
  j["status"] = r.status;
  nlohmann::json details;
  details["checks"] = nlohmann::json::array();
  for (const auto& c : r.checks)
    details["checks"].push_back(
        {{"name", c.name}, {"status", c.status}, {"detail", c.detail}});
  for (const auto& [k, v] : r.values) details["values"][k] = v;
  j["details"] = details;
  return j;
}

inline nlohmann::json regularity_json(const RegularityValue& v) {
  nlohmann::json j;
  switch (v.kind) {
    case RegKind::Exact:
      j["kind"] = "exact";
      j["value"] = v.value;
      break;
    case RegKind::LowerBound:
      j["kind"] = "lower-bound";
      j["value"] = v.value;
      break;
    default:
      j["kind"] = "minus-infinity";
      break;
  }
  j["window"] = {v.h, v.D};
  return j;
}

}  // namespace nca
