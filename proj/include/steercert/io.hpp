#pragma once

#include <string>

#include "json.hpp"
#include "steercert/certifier.hpp"
#include "steercert/correlations.hpp"

namespace steercert {

inline constexpr const char* kVersion = "0.1.0";

using nlohmann::json;

json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j);

/// `{"d": int, "vertices": int, "edges": [[i, j, gamma], ...]}`;
/// a two-element edge means gamma = 1.
Multigraph multigraph_from_json(const json& j);
json multigraph_to_json(const Multigraph& g);

/// Parsed scenario file: family parameters plus the measurement assignment.
/// `"bob_observables": "ideal"` fills in the clock/shift pair per Bob.
struct ScenarioSpec {
  FamilyParams params;
  Scenario scenario;
};

ScenarioSpec scenario_from_json(const json& j);

/// FNV-1a hash of the canonical serialization, as a hex string.
std::string scenario_hash(const json& j);

json bound_report_to_json(const BoundReport& r);
json certification_report_to_json(const CertificationReport& r,
                                  bool embed_matrices = false);

}  // namespace steercert
