#pragma once

#include <json.hpp>

#include "reslab/distributions.hpp"
#include "reslab/resilience.hpp"
#include "reslab/transport.hpp"

namespace reslab {

// Distribution spec schema:
//   {"kind": "uniform",     "lower": a, "upper": b}
//   {"kind": "exponential", "rate": r}
//   {"kind": "empirical",   "atoms": [...]}
//   {"kind": "piecewise",   "x": [...], "cdf": [...]}
// Throws std::invalid_argument on malformed specs.
ThresholdDistribution distribution_from_json(const nlohmann::json& spec);
nlohmann::json distribution_to_json(const ThresholdDistribution& d);

// Hand-rolled JSON emission with fixed significant-digit formatting so files
// are byte-stable; infinite values are emitted as the string "inf".
std::string resilience_report_to_json(const ResilienceReport& report,
                                      int precision = 12);
std::string intervention_plan_to_json(const InterventionPlan& plan,
                                      int precision = 12);

}  // namespace reslab
