#include "reslab/json_io.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "reslab/numfmt.hpp"

namespace reslab {

namespace {

using nlohmann::json;

std::vector<double> number_list(const json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_array()) {
    throw std::invalid_argument(std::string("distribution spec: missing array '") +
                                field + "'");
  }
  std::vector<double> out;
  for (const auto& v : j[field]) {
    if (!v.is_number()) {
      throw std::invalid_argument(std::string("distribution spec: '") + field +
                                  "' must hold numbers");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

double number_field(const json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_number()) {
    throw std::invalid_argument(
        std::string("distribution spec: missing number '") + field + "'");
  }
  return j[field].get<double>();
}

// "inf" as a string for non-finite values; JSON has no infinity literal.
std::string num_or_inf(double v, int precision) {
  if (std::isfinite(v)) return format_sig(v, precision);
  return std::string("\"") + format_sig(v, precision) + "\"";
}

std::string atom_list(const std::vector<double>& atoms, int precision) {
  std::string out = "[";
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i > 0) out += ",";
    out += format_sig(atoms[i], precision);
  }
  out += "]";
  return out;
}

}  // namespace

ThresholdDistribution distribution_from_json(const json& spec) {
  if (!spec.is_object() || !spec.contains("kind") ||
      !spec["kind"].is_string()) {
    throw std::invalid_argument("distribution spec: needs a 'kind' string");
  }
  std::string kind = spec["kind"].get<std::string>();
  if (kind == "uniform") {
    return ThresholdDistribution::uniform(number_field(spec, "lower"),
                                          number_field(spec, "upper"));
  }
  if (kind == "exponential") {
    return ThresholdDistribution::exponential(number_field(spec, "rate"));
  }
  if (kind == "empirical") {
    return ThresholdDistribution::empirical(number_list(spec, "atoms"));
  }
  if (kind == "piecewise") {
    return ThresholdDistribution::piecewise_linear(number_list(spec, "x"),
                                                   number_list(spec, "cdf"));
  }
  throw std::invalid_argument("distribution spec: unknown kind '" + kind +
                              "'");
}

json distribution_to_json(const ThresholdDistribution& d) {
  json j;
  switch (d.kind()) {
    case DistKind::UniformInterval:
      j["kind"] = "uniform";
      j["lower"] = d.uniform_lower();
      j["upper"] = d.uniform_upper();
      break;
    case DistKind::Exponential:
      j["kind"] = "exponential";
      j["rate"] = d.exponential_rate();
      break;
    case DistKind::EmpiricalAtoms:
      j["kind"] = "empirical";
      j["atoms"] = d.atoms();
      break;
    case DistKind::PiecewiseLinearCdf:
      j["kind"] = "piecewise";
      j["x"] = d.knot_x();
      j["cdf"] = d.knot_cdf();
      break;
  }
  return j;
}

std::string resilience_report_to_json(const ResilienceReport& report,
                                      int precision) {
  std::string out = "{";
  out += "\"value\":" + num_or_inf(report.value, precision);
  if (!report.infinite()) {
    out += ",\"maximizer_p\":" + format_sig(report.maximizer_p, precision);
  }
  if (report.auc) {
    out += ",\"auc\":" + format_sig(report.auc->value, precision);
    out += ",\"auc_range\":[" + format_sig(report.auc->h_min, precision) +
           "," + format_sig(report.auc->h_max, precision) + "]";
  }
  if (report.critical_fraction) {
    out += ",\"critical_fraction\":" +
           format_sig(*report.critical_fraction, precision);
    out += ",\"remaining_fraction\":" +
           format_sig(1.0 - *report.critical_fraction, precision);
  }
  out += "}\n";
  return out;
}

std::string intervention_plan_to_json(const InterventionPlan& plan,
                                      int precision) {
  std::string out = "{";
  out += "\"original\":" + atom_list(plan.original.atoms, precision);
  out += ",\"modified\":" + atom_list(plan.modified.atoms, precision);
  out += ",\"cost\":" + format_sig(plan.cost, precision);
  out += ",\"achieved_resilience\":" +
         format_sig(plan.achieved_resilience, precision);
  out += ",\"target_rank\":" + std::to_string(plan.target_rank);
  out += ",\"p_norm\":" + format_sig(plan.p_norm, precision);
  out += "}\n";
  return out;
}

}  // namespace reslab
