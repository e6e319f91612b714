#pragma once

#include <cstddef>
#include <optional>

#include "reslab/distributions.hpp"

namespace reslab {

struct AucResult {
  double value = 0.0;
  double h_min = 0.0;
  double h_max = 0.0;
};

struct ResilienceReport {
  double value = 0.0;        // +infinity when the metric diverges
  double maximizer_p = 0.0;  // argmax of the quantile objective (finite case)
  std::optional<AucResult> auc;
  std::optional<double> critical_fraction;  // departed fraction at H = value - eps
  bool infinite() const;
};

struct ResilienceOptions {
  std::size_t grid_points = 100000;  // density of the p-grid; accuracy control
  double divergence_guard = 1e9;     // objective beyond this flags +infinity
  double endpoint_guard = 1e-9;      // grid spans [guard, 1 - guard]
};

// sup_{p in (0,1)} (1-p) Q(p), evaluated on a dense grid with golden-section
// refinement of the best cell. EmpiricalAtoms use the exact block maximum
// max_i (1 - (i-1)/n) q_i instead of the grid.
ResilienceReport resilience(const ThresholdDistribution& f,
                            const ResilienceOptions& options = {});

// sup_{p in (0,1)} {(1 - alpha p) Q(p) - lambda alpha p}. Unbounded support
// with alpha < 1 makes the objective diverge at p -> 1, so that case is
// flagged infinite directly; bounded supports use the same grid strategy.
// The value is clamped at 0 (the metric is an infimum over H > 0).
ResilienceReport resilience_combined(const ThresholdDistribution& f,
                                     double alpha, double lambda,
                                     const ResilienceOptions& options = {});

// Exact closed forms for the uniform and exponential families, used as the
// oracle against the numeric sup. Uniform requires upper >= 2*lower; other
// kinds throw std::invalid_argument. Returns +infinity where the metric
// diverges.
double closed_form_resilience(const ThresholdDistribution& f, double alpha,
                              double lambda);

// Trapezoidal integral of p_inf(H) over [h_min, h_max] on `grid_points`
// equally spaced nodes (>= 2).
double auc_resilience(const ThresholdDistribution& f, double h_min,
                      double h_max, std::size_t grid_points, double alpha,
                      double lambda, unsigned threads = 1);

// p_inf evaluated just below the critical harassment (offset 1e-9). Throws
// std::domain_error when the resilience is infinite.
double critical_fraction(const ThresholdDistribution& f, double alpha,
                         double lambda);

struct DominanceVerdict {
  bool dominance = false;  // first argument first-order dominates second
  double resilience_dominant = 0.0;
  double resilience_dominated = 0.0;
  bool ordering_holds = false;  // dominant >= dominated - slack
};

// Checks Proposition-2-style ordering: when a dominates b, their resilience
// values must stay ordered within the slack.
DominanceVerdict check_dominance_ordering(const ThresholdDistribution& a,
                                          const ThresholdDistribution& b,
                                          double slack = 1e-9);

}  // namespace reslab
