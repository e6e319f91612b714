#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "reslab/distributions.hpp"

namespace reslab {

struct DynamicsParams {
  double harassment = 0.0;        // constant input level H
  std::vector<double> schedule;   // optional per-step H_t; overrides
                                  // `harassment` and holds its last level
  double alpha = 1.0;             // recruitment failure coefficient in [0,1]
  double lambda = 0.0;            // infiltration rate >= 0
  double tol = 1e-10;
  std::size_t max_iter = 1000000;

  bool time_varying() const { return !schedule.empty(); }
  double level_at(std::size_t t) const;
  void validate() const;  // throws std::invalid_argument
};

enum class AgentAction { Stay, Leave };

// Threshold rule on experienced harassment H/(1-p); the tie theta == H/(1-p)
// resolves to leaving. Throws std::domain_error if p >= 1.
AgentAction agent_action(double theta, double harassment, double departed);

// One step of the combined dynamics p' = F((H + lambda*alpha*p)/(1 - alpha*p)).
// When the denominator reaches the epsilon floor the CDF argument is taken as
// +infinity and the step returns 1.
double step(const ThresholdDistribution& f, double departed, double harassment,
            double alpha, double lambda);
double step(const ThresholdDistribution& f, double departed,
            const DynamicsParams& params);

struct Trajectory {
  std::vector<double> points;  // p_0 = 0, p_1, ...
  bool converged = false;
  double limit = 0.0;
  std::size_t iterations = 0;
};

// Iterates from p_0 = 0 until |p_{t+1} - p_t| < tol or max_iter steps.
// Non-convergence is reported through the flag, never an exception.
Trajectory simulate(const ThresholdDistribution& f,
                    const DynamicsParams& params);

// Limit fraction p_inf. The baseline model (alpha = 1, lambda = 0, constant H)
// locates the smallest root of g(x) = x - F(H/(1-x)) in [0,1) by a bracketing
// scan plus bisection, returning 1 when no root exists below 1; tangency roots
// (critical H) are recovered by maximizing g over the best scan cell. Other
// parameterizations fall back to simulate().
double limit_fraction(const ThresholdDistribution& f,
                      const DynamicsParams& params);

// Per-point limit_fraction over a sorted grid of harassment levels.
std::vector<std::pair<double, double>> sweep_pinf(
    const ThresholdDistribution& f, const std::vector<double>& h_grid,
    double alpha, double lambda, unsigned threads = 1);

}  // namespace reslab
