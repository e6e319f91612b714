#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "reslab/distributions.hpp"

namespace reslab {

struct TargetingTrace {
  std::vector<double> thresholds;    // theta_0 = 0, then one entry per round
  std::vector<double> removed_mass;  // aligned with thresholds; 0 at t = 0
  std::vector<double> cumulative;    // F(theta_t)
  std::optional<std::size_t> steps_to_unravel;  // rounds until residual <= epsilon
  double epsilon = 1e-6;
  bool exhausted = false;  // bounded support emptied on the final round
};

// Root theta > theta_prev of phi(theta) = theta*(F(theta) - F(theta_prev)) - H,
// located by geometric bracketing plus bisection to 1e-12 * max(1, theta).
// Returns nullopt ("exhausted") when the support is bounded by b and
// phi(b) < 0: the whole remaining mass leaves in one final round. Requires a
// continuous F (EmpiricalAtoms rejected), H > 0 and F(theta_prev) < 1.
std::optional<double> next_threshold(const ThresholdDistribution& f,
                                     double theta_prev, double harassment);

// Iterates next_threshold from theta_0 = 0 until the residual mass drops to
// epsilon, the support is exhausted, or max_steps rounds pass (reported as an
// empty steps_to_unravel, not an error).
TargetingTrace targeted_unravel(const ThresholdDistribution& f,
                                double harassment, double epsilon,
                                std::size_t max_steps);

}  // namespace reslab
