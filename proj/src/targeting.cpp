#include "reslab/targeting.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace reslab {

namespace {

void require_continuous(const ThresholdDistribution& f) {
  if (f.kind() == DistKind::EmpiricalAtoms) {
    throw std::invalid_argument(
        "targeting: needs a continuous CDF; wrap empirical data in a "
        "piecewise-linear bridge first");
  }
}

}  // namespace

std::optional<double> next_threshold(const ThresholdDistribution& f,
                                     double theta_prev, double harassment) {
  require_continuous(f);
  if (!(harassment > 0.0)) {
    throw std::invalid_argument("targeting: harassment must be > 0");
  }
  if (!(theta_prev >= 0.0)) {
    throw std::invalid_argument("targeting: theta_prev must be >= 0");
  }
  double f_prev = f.cdf(theta_prev);
  if (f_prev >= 1.0) {
    throw std::domain_error("targeting: no mass left beyond theta_prev");
  }
  auto phi = [&](double theta) {
    return theta * (f.cdf(theta) - f_prev) - harassment;
  };

  double lo = theta_prev;  // phi(lo) = -H < 0
  double hi;
  if (f.support_bounded()) {
    hi = f.support_upper();
    if (phi(hi) < 0.0) return std::nullopt;  // exhausted: final sweep clears
  } else {
    hi = std::max(theta_prev, 1.0);
    while (phi(hi) < 0.0) hi *= 2.0;  // F(hi) -> 1 > f_prev, so this ends
  }
  while (hi - lo > 1e-12 * std::max(1.0, hi)) {
    double mid = 0.5 * (lo + hi);
    if (phi(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;  // the side with phi >= 0, so the recursion equality holds there
}

TargetingTrace targeted_unravel(const ThresholdDistribution& f,
                                double harassment, double epsilon,
                                std::size_t max_steps) {
  require_continuous(f);
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("targeting: epsilon must lie in (0,1)");
  }
  TargetingTrace trace;
  trace.epsilon = epsilon;
  trace.thresholds.push_back(0.0);
  trace.removed_mass.push_back(0.0);
  trace.cumulative.push_back(f.cdf(0.0));

  double theta = 0.0;
  for (std::size_t s = 1; s <= max_steps; ++s) {
    double covered = trace.cumulative.back();
    auto next = next_threshold(f, theta, harassment);
    if (!next) {
      trace.thresholds.push_back(f.support_upper());
      trace.removed_mass.push_back(1.0 - covered);
      trace.cumulative.push_back(1.0);
      trace.steps_to_unravel = s;
      trace.exhausted = true;
      return trace;
    }
    theta = *next;
    double reached = f.cdf(theta);
    trace.thresholds.push_back(theta);
    trace.removed_mass.push_back(reached - covered);
    trace.cumulative.push_back(reached);
    if (1.0 - reached <= epsilon) {
      trace.steps_to_unravel = s;
      return trace;
    }
  }
  return trace;  // cap hit; steps_to_unravel stays empty ("not reached")
}

}  // namespace reslab
