#pragma once

#include <cstddef>
#include <vector>

#include "reslab/distributions.hpp"

namespace reslab {

// n equal-mass sorted atoms: the finite stand-in for a threshold distribution
// in the intervention programs. Granularity n is a required modeling choice;
// it is what stops a "lift a measure-zero set of quantiles" degenerate
// solution from faking resilience at zero cost.
struct QuantileVector {
  std::vector<double> atoms;

  std::size_t size() const { return atoms.size(); }
  void validate() const;  // sorted, nonnegative, nonempty
};

// Midpoint-rule discretization: q_i = Q((i - 1/2)/n), i = 1..n.
QuantileVector discretize(const ThresholdDistribution& f, std::size_t n);

// max_i (1 - (i-1)/n) q_i: the step-quantile version of the resilience sup,
// attained at the open left edge of each quantile block.
double discrete_resilience(const QuantileVector& qv);

// ((1/n) sum |a_i - b_i|^p)^(1/p): the sorted coupling, optimal in 1-D.
// Requires equal sizes and p_norm >= 1.
double wasserstein(const QuantileVector& a, const QuantileVector& b,
                   double p_norm);

// (integral_0^1 |Q1(u) - Q2(u)|^p du)^(1/p) by composite midpoint quadrature.
double wasserstein_continuous(const ThresholdDistribution& f1,
                              const ThresholdDistribution& f2, double p_norm,
                              std::size_t quad_points = 4096);

struct InterventionPlan {
  QuantileVector original;
  QuantileVector modified;
  double cost = 0.0;  // Wasserstein-p distance between original and modified
  double achieved_resilience = 0.0;
  std::size_t target_rank = 1;  // 1-based rank whose block was lifted
  double p_norm = 1.0;
};

// Least-cost lift reaching discrete resilience >= r_target: for each rank i
// the certificate needs atoms j >= i raised to L_i = r_target/(1 - (i-1)/n);
// the cheapest rank wins. Lowering atoms never helps and lifting outside the
// block is wasted cost, so the block lift is optimal over the monotone cone.
InterventionPlan min_cost_to_reach(const QuantileVector& qv, double r_target,
                                   double p_norm = 1.0);

// Most resilient lift affordable within the Wasserstein-p budget: per rank,
// binary-search the largest level whose block cost fits, then take the best
// rank.
InterventionPlan max_resilience_under_budget(const QuantileVector& qv,
                                             double budget,
                                             double p_norm = 1.0);

}  // namespace reslab
