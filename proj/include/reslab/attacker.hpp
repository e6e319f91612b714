#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "reslab/distributions.hpp"

namespace reslab {

struct AttackerConfig {
  double cost_rate = 1.0;  // c, cost per unit harassment
  double discount = 0.9;   // delta; must be in [0,1) for contraction
  double h_max = 1.0;      // per-step harassment cap
  std::size_t p_grid = 1001;
  std::size_t h_grid = 501;
  double tol = 1e-9;  // value-iteration stopping tolerance
  // When set, departures are irreversible: p' = max(p, F(h/(1-p))), and the
  // stage payoff uses the same p'. The default follows the model verbatim,
  // which lets the state fall when harassment drops.
  bool monotone_transition = false;
  std::size_t max_sweeps = 100000;

  void validate() const;  // throws std::invalid_argument
};

struct ValueFunction {
  std::vector<double> grid;    // p values in [0,1]
  std::vector<double> values;  // V(p) per grid point
  double at(double p) const;   // linear interpolation, clamped to the grid
};

struct PolicyTable {
  std::vector<double> grid;
  std::vector<double> actions;  // h in [0, h_max] per grid point
  double at(double p) const;
};

// Attacker stage reward R(p,h) = F(h/(1-p)) - p - c*h; at p = 1 the CDF
// argument is taken as +infinity so the CDF term is 1.
double reward(const ThresholdDistribution& f, double departed,
              double harassment, double cost_rate);

struct MdpSolution {
  ValueFunction value;
  PolicyTable policy;
  std::vector<double> residuals;  // sup-norm change per sweep
  bool converged = false;
  std::size_t sweeps = 0;
};

// Value iteration for the infinite-horizon discounted problem on a p-grid
// with an h-grid action scan. Successor values come from linear interpolation
// (a nonexpansive map, so sweeps contract at rate <= delta). Stops when the
// sup-norm residual drops below tol*(1-delta)/(2*delta) and returns the
// greedy policy; argmax ties break toward the smallest h.
MdpSolution value_iteration(const ThresholdDistribution& f,
                            const AttackerConfig& config, unsigned threads = 1);

// max of the threshold density over [0, h_max]: the cost rate at and above
// which marginal harassment cannot pay for itself at p = 0. Requires a
// density.
double deterrence_cost(const ThresholdDistribution& f, double h_max,
                       std::size_t grid_points = 20001);

// Discounted rollout of a fixed policy from p_0 = 0 under f_true, stopping
// when the tail bound delta^t * M/(1-delta) falls below tol.
double evaluate_policy(const ThresholdDistribution& f_true,
                       const PolicyTable& policy, const AttackerConfig& config);

using PerturbationFamily = std::function<ThresholdDistribution(double)>;

// eps -> widened copy of f whose CDF sup-norm distance from f equals eps.
// Uniform widens its upper bound in closed form; exponential lowers its rate,
// calibrated by bisection. Requires eps in [0, 1).
PerturbationFamily make_widen_family(const ThresholdDistribution& f);

struct VoiPoint {
  double epsilon = 0.0;
  double regret = 0.0;  // u(pi* | F) - u(pi_hat | F), pi_hat optimized on F_hat
};

// Regret of optimizing against a perturbed estimate, per epsilon.
std::vector<VoiPoint> voi_curve(const ThresholdDistribution& f_true,
                                const PerturbationFamily& perturb,
                                const std::vector<double>& eps_grid,
                                const AttackerConfig& config,
                                unsigned threads = 1);

}  // namespace reslab
