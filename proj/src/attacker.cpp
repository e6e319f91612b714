#include "reslab/attacker.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "reslab/parallel.hpp"
#include "scalar_opt.hpp"

namespace reslab {

namespace {

constexpr double kDenomFloor = 4.0 * std::numeric_limits<double>::epsilon();

double cdf_term(const ThresholdDistribution& f, double p, double h) {
  double denom = 1.0 - p;
  if (denom <= kDenomFloor) return 1.0;
  return f.cdf(h / denom);
}

double successor(const ThresholdDistribution& f, double p, double h,
                 bool monotone) {
  double next = cdf_term(f, p, h);
  return monotone ? std::max(p, next) : next;
}

double interp(const std::vector<double>& grid, const std::vector<double>& vals,
              double p) {
  if (p <= grid.front()) return vals.front();
  if (p >= grid.back()) return vals.back();
  auto it = std::upper_bound(grid.begin(), grid.end(), p);
  std::size_t j = static_cast<std::size_t>(it - grid.begin());
  double t = (p - grid[j - 1]) / (grid[j] - grid[j - 1]);
  return vals[j - 1] + t * (vals[j] - vals[j - 1]);
}

}  // namespace

void AttackerConfig::validate() const {
  if (!(cost_rate >= 0.0))
    throw std::invalid_argument("attacker: cost rate must be >= 0");
  if (!(discount >= 0.0 && discount < 1.0))
    throw std::invalid_argument("attacker: discount must lie in [0,1)");
  if (!(h_max > 0.0))
    throw std::invalid_argument("attacker: h_max must be > 0");
  if (p_grid < 2 || h_grid < 2)
    throw std::invalid_argument("attacker: grids need at least 2 points");
  if (!(tol > 0.0)) throw std::invalid_argument("attacker: tol must be > 0");
}

double ValueFunction::at(double p) const { return interp(grid, values, p); }

double PolicyTable::at(double p) const { return interp(grid, actions, p); }

double reward(const ThresholdDistribution& f, double departed,
              double harassment, double cost_rate) {
  return cdf_term(f, departed, harassment) - departed -
         cost_rate * harassment;
}

MdpSolution value_iteration(const ThresholdDistribution& f,
                            const AttackerConfig& config, unsigned threads) {
  config.validate();
  const std::size_t np = config.p_grid;
  const std::size_t nh = config.h_grid;
  const double delta = config.discount;

  MdpSolution sol;
  sol.value.grid.resize(np);
  for (std::size_t i = 0; i < np; ++i) {
    sol.value.grid[i] =
        static_cast<double>(i) / static_cast<double>(np - 1);
  }
  std::vector<double> actions(nh);
  for (std::size_t j = 0; j < nh; ++j) {
    actions[j] = config.h_max * static_cast<double>(j) /
                 static_cast<double>(nh - 1);
  }

  // The transition and stage payoff never change between sweeps; precompute
  // them along with the interpolation coordinates of each successor state.
  std::vector<double> stage(np * nh);
  std::vector<std::uint32_t> base(np * nh);
  std::vector<double> frac(np * nh);
  parallel_for(np, threads, [&](std::size_t i) {
    double p = sol.value.grid[i];
    for (std::size_t j = 0; j < nh; ++j) {
      double next = successor(f, p, actions[j], config.monotone_transition);
      std::size_t idx = i * nh + j;
      stage[idx] = next - p - config.cost_rate * actions[j];
      double pos = next * static_cast<double>(np - 1);
      auto b = static_cast<std::size_t>(pos);
      if (b > np - 2) b = np - 2;
      base[idx] = static_cast<std::uint32_t>(b);
      frac[idx] = pos - static_cast<double>(b);
    }
  });

  // Interpolated Bellman backups stay a delta-contraction in sup norm, since
  // linear interpolation is a convex combination of grid values.
  std::vector<double> v(np, 0.0);
  std::vector<double> v_next(np, 0.0);
  double stop = delta > 0.0 ? config.tol * (1.0 - delta) / (2.0 * delta)
                            : config.tol;
  for (std::size_t sweep = 0; sweep < config.max_sweeps; ++sweep) {
    parallel_for(np, threads, [&](std::size_t i) {
      double best = -std::numeric_limits<double>::infinity();
      const std::size_t row = i * nh;
      for (std::size_t j = 0; j < nh; ++j) {
        std::size_t idx = row + j;
        double cont = v[base[idx]] +
                      frac[idx] * (v[base[idx] + 1] - v[base[idx]]);
        double q = stage[idx] + delta * cont;
        if (q > best) best = q;
      }
      v_next[i] = best;
    });
    double residual = 0.0;
    for (std::size_t i = 0; i < np; ++i) {
      residual = std::max(residual, std::abs(v_next[i] - v[i]));
    }
    v.swap(v_next);
    sol.residuals.push_back(residual);
    ++sol.sweeps;
    if (residual < stop) {
      sol.converged = true;
      break;
    }
  }

  sol.value.values = v;
  sol.policy.grid = sol.value.grid;
  sol.policy.actions.resize(np);
  parallel_for(np, threads, [&](std::size_t i) {
    double best = -std::numeric_limits<double>::infinity();
    std::size_t best_j = 0;
    const std::size_t row = i * nh;
    for (std::size_t j = 0; j < nh; ++j) {
      std::size_t idx = row + j;
      double cont =
          v[base[idx]] + frac[idx] * (v[base[idx] + 1] - v[base[idx]]);
      double q = stage[idx] + delta * cont;
      if (q > best) {  // strict: ties keep the smaller (cheaper) action
        best = q;
        best_j = j;
      }
    }
    sol.policy.actions[i] = actions[best_j];
  });
  return sol;
}

double deterrence_cost(const ThresholdDistribution& f, double h_max,
                       std::size_t grid_points) {
  if (!f.has_density()) {
    throw std::invalid_argument("deterrence_cost: distribution has no density");
  }
  if (!(h_max > 0.0)) {
    throw std::invalid_argument("deterrence_cost: h_max must be > 0");
  }
  if (grid_points < 2) grid_points = 2;
  double best = 0.0;
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < grid_points; ++i) {
    double x = h_max * static_cast<double>(i) /
               static_cast<double>(grid_points - 1);
    double d = f.density(x);
    if (d > best) {
      best = d;
      best_i = i;
    }
  }
  double cell = h_max / static_cast<double>(grid_points - 1);
  double lo = std::max(0.0, cell * (static_cast<double>(best_i) - 1.0));
  double hi = std::min(h_max, cell * (static_cast<double>(best_i) + 1.0));
  double x_star =
      detail::golden_max([&](double x) { return f.density(x); }, lo, hi);
  return std::max(best, f.density(x_star));
}

double evaluate_policy(const ThresholdDistribution& f_true,
                       const PolicyTable& policy,
                       const AttackerConfig& config) {
  config.validate();
  const double bound = 2.0 + config.cost_rate * config.h_max;
  const double delta = config.discount;
  double p = 0.0;
  double disc = 1.0;
  double utility = 0.0;
  for (std::size_t t = 0; t < 10000000; ++t) {
    double h = std::clamp(policy.at(p), 0.0, config.h_max);
    double next = successor(f_true, p, h, config.monotone_transition);
    utility += disc * (next - p - config.cost_rate * h);
    p = next;
    disc *= delta;
    if (delta <= 0.0) break;
    if (disc * bound / (1.0 - delta) < config.tol) break;
  }
  return utility;
}

PerturbationFamily make_widen_family(const ThresholdDistribution& f) {
  if (f.kind() == DistKind::UniformInterval) {
    double a = f.uniform_lower();
    double b = f.uniform_upper();
    return [a, b](double eps) {
      if (!(eps >= 0.0 && eps < 1.0)) {
        throw std::invalid_argument("widen family: eps must lie in [0,1)");
      }
      if (eps == 0.0) return ThresholdDistribution::uniform(a, b);
      // sup-norm distance between U(a,b) and U(a,b') peaks at x = b with
      // value 1 - (b-a)/(b'-a); invert for the widened upper bound.
      return ThresholdDistribution::uniform(a, a + (b - a) / (1.0 - eps));
    };
  }
  if (f.kind() == DistKind::Exponential) {
    double rate = f.exponential_rate();
    ThresholdDistribution original = f;
    return [rate, original](double eps) {
      if (!(eps >= 0.0 && eps < 1.0)) {
        throw std::invalid_argument("widen family: eps must lie in [0,1)");
      }
      if (eps == 0.0) return ThresholdDistribution::exponential(rate);
      // Lower the rate until the CDF sup distance matches eps.
      double lo = 0.0, hi = 1.0 - 1e-12;  // rate shrink factor s, rate*(1-s)
      for (int i = 0; i < 80; ++i) {
        double mid = 0.5 * (lo + hi);
        double d = cdf_sup_distance(
            original, ThresholdDistribution::exponential(rate * (1.0 - mid)),
            8192);
        if (d < eps) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      return ThresholdDistribution::exponential(rate * (1.0 - 0.5 * (lo + hi)));
    };
  }
  throw std::invalid_argument(
      "widen family: only uniform and exponential supported");
}

std::vector<VoiPoint> voi_curve(const ThresholdDistribution& f_true,
                                const PerturbationFamily& perturb,
                                const std::vector<double>& eps_grid,
                                const AttackerConfig& config,
                                unsigned threads) {
  MdpSolution best = value_iteration(f_true, config, threads);
  double u_star = evaluate_policy(f_true, best.policy, config);
  std::vector<VoiPoint> curve;
  curve.reserve(eps_grid.size());
  for (double eps : eps_grid) {
    ThresholdDistribution estimate = perturb(eps);
    MdpSolution fitted = value_iteration(estimate, config, threads);
    double u_hat = evaluate_policy(f_true, fitted.policy, config);
    curve.push_back({eps, u_star - u_hat});
  }
  return curve;
}

}  // namespace reslab
