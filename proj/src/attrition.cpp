#include "reslab/attrition.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "reslab/parallel.hpp"
#include "scalar_opt.hpp"

namespace reslab {

namespace {

constexpr double kDenomFloor = 4.0 * std::numeric_limits<double>::epsilon();

using detail::bisect_root;
using detail::golden_max;

}  // namespace

double DynamicsParams::level_at(std::size_t t) const {
  if (schedule.empty()) return harassment;
  return t < schedule.size() ? schedule[t] : schedule.back();
}

void DynamicsParams::validate() const {
  if (!(harassment >= 0.0))
    throw std::invalid_argument("dynamics: harassment must be >= 0");
  for (double h : schedule) {
    if (!(h >= 0.0))
      throw std::invalid_argument("dynamics: schedule levels must be >= 0");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("dynamics: alpha must lie in [0,1]");
  if (!(lambda >= 0.0))
    throw std::invalid_argument("dynamics: lambda must be >= 0");
  if (!(tol > 0.0)) throw std::invalid_argument("dynamics: tol must be > 0");
  if (max_iter < 1)
    throw std::invalid_argument("dynamics: max_iter must be >= 1");
}

AgentAction agent_action(double theta, double harassment, double departed) {
  if (!(departed >= 0.0) || departed >= 1.0) {
    throw std::domain_error("agent_action: departed fraction must be in [0,1)");
  }
  double experienced = harassment / (1.0 - departed);
  return theta <= experienced ? AgentAction::Leave : AgentAction::Stay;
}

double step(const ThresholdDistribution& f, double departed, double harassment,
            double alpha, double lambda) {
  double denom = 1.0 - alpha * departed;
  if (denom <= kDenomFloor) return 1.0;
  return f.cdf((harassment + lambda * alpha * departed) / denom);
}

double step(const ThresholdDistribution& f, double departed,
            const DynamicsParams& params) {
  return step(f, departed, params.harassment, params.alpha, params.lambda);
}

Trajectory simulate(const ThresholdDistribution& f,
                    const DynamicsParams& params) {
  params.validate();
  Trajectory traj;
  traj.points.push_back(0.0);
  double p = 0.0;
  for (std::size_t t = 0; t < params.max_iter; ++t) {
    double next = step(f, p, params.level_at(t), params.alpha, params.lambda);
    traj.points.push_back(next);
    ++traj.iterations;
    if (std::abs(next - p) < params.tol) {
      traj.converged = true;
      traj.limit = next;
      return traj;
    }
    p = next;
  }
  traj.limit = p;
  return traj;
}

namespace {

// g(x) = x - F(arg(x)); p_inf is its smallest root in [0,1), or 1 when none
// exists. The combined-map argument is shared with step().
double fixed_point_gap(const ThresholdDistribution& f, double x, double h,
                       double alpha, double lambda) {
  return x - step(f, x, h, alpha, lambda);
}

}  // namespace

double limit_fraction(const ThresholdDistribution& f,
                      const DynamicsParams& params) {
  params.validate();
  bool baseline = params.alpha == 1.0 && params.lambda == 0.0 &&
                  !params.time_varying();
  if (!baseline) return simulate(f, params).limit;

  double h = params.harassment;
  if (f.cdf(h) == 0.0) return 0.0;
  auto g = [&](double x) { return fixed_point_gap(f, x, h, 1.0, 0.0); };

  // Uniform scan of [0,1) plus a geometric tail toward 1 so roots crowding
  // the right endpoint still get bracketed. g(0) = -F(H) < 0 here.
  constexpr std::size_t kScan = 4096;
  std::vector<double> scan;
  scan.reserve(kScan + 40);
  scan.push_back(0.0);
  for (std::size_t i = 1; i <= kScan; ++i) {
    scan.push_back(static_cast<double>(i) / static_cast<double>(kScan + 1));
  }
  for (int k = 13; k <= 45; ++k) scan.push_back(1.0 - std::ldexp(1.0, -k));

  std::vector<double> values(scan.size());
  for (std::size_t i = 0; i < scan.size(); ++i) {
    values[i] = g(scan[i]);
    if (values[i] >= 0.0) {
      return bisect_root(g, scan[i - 1], scan[i], params.tol);
    }
  }
  // No sign change on the scan: the limit is 1 unless a tangency (double
  // root) hides between scan points. Tangencies sit at interior local maxima
  // of g; the monotone climb of g back to zero at x = 1 (always a fixed
  // point) must not be mistaken for one, so the last scan point never counts.
  for (std::size_t i = 1; i + 1 < scan.size(); ++i) {
    if (values[i] < values[i - 1] || values[i] < values[i + 1]) continue;
    double x_star = golden_max(g, scan[i - 1], scan[i + 1]);
    double g_star = g(x_star);
    if (g_star >= 0.0) {
      return bisect_root(g, scan[i - 1], x_star, params.tol);
    }
    if (g_star >= -1e-12) {
      return x_star;  // tangency: the smallest root within tolerance
    }
  }
  return 1.0;
}

std::vector<std::pair<double, double>> sweep_pinf(
    const ThresholdDistribution& f, const std::vector<double>& h_grid,
    double alpha, double lambda, unsigned threads) {
  std::vector<std::pair<double, double>> curve(h_grid.size());
  parallel_for(h_grid.size(), threads, [&](std::size_t i) {
    DynamicsParams params;
    params.harassment = h_grid[i];
    params.alpha = alpha;
    params.lambda = lambda;
    curve[i] = {h_grid[i], limit_fraction(f, params)};
  });
  return curve;
}

}  // namespace reslab
