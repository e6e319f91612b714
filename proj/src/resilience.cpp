#include "reslab/resilience.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "reslab/attrition.hpp"
#include "reslab/parallel.hpp"
#include "scalar_opt.hpp"

namespace reslab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// (1 - alpha p) Q(p) - lambda alpha p; alpha = 1, lambda = 0 is the baseline
// (1 - p) Q(p).
double objective(const ThresholdDistribution& f, double p, double alpha,
                 double lambda) {
  return (1.0 - alpha * p) * f.quantile(p) - lambda * alpha * p;
}

// Q is a step function for atoms: on block ((i-1)/n, i/n] the objective is
// decreasing in p, so the sup sits at the open left edge of each block.
ResilienceReport atoms_report(const ThresholdDistribution& f, double alpha,
                              double lambda, double endpoint_guard) {
  const auto& q = f.atoms();
  double n = static_cast<double>(q.size());
  double best = -kInf;
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    double edge = static_cast<double>(i) / n;
    double v = (1.0 - alpha * edge) * q[i] - lambda * alpha * edge;
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  ResilienceReport report;
  report.value = std::max(0.0, best);
  report.maximizer_p =
      std::max(endpoint_guard, static_cast<double>(best_i) / n);
  return report;
}

ResilienceReport sup_report(const ThresholdDistribution& f, double alpha,
                            double lambda, const ResilienceOptions& options) {
  ResilienceReport report;
  // Unbounded quantiles make (1 - alpha p) Q(p) diverge at p -> 1 whenever
  // alpha < 1; the grid cannot see that, so flag it directly.
  if (!f.support_bounded() && alpha < 1.0) {
    report.value = kInf;
    report.maximizer_p = 1.0 - options.endpoint_guard;
    return report;
  }
  if (f.kind() == DistKind::EmpiricalAtoms) {
    return atoms_report(f, alpha, lambda, options.endpoint_guard);
  }

  auto h = [&](double p) { return objective(f, p, alpha, lambda); };
  std::size_t n = std::max<std::size_t>(options.grid_points, 3);
  double lo = options.endpoint_guard;
  double hi = 1.0 - options.endpoint_guard;
  double best = -kInf;
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double p = lo + (hi - lo) * static_cast<double>(i) /
                        static_cast<double>(n - 1);
    double v = h(p);
    if (v >= options.divergence_guard) {
      report.value = kInf;
      report.maximizer_p = p;
      return report;
    }
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  double cell = (hi - lo) / static_cast<double>(n - 1);
  double a = std::max(lo, lo + cell * (static_cast<double>(best_i) - 1.0));
  double b = std::min(hi, lo + cell * (static_cast<double>(best_i) + 1.0));
  double p_star = detail::golden_max(h, a, b);
  double v_star = h(p_star);
  if (v_star < best) {
    p_star = lo + cell * static_cast<double>(best_i);
    v_star = best;
  }
  if (v_star >= options.divergence_guard) {
    report.value = kInf;
    report.maximizer_p = p_star;
    return report;
  }
  report.value = std::max(0.0, v_star);
  report.maximizer_p = p_star;
  return report;
}

}  // namespace

bool ResilienceReport::infinite() const { return std::isinf(value); }

ResilienceReport resilience(const ThresholdDistribution& f,
                            const ResilienceOptions& options) {
  return sup_report(f, 1.0, 0.0, options);
}

ResilienceReport resilience_combined(const ThresholdDistribution& f,
                                     double alpha, double lambda,
                                     const ResilienceOptions& options) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("resilience: alpha must lie in [0,1]");
  }
  if (!(lambda >= 0.0)) {
    throw std::invalid_argument("resilience: lambda must be >= 0");
  }
  return sup_report(f, alpha, lambda, options);
}

double closed_form_resilience(const ThresholdDistribution& f, double alpha,
                              double lambda) {
  if (f.kind() == DistKind::UniformInterval) {
    double a = f.uniform_lower();
    double b = f.uniform_upper();
    if (b < 2.0 * a) {
      // The vertex formula b^2/(4(b-a)) assumes the maximizer is interior,
      // which fails here; the numeric sup is the ground truth in that regime.
      throw std::domain_error(
          "closed_form_resilience: uniform requires upper >= 2*lower");
    }
    if (alpha == 0.0) return b;
    double width = b - a;
    double slope = width - alpha * (a + lambda);  // h'(0) scaled
    double curv = alpha * width;
    double p_star = slope / (2.0 * curv);
    if (p_star >= 1.0) return (1.0 - alpha) * b - lambda * alpha;
    if (p_star <= 0.0) return a;
    return a + slope * slope / (4.0 * curv);
  }
  if (f.kind() == DistKind::Exponential) {
    double rate = f.exponential_rate();
    if (alpha < 1.0) return kInf;  // unbounded quantiles win whenever alpha < 1
    if (lambda * rate >= 1.0) return 0.0;
    return std::exp(lambda * rate - 1.0) / rate - lambda;
  }
  throw std::invalid_argument(
      "closed_form_resilience: only uniform and exponential supported");
}

double auc_resilience(const ThresholdDistribution& f, double h_min,
                      double h_max, std::size_t grid_points, double alpha,
                      double lambda, unsigned threads) {
  if (!(h_min >= 0.0) || !(h_max > h_min)) {
    throw std::invalid_argument("auc: requires 0 <= h_min < h_max");
  }
  if (grid_points < 2) throw std::invalid_argument("auc: grid must be >= 2");
  std::vector<double> values(grid_points);
  double span = h_max - h_min;
  parallel_for(grid_points, threads, [&](std::size_t i) {
    DynamicsParams params;
    params.harassment = h_min + span * static_cast<double>(i) /
                                    static_cast<double>(grid_points - 1);
    params.alpha = alpha;
    params.lambda = lambda;
    values[i] = limit_fraction(f, params);
  });
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < grid_points; ++i) {
    sum += 0.5 * (values[i] + values[i + 1]);
  }
  return sum * span / static_cast<double>(grid_points - 1);
}

double critical_fraction(const ThresholdDistribution& f, double alpha,
                         double lambda) {
  ResilienceReport report = resilience_combined(f, alpha, lambda);
  if (report.infinite()) {
    throw std::domain_error("critical_fraction: resilience is infinite");
  }
  DynamicsParams params;
  params.harassment = std::max(0.0, report.value - 1e-9);
  params.alpha = alpha;
  params.lambda = lambda;
  return limit_fraction(f, params);
}

DominanceVerdict check_dominance_ordering(const ThresholdDistribution& a,
                                          const ThresholdDistribution& b,
                                          double slack) {
  DominanceVerdict verdict;
  verdict.dominance = dominates_first_order(a, b);
  verdict.resilience_dominant = resilience(a).value;
  verdict.resilience_dominated = resilience(b).value;
  verdict.ordering_holds =
      verdict.dominance &&
      verdict.resilience_dominant >= verdict.resilience_dominated - slack;
  return verdict;
}

}  // namespace reslab
