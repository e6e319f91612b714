#include "reslab/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace reslab {

namespace {

void require_p_norm(double p_norm) {
  if (!(p_norm >= 1.0)) {
    throw std::invalid_argument("transport: p_norm must be >= 1");
  }
}

// (1/n) sum_{j>=i} max(0, level - q_j)^p: cost of lifting the rank-i block
// to `level` (0-based rank index).
double block_cost(const std::vector<double>& q, std::size_t i, double level,
                  double p_norm) {
  double n = static_cast<double>(q.size());
  double sum = 0.0;
  for (std::size_t j = i; j < q.size(); ++j) {
    double gap = level - q[j];
    if (gap > 0.0) sum += std::pow(gap, p_norm);
  }
  return sum / n;
}

std::vector<double> lift_block(const std::vector<double>& q, std::size_t i,
                               double level) {
  std::vector<double> out = q;
  for (std::size_t j = i; j < out.size(); ++j) {
    out[j] = std::max(out[j], level);
  }
  return out;
}

}  // namespace

void QuantileVector::validate() const {
  if (atoms.empty()) throw std::invalid_argument("quantile vector is empty");
  double prev = 0.0;
  for (double a : atoms) {
    if (!(a >= prev)) {
      throw std::invalid_argument(
          "quantile vector must be sorted and nonnegative");
    }
    prev = a;
  }
}

QuantileVector discretize(const ThresholdDistribution& f, std::size_t n) {
  if (n == 0) throw std::invalid_argument("discretize: n must be >= 1");
  QuantileVector qv;
  qv.atoms.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    double u = (static_cast<double>(i) - 0.5) / static_cast<double>(n);
    qv.atoms.push_back(f.quantile(u));
  }
  return qv;
}

double discrete_resilience(const QuantileVector& qv) {
  qv.validate();
  double n = static_cast<double>(qv.size());
  double best = 0.0;
  for (std::size_t i = 0; i < qv.size(); ++i) {
    best = std::max(best, (1.0 - static_cast<double>(i) / n) * qv.atoms[i]);
  }
  return best;
}

double wasserstein(const QuantileVector& a, const QuantileVector& b,
                   double p_norm) {
  require_p_norm(p_norm);
  a.validate();
  b.validate();
  if (a.size() != b.size()) {
    throw std::invalid_argument("wasserstein: atom counts differ");
  }
  double n = static_cast<double>(a.size());
  if (p_norm == 1.0) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      sum += std::abs(a.atoms[i] - b.atoms[i]);
    }
    return sum / n;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += std::pow(std::abs(a.atoms[i] - b.atoms[i]), p_norm);
  }
  return std::pow(sum / n, 1.0 / p_norm);
}

double wasserstein_continuous(const ThresholdDistribution& f1,
                              const ThresholdDistribution& f2, double p_norm,
                              std::size_t quad_points) {
  require_p_norm(p_norm);
  if (quad_points == 0) {
    throw std::invalid_argument("wasserstein: quad_points must be >= 1");
  }
  double n = static_cast<double>(quad_points);
  double sum = 0.0;
  for (std::size_t i = 1; i <= quad_points; ++i) {
    double u = (static_cast<double>(i) - 0.5) / n;
    double gap = std::abs(f1.quantile(u) - f2.quantile(u));
    sum += p_norm == 1.0 ? gap : std::pow(gap, p_norm);
  }
  double mean = sum / n;
  return p_norm == 1.0 ? mean : std::pow(mean, 1.0 / p_norm);
}

InterventionPlan min_cost_to_reach(const QuantileVector& qv, double r_target,
                                   double p_norm) {
  require_p_norm(p_norm);
  qv.validate();
  if (!(r_target > 0.0)) {
    throw std::invalid_argument("min_cost_to_reach: target must be > 0");
  }
  const auto& q = qv.atoms;
  double n = static_cast<double>(q.size());
  double best_cost = std::numeric_limits<double>::infinity();
  std::size_t best_i = 0;
  double best_level = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    double weight = 1.0 - static_cast<double>(i) / n;  // > 0 for every rank
    double level = r_target / weight;
    double cost = block_cost(q, i, level, p_norm);
    if (cost < best_cost) {
      best_cost = cost;
      best_i = i;
      best_level = level;
    }
  }
  InterventionPlan plan;
  plan.original = qv;
  plan.modified.atoms = lift_block(q, best_i, best_level);
  plan.cost = std::pow(best_cost, 1.0 / p_norm);
  plan.achieved_resilience = discrete_resilience(plan.modified);
  plan.target_rank = best_i + 1;
  plan.p_norm = p_norm;
  return plan;
}

InterventionPlan max_resilience_under_budget(const QuantileVector& qv,
                                             double budget, double p_norm) {
  require_p_norm(p_norm);
  qv.validate();
  if (!(budget >= 0.0)) {
    throw std::invalid_argument("max_resilience_under_budget: budget < 0");
  }
  const auto& q = qv.atoms;
  double n = static_cast<double>(q.size());
  double budget_p = std::pow(budget, p_norm);
  double best_value = -1.0;
  std::size_t best_i = 0;
  double best_level = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    double weight = 1.0 - static_cast<double>(i) / n;
    // Largest affordable block level for this rank; cost is continuous and
    // increasing in the level beyond q_i.
    double lo = q[i];
    double hi = q.back() + std::pow(n * budget_p, 1.0 / p_norm) + 1.0;
    for (int it = 0; it < 200 && (hi - lo) > 1e-10 * std::max(1.0, hi); ++it) {
      double mid = 0.5 * (lo + hi);
      if (block_cost(q, i, mid, p_norm) <= budget_p) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    double value = weight * lo;
    if (value > best_value) {
      best_value = value;
      best_i = i;
      best_level = lo;
    }
  }
  InterventionPlan plan;
  plan.original = qv;
  plan.modified.atoms = lift_block(q, best_i, best_level);
  plan.cost = std::pow(block_cost(q, best_i, best_level, p_norm), 1.0 / p_norm);
  plan.achieved_resilience = discrete_resilience(plan.modified);
  plan.target_rank = best_i + 1;
  plan.p_norm = p_norm;
  return plan;
}

}  // namespace reslab
