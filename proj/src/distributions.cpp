#include "reslab/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace reslab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Top 53 bits of a 64-bit draw, offset half a step: lands strictly in (0,1).
double unit_open(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

ThresholdDistribution ThresholdDistribution::uniform(double lower,
                                                     double upper) {
  if (!(lower >= 0.0) || !(upper > lower) || !std::isfinite(upper)) {
    throw std::invalid_argument(
        "uniform: requires 0 <= lower < upper, both finite");
  }
  ThresholdDistribution d;
  d.kind_ = DistKind::UniformInterval;
  d.lower_ = lower;
  d.upper_ = upper;
  return d;
}

ThresholdDistribution ThresholdDistribution::exponential(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw std::invalid_argument("exponential: requires rate > 0");
  }
  ThresholdDistribution d;
  d.kind_ = DistKind::Exponential;
  d.rate_ = rate;
  return d;
}

ThresholdDistribution ThresholdDistribution::empirical(
    std::vector<double> atoms) {
  if (atoms.empty()) throw std::invalid_argument("empirical: needs atoms");
  std::sort(atoms.begin(), atoms.end());
  if (!(atoms.front() > 0.0) || !std::isfinite(atoms.back())) {
    throw std::invalid_argument(
        "empirical: atoms must be strictly positive and finite");
  }
  ThresholdDistribution d;
  d.kind_ = DistKind::EmpiricalAtoms;
  d.atoms_ = std::move(atoms);
  return d;
}

ThresholdDistribution ThresholdDistribution::piecewise_linear(
    std::vector<double> x, std::vector<double> cdf) {
  if (x.size() != cdf.size() || x.size() < 2) {
    throw std::invalid_argument("piecewise: needs matching knot lists, >= 2");
  }
  if (!(x.front() >= 0.0)) {
    throw std::invalid_argument("piecewise: knots must be nonnegative");
  }
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (!(x[i] > x[i - 1])) {
      throw std::invalid_argument("piecewise: x knots must strictly increase");
    }
    if (cdf[i] < cdf[i - 1]) {
      throw std::invalid_argument("piecewise: cdf knots must not decrease");
    }
  }
  // The CDF must be continuous: jumps at x_0 would break the targeting
  // recursion and put mass at the support edge.
  if (cdf.front() != 0.0) {
    throw std::invalid_argument("piecewise: cdf must start at 0");
  }
  if (std::abs(cdf.back() - 1.0) > 1e-12) {
    throw std::invalid_argument("piecewise: cdf must end at 1");
  }
  cdf.back() = 1.0;
  ThresholdDistribution d;
  d.kind_ = DistKind::PiecewiseLinearCdf;
  d.knot_x_ = std::move(x);
  d.knot_f_ = std::move(cdf);
  return d;
}

double ThresholdDistribution::cdf(double x) const {
  switch (kind_) {
    case DistKind::UniformInterval:
      if (x <= lower_) return 0.0;
      if (x >= upper_) return 1.0;
      return (x - lower_) / (upper_ - lower_);
    case DistKind::Exponential:
      if (x <= 0.0) return 0.0;
      return -std::expm1(-rate_ * x);
    case DistKind::EmpiricalAtoms: {
      auto it = std::upper_bound(atoms_.begin(), atoms_.end(), x);
      return static_cast<double>(it - atoms_.begin()) /
             static_cast<double>(atoms_.size());
    }
    case DistKind::PiecewiseLinearCdf: {
      if (x < knot_x_.front()) return 0.0;
      if (x >= knot_x_.back()) return 1.0;
      auto it = std::upper_bound(knot_x_.begin(), knot_x_.end(), x);
      std::size_t i = static_cast<std::size_t>(it - knot_x_.begin()) - 1;
      double span = knot_x_[i + 1] - knot_x_[i];
      double t = (x - knot_x_[i]) / span;
      return knot_f_[i] + t * (knot_f_[i + 1] - knot_f_[i]);
    }
  }
  return 0.0;
}

double ThresholdDistribution::quantile(double p) const {
  if (!(p > 0.0) || !(p < 1.0)) {
    throw std::domain_error("quantile: p must lie in (0,1)");
  }
  switch (kind_) {
    case DistKind::UniformInterval:
      return lower_ + p * (upper_ - lower_);
    case DistKind::Exponential:
      return -std::log1p(-p) / rate_;
    case DistKind::EmpiricalAtoms: {
      double n = static_cast<double>(atoms_.size());
      auto rank = static_cast<std::size_t>(std::ceil(p * n));
      rank = std::clamp<std::size_t>(rank, 1, atoms_.size());
      return atoms_[rank - 1];
    }
    case DistKind::PiecewiseLinearCdf: {
      auto it = std::lower_bound(knot_f_.begin(), knot_f_.end(), p);
      std::size_t j = static_cast<std::size_t>(it - knot_f_.begin());
      if (j == 0) return knot_x_.front();
      // First crossing within segment (j-1, j); the segment cannot be flat
      // because F_{j-1} < p <= F_j.
      double df = knot_f_[j] - knot_f_[j - 1];
      double t = (p - knot_f_[j - 1]) / df;
      return knot_x_[j - 1] + t * (knot_x_[j] - knot_x_[j - 1]);
    }
  }
  return 0.0;
}

double ThresholdDistribution::density(double x) const {
  switch (kind_) {
    case DistKind::UniformInterval:
      if (x < lower_ || x > upper_) return 0.0;
      return 1.0 / (upper_ - lower_);
    case DistKind::Exponential:
      if (x < 0.0) return 0.0;
      return rate_ * std::exp(-rate_ * x);
    case DistKind::EmpiricalAtoms:
      throw std::invalid_argument("density: empirical atoms have no density");
    case DistKind::PiecewiseLinearCdf: {
      if (x < knot_x_.front() || x >= knot_x_.back()) return 0.0;
      auto it = std::upper_bound(knot_x_.begin(), knot_x_.end(), x);
      std::size_t i = static_cast<std::size_t>(it - knot_x_.begin());
      if (i == 0) return 0.0;
      --i;
      return (knot_f_[i + 1] - knot_f_[i]) / (knot_x_[i + 1] - knot_x_[i]);
    }
  }
  return 0.0;
}

double ThresholdDistribution::support_lower() const {
  switch (kind_) {
    case DistKind::UniformInterval:
      return lower_;
    case DistKind::Exponential:
      return 0.0;
    case DistKind::EmpiricalAtoms:
      return atoms_.front();
    case DistKind::PiecewiseLinearCdf:
      return knot_x_.front();
  }
  return 0.0;
}

double ThresholdDistribution::support_upper() const {
  switch (kind_) {
    case DistKind::UniformInterval:
      return upper_;
    case DistKind::Exponential:
      return kInf;
    case DistKind::EmpiricalAtoms:
      return atoms_.back();
    case DistKind::PiecewiseLinearCdf:
      return knot_x_.back();
  }
  return 0.0;
}

bool ThresholdDistribution::support_bounded() const {
  return std::isfinite(support_upper());
}

std::vector<double> ThresholdDistribution::sample(std::size_t n,
                                                  std::uint64_t seed) const {
  if (n == 0) throw std::invalid_argument("sample: n must be >= 1");
  std::mt19937_64 gen(seed);
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(quantile(unit_open(gen())));
  return out;
}

double ThresholdDistribution::uniform_lower() const {
  if (kind_ != DistKind::UniformInterval)
    throw std::logic_error("not a uniform distribution");
  return lower_;
}

double ThresholdDistribution::uniform_upper() const {
  if (kind_ != DistKind::UniformInterval)
    throw std::logic_error("not a uniform distribution");
  return upper_;
}

double ThresholdDistribution::exponential_rate() const {
  if (kind_ != DistKind::Exponential)
    throw std::logic_error("not an exponential distribution");
  return rate_;
}

const std::vector<double>& ThresholdDistribution::atoms() const {
  if (kind_ != DistKind::EmpiricalAtoms)
    throw std::logic_error("not an empirical distribution");
  return atoms_;
}

const std::vector<double>& ThresholdDistribution::knot_x() const {
  if (kind_ != DistKind::PiecewiseLinearCdf)
    throw std::logic_error("not a piecewise distribution");
  return knot_x_;
}

const std::vector<double>& ThresholdDistribution::knot_cdf() const {
  if (kind_ != DistKind::PiecewiseLinearCdf)
    throw std::logic_error("not a piecewise distribution");
  return knot_f_;
}

namespace {

double effective_upper(const ThresholdDistribution& d) {
  return d.support_bounded() ? d.support_upper() : d.quantile(1.0 - 1e-12);
}

}  // namespace

bool dominates_first_order(const ThresholdDistribution& a,
                           const ThresholdDistribution& b,
                           std::size_t grid_points) {
  if (grid_points < 2) throw std::invalid_argument("grid_points must be >= 2");
  double lo = std::min(a.support_lower(), b.support_lower());
  double hi = std::max(effective_upper(a), effective_upper(b));
  bool strict = false;
  for (std::size_t i = 0; i < grid_points; ++i) {
    double x = lo + (hi - lo) * static_cast<double>(i) /
                        static_cast<double>(grid_points - 1);
    double fa = a.cdf(x);
    double fb = b.cdf(x);
    if (fa > fb) return false;
    if (fa < fb) strict = true;
  }
  return strict;
}

double cdf_sup_distance(const ThresholdDistribution& a,
                        const ThresholdDistribution& b,
                        std::size_t grid_points) {
  if (grid_points < 2) throw std::invalid_argument("grid_points must be >= 2");
  double lo = std::min(a.support_lower(), b.support_lower());
  double hi = std::max(effective_upper(a), effective_upper(b));
  double best = 0.0;
  for (std::size_t i = 0; i < grid_points; ++i) {
    double x = lo + (hi - lo) * static_cast<double>(i) /
                        static_cast<double>(grid_points - 1);
    best = std::max(best, std::abs(a.cdf(x) - b.cdf(x)));
  }
  return best;
}

}  // namespace reslab
