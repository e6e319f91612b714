#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace reslab {

enum class DistKind {
  UniformInterval,
  Exponential,
  EmpiricalAtoms,
  PiecewiseLinearCdf,
};

// A harassment-tolerance distribution on the nonnegative reals, exposing a
// right-continuous CDF, the generalized quantile Q(p) = inf{x : F(x) >= p},
// a density where one exists, and the support bounds. Values are immutable
// after construction and safe to share across threads.
class ThresholdDistribution {
 public:
  // Requires 0 <= lower < upper.
  static ThresholdDistribution uniform(double lower, double upper);
  // Requires rate > 0.
  static ThresholdDistribution exponential(double rate);
  // Atoms must be strictly positive; they are sorted on construction and
  // each carries mass 1/n.
  static ThresholdDistribution empirical(std::vector<double> atoms);
  // Knots (x_i, F_i): x strictly increasing and nonnegative, F nondecreasing
  // from exactly 0 to exactly 1. Starting at 0 keeps the CDF continuous.
  static ThresholdDistribution piecewise_linear(std::vector<double> x,
                                                std::vector<double> cdf);

  DistKind kind() const { return kind_; }

  double cdf(double x) const;
  // Generalized inverse; throws std::domain_error unless 0 < p < 1.
  double quantile(double p) const;
  // Throws std::invalid_argument for EmpiricalAtoms.
  double density(double x) const;
  bool has_density() const { return kind_ != DistKind::EmpiricalAtoms; }

  double support_lower() const;
  double support_upper() const;  // +infinity for Exponential
  bool support_bounded() const;

  // Inverse-transform sampling. The stream is mt19937_64 seeded as given,
  // each draw mapped to (0,1) through the top 53 bits, so output is
  // bit-reproducible across platforms. Requires n >= 1.
  std::vector<double> sample(std::size_t n, std::uint64_t seed) const;

  // Parameter accessors; each throws unless the kind matches.
  double uniform_lower() const;
  double uniform_upper() const;
  double exponential_rate() const;
  const std::vector<double>& atoms() const;
  const std::vector<double>& knot_x() const;
  const std::vector<double>& knot_cdf() const;

 private:
  ThresholdDistribution() = default;

  DistKind kind_ = DistKind::UniformInterval;
  double lower_ = 0.0;   // uniform
  double upper_ = 1.0;   // uniform
  double rate_ = 1.0;    // exponential
  std::vector<double> atoms_;    // empirical (sorted)
  std::vector<double> knot_x_;   // piecewise
  std::vector<double> knot_f_;   // piecewise
};

// True iff F_a(x) <= F_b(x) at every point of a grid spanning both supports,
// with strict inequality somewhere: "a first-order dominates b". Requires
// grid_points >= 2.
bool dominates_first_order(const ThresholdDistribution& a,
                           const ThresholdDistribution& b,
                           std::size_t grid_points = 1024);

// sup_x |F_a(x) - F_b(x)| approximated on a grid spanning both supports.
double cdf_sup_distance(const ThresholdDistribution& a,
                        const ThresholdDistribution& b,
                        std::size_t grid_points = 4096);

}  // namespace reslab
