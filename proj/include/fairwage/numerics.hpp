#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fairwage::numerics {

/// A real number in [0, 1].
class Probability {
 public:
  /// Throws DomainError outside [0, 1] or for NaN.
  explicit Probability(double value);

  double value() const noexcept { return value_; }
  Probability complement() const noexcept { return Probability(1.0 - value_, Unchecked{}); }

  friend bool operator==(Probability, Probability) = default;

 private:
  struct Unchecked {};
  Probability(double value, Unchecked) noexcept : value_(value) {}
  double value_;
};

/// Uniform grid on [lo, hi] with an odd number of points (at least 3).
class Grid {
 public:
  /// Throws ContractError when lo >= hi, bounds are not finite, or n_points
  /// is even or below 3.
  Grid(double lo, double hi, std::size_t n_points);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  std::size_t size() const noexcept { return n_; }
  double step() const noexcept { return (hi_ - lo_) / static_cast<double>(n_ - 1); }

  /// The i-th abscissa; the last point is exactly `hi`.
  double point(std::size_t i) const noexcept;
  std::vector<double> points() const;

  /// Trapezoid weights, so that sum(w[i] * f[i]) is the composite estimate.
  std::vector<double> trapezoid_weights() const;

 private:
  double lo_;
  double hi_;
  std::size_t n_;
};

/// Error function. Series expansion below |x| = 2.5, Lentz continued
/// fraction for the complement above. Throws DomainError for non-finite x.
double erf(double x);

/// Complementary error function, accurate in relative terms for large x.
double erfc(double x);

double std_normal_pdf(double z);

/// Phi(z). Throws DomainError for non-finite z.
Probability std_normal_cdf(double z);

/// 1 - Phi(z) without cancellation for large positive z.
double std_normal_upper_tail(double z);

/// Inverse of Phi. Requires 0 < p < 1 (DomainError otherwise).
///
/// A rational seed (Acklam's approximation, ~1e-9 relative) is polished by
/// Halley steps against the complementary error function. The branch for
/// p > 1/2 works on 1 - p, so quantile(1 - p) == -quantile(p) whenever
/// 1 - p is exact.
double std_normal_quantile(Probability p);

/// Composite trapezoid rule for samples of f on `grid`.
/// Throws ContractError on a length mismatch.
double trapezoid_integrate(std::span<const double> values, const Grid& grid);

}  // namespace fairwage::numerics
