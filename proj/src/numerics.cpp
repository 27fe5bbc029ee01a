#include "fairwage/numerics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fairwage/error.hpp"

namespace fairwage::numerics {

namespace {

constexpr double kSeriesCutoff = 2.5;
constexpr double kTwoOverSqrtPi = 2.0 * std::numbers::inv_sqrtpi;

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw DomainError(std::string(what) + ": argument must be finite");
  }
}

// erf(x) = 2/sqrt(pi) * x * exp(-x^2) * sum_n (2x^2)^n / (1*3*...*(2n+1)).
// Every term is positive, so there is no cancellation for moderate x.
double erf_series(double x) {
  const double two_x2 = 2.0 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int n = 1; n < 500; ++n) {
    term *= two_x2 / (2.0 * n + 1.0);
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return kTwoOverSqrtPi * x * std::exp(-x * x) * sum;
}

// erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
// evaluated with the modified Lentz method; valid for x > 0.
double erfc_continued_fraction(double x) {
  constexpr double tiny = 1e-300;
  double f = x;
  double c = x;
  double d = 0.0;
  for (int k = 1; k < 5000; ++k) {
    const double a = 0.5 * k;
    d = x + a * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = x + a / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x * x) * std::numbers::inv_sqrtpi / f;
}

// Acklam's rational approximation, lower half only (p <= 0.5).
double quantile_seed(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

// Solves Phi(x) = p for 0 < p <= 0.5.
double lower_quantile(double p) {
  double x = quantile_seed(p);
  for (int it = 0; it < 4; ++it) {
    const double e = 0.5 * erfc(-x * std::numbers::sqrt2 / 2.0) - p;
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    const double step = u / (1.0 + 0.5 * x * u);
    x -= step;
    if (std::fabs(step) <= 1e-16 * std::fabs(x)) break;
  }
  return x;
}

}  // namespace

Probability::Probability(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw DomainError("probability must lie in [0, 1], got " + std::to_string(value));
  }
}

Grid::Grid(double lo, double hi, std::size_t n_points) : lo_(lo), hi_(hi), n_(n_points) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw ContractError("grid requires finite lo < hi");
  }
  if (n_points < 3 || n_points % 2 == 0) {
    throw ContractError("grid requires an odd number of points >= 3, got " +
                        std::to_string(n_points));
  }
}

double Grid::point(std::size_t i) const noexcept {
  if (i + 1 == n_) return hi_;
  return lo_ + static_cast<double>(i) * step();
}

std::vector<double> Grid::points() const {
  std::vector<double> xs(n_);
  for (std::size_t i = 0; i < n_; ++i) xs[i] = point(i);
  return xs;
}

std::vector<double> Grid::trapezoid_weights() const {
  std::vector<double> w(n_, step());
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

double erf(double x) {
  require_finite(x, "erf");
  const double ax = std::fabs(x);
  if (ax < kSeriesCutoff) return erf_series(x);
  const double r = 1.0 - erfc_continued_fraction(ax);
  return x < 0 ? -r : r;
}

double erfc(double x) {
  require_finite(x, "erfc");
  if (x < 0) return 2.0 - erfc(-x);
  if (x < kSeriesCutoff) return 1.0 - erf_series(x);
  return erfc_continued_fraction(x);
}

double std_normal_pdf(double z) {
  return std::exp(-0.5 * z * z) * std::numbers::inv_sqrtpi / std::numbers::sqrt2;
}

Probability std_normal_cdf(double z) {
  require_finite(z, "std_normal_cdf");
  return Probability(0.5 * erfc(-z / std::numbers::sqrt2));
}

double std_normal_upper_tail(double z) {
  require_finite(z, "std_normal_upper_tail");
  return 0.5 * erfc(z / std::numbers::sqrt2);
}

double std_normal_quantile(Probability p) {
  const double v = p.value();
  if (!(v > 0.0 && v < 1.0)) {
    throw DomainError("std_normal_quantile requires 0 < p < 1, got " + std::to_string(v));
  }
  if (v == 0.5) return 0.0;
  if (v < 0.5) return lower_quantile(v);
  return -lower_quantile(1.0 - v);
}

double trapezoid_integrate(std::span<const double> values, const Grid& grid) {
  if (values.size() != grid.size()) {
    throw ContractError("trapezoid_integrate: " + std::to_string(values.size()) +
                        " samples for a grid of " + std::to_string(grid.size()));
  }
  // Neumaier summation keeps the rounding error independent of grid size.
  double sum = 0.0;
  double carry = 0.0;
  const auto add = [&](double v) {
    const double t = sum + v;
    carry += std::fabs(sum) >= std::fabs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  };
  add(0.5 * values.front());
  for (std::size_t i = 1; i + 1 < values.size(); ++i) add(values[i]);
  add(0.5 * values.back());
  return (sum + carry) * grid.step();
}

}  // namespace fairwage::numerics
