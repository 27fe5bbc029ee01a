#include "fairwage/distributions.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fairwage/error.hpp"

namespace fairwage::distributions {

LognormalParams::LognormalParams(double mu, double sigma) : mu_(mu), sigma_(sigma) {
  if (!std::isfinite(mu) || !std::isfinite(sigma) || !(sigma > 0.0)) {
    throw DomainError("lognormal parameters require finite mu and sigma > 0 (got mu=" +
                      std::to_string(mu) + ", sigma=" + std::to_string(sigma) + ")");
  }
}

ValueScore value_of_salary(double salary) {
  if (!std::isfinite(salary) || !(salary > 0.0)) {
    throw DomainError("salary must be positive and finite");
  }
  return ValueScore{std::log(salary)};
}

double lognormal_pdf(double s, const LognormalParams& params) {
  if (!std::isfinite(s) || !(s > 0.0)) {
    throw DomainError("lognormal_pdf requires s > 0");
  }
  const double z = (std::log(s) - params.mu()) / params.sigma();
  return std::exp(-0.5 * z * z) /
         (s * params.sigma() * std::sqrt(2.0 * std::numbers::pi));
}

double lognormal_mean(const LognormalParams& params) {
  const double s = params.sigma();
  return std::exp(params.mu() + 0.5 * s * s);
}

double lognormal_variance(const LognormalParams& params) {
  const double s2 = params.sigma() * params.sigma();
  return std::expm1(s2) * std::exp(2.0 * params.mu() + s2);
}

double lognormal_entropy(const LognormalParams& params) {
  const double s = params.sigma();
  return params.mu() + 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e * s * s);
}

NormalParams log_domain_params(const LognormalParams& params) {
  return NormalParams{params.mu(), params.sigma()};
}

}  // namespace fairwage::distributions
