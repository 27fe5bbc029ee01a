#pragma once

namespace fairwage::distributions {

/// Parameters of a lognormal salary law: mu and sigma are the mean and
/// standard deviation of ln S, in log-dollars.
class LognormalParams {
 public:
  /// Throws DomainError unless both are finite and sigma > 0.
  LognormalParams(double mu, double sigma);

  double mu() const noexcept { return mu_; }
  double sigma() const noexcept { return sigma_; }

  friend bool operator==(const LognormalParams&, const LognormalParams&) = default;

 private:
  double mu_;
  double sigma_;
};

/// Perceived value of a salary, ln S (log-utility with unit scale).
struct ValueScore {
  double value;
};

/// The normal law followed by ln S.
struct NormalParams {
  double mean;
  double stddev;
};

/// ln(salary). Throws DomainError for salary <= 0 or non-finite input.
ValueScore value_of_salary(double salary);

/// Density of S. Throws DomainError for s <= 0.
double lognormal_pdf(double s, const LognormalParams& params);

/// exp(mu + sigma^2 / 2)
double lognormal_mean(const LognormalParams& params);

/// (exp(sigma^2) - 1) * exp(2 mu + sigma^2)
double lognormal_variance(const LognormalParams& params);

/// Differential entropy of S in nats: mu + ln(2 pi e sigma^2) / 2.
double lognormal_entropy(const LognormalParams& params);

/// Salaries are lognormal, values are normal with the same (mu, sigma).
NormalParams log_domain_params(const LognormalParams& params);

}  // namespace fairwage::distributions
