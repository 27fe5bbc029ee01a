#pragma once

#include <cstdint>
#include <string>

#include "fairwage/numerics.hpp"

namespace fairwage::bounds {

/// What an organisation knows a priori: headcount N, total payroll M and the
/// minimum salary. The maximum salary is taken to be M itself.
class OrgFacts {
 public:
  /// Throws DomainError unless N >= 2, S_min > 0, M > S_min and M >= N * S_min.
  OrgFacts(std::int64_t n_employees, double total_payroll, double min_salary);

  std::int64_t n_employees() const noexcept { return n_; }
  double total_payroll() const noexcept { return payroll_; }
  double min_salary() const noexcept { return min_salary_; }
  double max_salary() const noexcept { return payroll_; }

 private:
  std::int64_t n_;
  double payroll_;
  double min_salary_;
};

struct ChebyshevEstimate {
  double a;
  double range_R;
  double sigma_est;
  numerics::Probability coverage_lower_bound;
  std::string theta_note;
};

inline constexpr double kDefaultChebyshevMultiplier = 10.0;

/// R = ln M - ln S_min, the spread of values between the lowest and the
/// highest possible salary.
double value_range(const OrgFacts& facts);

/// Chebyshev: P(|X - theta| < a sigma) >= 1 - 1/a^2. If nearly all the mass
/// fits inside the range R, then 2 a sigma ~ R and sigma ~ R / (2a).
/// Requires range_R > 0 and a > 1 (DomainError otherwise).
ChebyshevEstimate chebyshev_sigma(double range_R, double a = kDefaultChebyshevMultiplier);

/// Jensen: E[ln S] <= ln E[S] = ln(M / N). The upper bound is used as the
/// working estimate of mu.
double jensen_mu(const OrgFacts& facts);

}  // namespace fairwage::bounds
