#include "fairwage/bounds.hpp"

#include <cmath>

#include "fairwage/error.hpp"

namespace fairwage::bounds {

OrgFacts::OrgFacts(std::int64_t n_employees, double total_payroll, double min_salary)
    : n_(n_employees), payroll_(total_payroll), min_salary_(min_salary) {
  if (n_employees < 2) throw DomainError("an organisation needs at least 2 employees");
  if (!std::isfinite(min_salary) || !(min_salary > 0.0)) {
    throw DomainError("minimum salary must be positive");
  }
  if (!std::isfinite(total_payroll) || !(total_payroll > min_salary)) {
    throw DomainError("total payroll must exceed the minimum salary");
  }
  if (total_payroll < static_cast<double>(n_employees) * min_salary) {
    throw DomainError("total payroll cannot pay every employee the minimum salary");
  }
}

double value_range(const OrgFacts& facts) {
  return std::log(facts.max_salary()) - std::log(facts.min_salary());
}

ChebyshevEstimate chebyshev_sigma(double range_R, double a) {
  if (!std::isfinite(range_R) || !(range_R > 0.0)) {
    throw DomainError("range must be positive");
  }
  if (!std::isfinite(a) || !(a > 1.0)) {
    throw DomainError("Chebyshev multiplier must exceed 1, otherwise the bound is vacuous");
  }
  return ChebyshevEstimate{a, range_R, range_R / (2.0 * a),
                           numerics::Probability(1.0 - 1.0 / (a * a)),
                           "theta is the mean of the distribution of ln S"};
}

double jensen_mu(const OrgFacts& facts) {
  return std::log(facts.total_payroll() / static_cast<double>(facts.n_employees()));
}

}  // namespace fairwage::bounds
