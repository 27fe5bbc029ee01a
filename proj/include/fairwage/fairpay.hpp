#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "fairwage/distributions.hpp"
#include "fairwage/numerics.hpp"

namespace fairwage::fairpay {

/// An assumed pay landscape: a minimum and a mean annual salary.
class Scenario {
 public:
  /// Throws DomainError unless 0 < min_salary < mean_salary (both finite).
  Scenario(double min_salary, double mean_salary, std::string label = {});

  double min_salary() const noexcept { return min_; }
  double mean_salary() const noexcept { return mean_; }
  const std::string& label() const noexcept { return label_; }

 private:
  double min_;
  double mean_;
  std::string label_;
};

struct CompanyRecord {
  std::string name;
  double ceo_total_pay;  ///< dollars per year
  std::int64_t n_employees;

  friend bool operator==(const CompanyRecord&, const CompanyRecord&) = default;
};

/// Throws DomainError when n_employees < 2 or ceo_total_pay is not positive.
void validate(const CompanyRecord& record);

struct PayAnalysisRow {
  std::string company;
  double ceo_total_pay;
  std::int64_t n_employees;
  numerics::Probability tail_area;  ///< 1 / N
  double z_ceo;
  double sigma;
  double ideal_ceo_salary;
  double ideal_ratio;
  double actual_ratio;
  double excess_factor;
};

struct AnalysisSummary {
  std::size_t included_count;
  double mean_ceo_total_pay;
  double mean_actual_ratio;
  double mean_ideal_ratio;
  double mean_excess_factor;  ///< arithmetic mean of the per-row factors

  /// mean_actual_ratio / mean_ideal_ratio, the headline overpayment factor.
  double excess_of_means() const noexcept { return mean_actual_ratio / mean_ideal_ratio; }
};

/// A sample of annual salaries, all strictly positive.
class WageSample {
 public:
  /// Throws DomainError if any salary is non-finite or <= 0.
  WageSample(std::vector<double> salaries, std::string source = {});

  std::span<const double> salaries() const noexcept { return salaries_; }
  std::size_t size() const noexcept { return salaries_.size(); }
  const std::string& source() const noexcept { return source_; }

 private:
  std::vector<double> salaries_;
  std::string source_;
};

struct CeoPosition {
  numerics::Probability tail_area;
  double z;
};

struct FairnessIndex {
  double entropy_gap;    ///< model entropy minus histogram entropy, nats
  double kl_divergence;  ///< KL(histogram || model), nats
  std::size_t bins;
};

inline constexpr double kDefaultBottomFraction = 0.95;
inline constexpr std::size_t kMinFitSamples = 30;
inline constexpr std::size_t kMinHistogramBins = 50;
inline constexpr std::size_t kMaxHistogramBins = 500;

/// sigma such that ln(mean) - ln(min) = 3 sigma.
double calibrate_sigma(const Scenario& scenario);

/// The CEO sits where the upper tail of the normal law of values holds one
/// employee out of N: tail area 1/N, z = Phi^-1(1 - 1/N).
/// Throws DomainError for N < 2.
CeoPosition ceo_z(std::int64_t n_employees);

/// exp(ln(mean) + z sigma): the bell curve of values is centred on
/// ln(mean salary). Throws DomainError for negative or non-finite z.
double ideal_ceo_salary(const Scenario& scenario, double z);

PayAnalysisRow pay_ratios(const CompanyRecord& record, const Scenario& scenario);

/// Arithmetic means over rows whose company is not in `exclude`.
/// Throws DomainError when nothing is left.
AnalysisSummary aggregate_analysis(std::span<const PayAnalysisRow> rows,
                                   const std::set<std::string>& exclude = {});

/// Fits the body of a wage sample.
///
/// Salaries at or below the bottom_fraction empirical quantile are kept and
/// their logs are fitted by maximum likelihood as a normal law right-truncated
/// at the log of that quantile. The returned parameters describe the full,
/// untruncated lognormal. With bottom_fraction == 1 no truncation applies and
/// the result is the sample mean and (1/n) standard deviation of the logs.
///
/// Throws ContractError for bottom_fraction outside (0, 1],
/// InsufficientDataError when fewer than 30 salaries are kept, and
/// ConvergenceError when the likelihood has no interior maximum.
distributions::LognormalParams fit_lognormal(const WageSample& sample,
                                             double bottom_fraction = kDefaultBottomFraction);

/// Entropy gap and KL divergence of a sample against a fitted lognormal.
///
/// The sample's log-salaries are histogrammed between their min and max with
/// a Freedman-Diaconis bin width clipped to [50, 500] bins. The histogram's
/// differential entropy is moved to the salary domain by adding the mean log
/// salary, so it is comparable with lognormal_entropy(fitted). The KL term
/// compares bin frequencies with the model's exact bin masses, renormalised
/// over the histogram range. Throws DomainError for a degenerate sample.
FairnessIndex fairness_index(const WageSample& sample,
                             const distributions::LognormalParams& fitted);

/// KL(p || q) for two nonnegative mass vectors, each normalised to unit sum.
/// Returns +inf when q vanishes where p does not.
double kl_divergence(std::span<const double> p, std::span<const double> q);

}  // namespace fairwage::fairpay
