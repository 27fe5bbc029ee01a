#include "fairwage/fairpay.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "fairwage/error.hpp"

namespace fairwage::fairpay {

using distributions::LognormalParams;
using numerics::Probability;

namespace {

// Mass of the standard normal between a and b (a < b), computed from the
// nearer tail so that far-tail bins keep their relative precision.
double normal_interval_mass(double a, double b) {
  if (a >= 0.0) return numerics::std_normal_upper_tail(a) - numerics::std_normal_upper_tail(b);
  if (b <= 0.0) return numerics::std_normal_upper_tail(-b) - numerics::std_normal_upper_tail(-a);
  return 1.0 - numerics::std_normal_upper_tail(-a) - numerics::std_normal_upper_tail(b);
}

// Linear-interpolated empirical quantile of sorted data.
double sorted_quantile(std::span<const double> sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

struct MeanVar {
  double mean;
  double var;  // divided by n
};

MeanVar mean_var(std::span<const double> xs) {
  const double n = static_cast<double>(xs.size());
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, ss / n};
}

// For a normal law right-truncated at standardized point alpha:
// E[Z | Z < alpha] = -lambda, Var[Z | Z < alpha] = 1 - alpha lambda - lambda^2,
// lambda = phi(alpha) / Phi(alpha). Returns the truncation point's distance
// from the truncated mean in truncated standard deviations.
double standardized_gap(double alpha) {
  const double lambda =
      numerics::std_normal_pdf(alpha) / numerics::std_normal_upper_tail(-alpha);
  const double var = 1.0 - alpha * lambda - lambda * lambda;
  return (alpha + lambda) / std::sqrt(var);
}

std::vector<double> sorted_logs(const WageSample& sample) {
  std::vector<double> ys;
  ys.reserve(sample.size());
  for (double s : sample.salaries()) ys.push_back(std::log(s));
  std::sort(ys.begin(), ys.end());
  return ys;
}

}  // namespace

Scenario::Scenario(double min_salary, double mean_salary, std::string label)
    : min_(min_salary), mean_(mean_salary), label_(std::move(label)) {
  if (!std::isfinite(min_salary) || !(min_salary > 0.0)) {
    throw DomainError("minimum salary must be positive");
  }
  if (!std::isfinite(mean_salary) || !(mean_salary > min_salary)) {
    throw DomainError("mean salary must exceed the minimum salary");
  }
}

void validate(const CompanyRecord& record) {
  if (record.n_employees < 2) {
    throw DomainError(record.name + ": employee count must be at least 2");
  }
  if (!std::isfinite(record.ceo_total_pay) || !(record.ceo_total_pay > 0.0)) {
    throw DomainError(record.name + ": CEO pay must be positive");
  }
}

WageSample::WageSample(std::vector<double> salaries, std::string source)
    : salaries_(std::move(salaries)), source_(std::move(source)) {
  for (double s : salaries_) {
    if (!std::isfinite(s) || !(s > 0.0)) throw DomainError("salaries must be positive");
  }
}

double calibrate_sigma(const Scenario& scenario) {
  return (std::log(scenario.mean_salary()) - std::log(scenario.min_salary())) / 3.0;
}

CeoPosition ceo_z(std::int64_t n_employees) {
  if (n_employees < 2) throw DomainError("employee count must be at least 2");
  const Probability tail(1.0 / static_cast<double>(n_employees));
  return CeoPosition{tail, numerics::std_normal_quantile(tail.complement())};
}

double ideal_ceo_salary(const Scenario& scenario, double z) {
  if (!std::isfinite(z) || z < 0.0) throw DomainError("z must be finite and nonnegative");
  return std::exp(std::log(scenario.mean_salary()) + z * calibrate_sigma(scenario));
}

PayAnalysisRow pay_ratios(const CompanyRecord& record, const Scenario& scenario) {
  validate(record);
  const auto pos = ceo_z(record.n_employees);
  const double ideal = ideal_ceo_salary(scenario, pos.z);
  const double ideal_ratio = ideal / scenario.min_salary();
  const double actual_ratio = record.ceo_total_pay / scenario.min_salary();
  return PayAnalysisRow{record.name,
                        record.ceo_total_pay,
                        record.n_employees,
                        pos.tail_area,
                        pos.z,
                        calibrate_sigma(scenario),
                        ideal,
                        ideal_ratio,
                        actual_ratio,
                        actual_ratio / ideal_ratio};
}

AnalysisSummary aggregate_analysis(std::span<const PayAnalysisRow> rows,
                                   const std::set<std::string>& exclude) {
  AnalysisSummary s{0, 0.0, 0.0, 0.0, 0.0};
  for (const auto& row : rows) {
    if (exclude.contains(row.company)) continue;
    ++s.included_count;
    s.mean_ceo_total_pay += row.ceo_total_pay;
    s.mean_actual_ratio += row.actual_ratio;
    s.mean_ideal_ratio += row.ideal_ratio;
    s.mean_excess_factor += row.excess_factor;
  }
  if (s.included_count == 0) throw DomainError("no rows left to aggregate");
  const double n = static_cast<double>(s.included_count);
  s.mean_ceo_total_pay /= n;
  s.mean_actual_ratio /= n;
  s.mean_ideal_ratio /= n;
  s.mean_excess_factor /= n;
  return s;
}

LognormalParams fit_lognormal(const WageSample& sample, double bottom_fraction) {
  if (!(bottom_fraction > 0.0 && bottom_fraction <= 1.0)) {
    throw ContractError("bottom_fraction must lie in (0, 1]");
  }
  if (sample.size() < kMinFitSamples) {
    throw InsufficientDataError("need at least " + std::to_string(kMinFitSamples) +
                                " salaries, got " + std::to_string(sample.size()));
  }
  const auto ys = sorted_logs(sample);

  if (bottom_fraction == 1.0) {
    const auto mv = mean_var(ys);
    return LognormalParams(mv.mean, std::sqrt(mv.var));
  }

  const auto keep = static_cast<std::size_t>(
      std::ceil(bottom_fraction * static_cast<double>(ys.size())));
  const double cutoff = ys[std::max<std::size_t>(keep, 1) - 1];
  const auto end = std::upper_bound(ys.begin(), ys.end(), cutoff);
  const std::span<const double> kept(ys.begin(), end);
  if (kept.size() < kMinFitSamples) {
    throw InsufficientDataError("only " + std::to_string(kept.size()) +
                                " salaries below the cutoff; need " +
                                std::to_string(kMinFitSamples));
  }
  const auto mv = mean_var(kept);
  if (!(mv.var > 0.0)) throw DomainError("retained salaries are all equal");

  // The truncated normal is an exponential family in (y, y^2) for a fixed
  // truncation point, so the likelihood equations match the sample mean and
  // variance. Eliminating mu and sigma leaves one monotone equation in the
  // standardized truncation point alpha = (cutoff - mu) / sigma.
  const double target = (cutoff - mv.mean) / std::sqrt(mv.var);
  double lo = -8.0;
  double hi = 40.0;
  if (!(target > standardized_gap(lo) && target < standardized_gap(hi))) {
    throw ConvergenceError("truncated-normal likelihood has no interior maximum", target);
  }
  for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, std::fabs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    (standardized_gap(mid) < target ? lo : hi) = mid;
  }
  const double alpha = 0.5 * (lo + hi);
  const double lambda =
      numerics::std_normal_pdf(alpha) / numerics::std_normal_upper_tail(-alpha);
  const double sigma = std::sqrt(mv.var / (1.0 - alpha * lambda - lambda * lambda));
  return LognormalParams(cutoff - alpha * sigma, sigma);
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw ContractError("kl_divergence: size mismatch");
  double sp = 0.0;
  double sq = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] >= 0.0) || !(q[i] >= 0.0)) throw DomainError("masses must be nonnegative");
    sp += p[i];
    sq += q[i];
  }
  if (!(sp > 0.0) || !(sq > 0.0)) throw DomainError("masses must not all be zero");
  double kl = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) return std::numeric_limits<double>::infinity();
    const double pi = p[i] / sp;
    kl += pi * std::log(pi / (q[i] / sq));
  }
  return std::max(kl, 0.0);
}

FairnessIndex fairness_index(const WageSample& sample, const LognormalParams& fitted) {
  if (sample.size() < 2) throw DomainError("fairness index needs at least two salaries");
  const auto ys = sorted_logs(sample);
  const double lo = ys.front();
  const double hi = ys.back();
  const double range = hi - lo;
  if (!(range > 0.0)) throw DomainError("all salaries are equal");

  const double n = static_cast<double>(ys.size());
  const double iqr = sorted_quantile(ys, 0.75) - sorted_quantile(ys, 0.25);
  const double fd_width = 2.0 * iqr / std::cbrt(n);
  std::size_t bins = kMaxHistogramBins;
  if (fd_width > 0.0) {
    const double wanted = std::ceil(range / fd_width);
    bins = static_cast<std::size_t>(std::clamp(wanted, static_cast<double>(kMinHistogramBins),
                                               static_cast<double>(kMaxHistogramBins)));
  }
  const double width = range / static_cast<double>(bins);

  std::vector<double> counts(bins, 0.0);
  for (double y : ys) {
    auto b = static_cast<std::size_t>((y - lo) / width);
    counts[std::min(b, bins - 1)] += 1.0;
  }

  double log_entropy = 0.0;
  for (double c : counts) {
    if (c == 0.0) continue;
    const double p = c / n;
    log_entropy -= p * std::log(p / width);
  }
  const double mean_log = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  const double sample_entropy = log_entropy + mean_log;

  std::vector<double> model(bins);
  for (std::size_t i = 0; i < bins; ++i) {
    const double a = lo + static_cast<double>(i) * width;
    const double b = i + 1 == bins ? hi : a + width;
    model[i] = normal_interval_mass((a - fitted.mu()) / fitted.sigma(),
                                    (b - fitted.mu()) / fitted.sigma());
  }

  return FairnessIndex{distributions::lognormal_entropy(fitted) - sample_entropy,
                       kl_divergence(counts, model), bins};
}

}  // namespace fairwage::fairpay
