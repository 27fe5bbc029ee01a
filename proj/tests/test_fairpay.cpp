#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "fairwage/error.hpp"
#include "fairwage/fairpay.hpp"
#include "fairwage/ingestion.hpp"
#include "oracles.hpp"

using namespace fairwage;
using namespace fairwage::fairpay;

namespace {

const Scenario kMotorolaScenario(13100.0, 40000.0);
const Scenario kTable2Scenario2(25000.0, 60000.0);

WageSample sample_of(std::vector<double> xs) { return WageSample(std::move(xs), "test"); }

}  // namespace

TEST_CASE("scenario invariants") {
  CHECK_THROWS_AS(Scenario(40000.0, 40000.0), DomainError);
  CHECK_THROWS_AS(Scenario(50000.0, 40000.0), DomainError);
  CHECK_THROWS_AS(Scenario(0.0, 40000.0), DomainError);
}

TEST_CASE("sigma calibration") {
  CHECK(std::fabs(calibrate_sigma(kMotorolaScenario) - 0.37209) <= 1e-4);
  CHECK(calibrate_sigma(Scenario(1000.0, 1000.0 * std::exp(3.0))) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::fabs(calibrate_sigma(kTable2Scenario2) - 0.29183) <= 1e-4);
}

TEST_CASE("CEO position on the bell curve") {
  const auto motorola = ceo_z(64000);
  CHECK(motorola.tail_area.value() == doctest::Approx(0.0000156).epsilon(0.005));
  CHECK(std::fabs(motorola.z - 4.16) <= 0.01);
  const auto anadarko = ceo_z(4000);
  CHECK(anadarko.tail_area.value() == 0.00025);
  CHECK(std::fabs(anadarko.z - 3.48) <= 0.01);
  const auto pair = ceo_z(2);
  CHECK(pair.tail_area.value() == 0.5);
  CHECK(pair.z == 0.0);
  CHECK_THROWS_AS(ceo_z(1), DomainError);
  CHECK_THROWS_AS(ceo_z(0), DomainError);
}

TEST_CASE("ideal CEO salary") {
  const double motorola = ideal_ceo_salary(kMotorolaScenario, 4.16);
  CHECK(motorola / 13100.0 == doctest::Approx(14.3).epsilon(0.02));
  CHECK(ideal_ceo_salary(kMotorolaScenario, 0.0) == doctest::Approx(40000.0).epsilon(1e-15));
  CHECK(ideal_ceo_salary(kTable2Scenario2, 4.46) / 25000.0 == doctest::Approx(8.8).epsilon(0.02));
  CHECK_THROWS_AS(ideal_ceo_salary(kMotorolaScenario, -0.1), DomainError);
  // Equivalent closed form mean * (mean / min)^(z / 3).
  CHECK(motorola == doctest::Approx(40000.0 * std::pow(40000.0 / 13100.0, 4.16 / 3)).epsilon(1e-13));
}

TEST_CASE("pay ratios") {
  const auto& bundle = ingestion::load_bundled_dataset();
  const auto motorola = *ingestion::find_company(bundle, "Motorola");
  const auto row = pay_ratios(motorola, kMotorolaScenario);
  CHECK(std::lround(row.actual_ratio) == 7969);
  CHECK(row.tail_area.value() == 1.0 / 64000);
  CHECK(row.excess_factor * row.ideal_ratio == doctest::Approx(row.actual_ratio).epsilon(1e-15));

  const auto berkshire = *ingestion::find_company(bundle, "Berkshire");
  CHECK(std::lround(pay_ratios(berkshire, kTable2Scenario2).actual_ratio) == 8);

  const CompanyRecord self{"Self", 13100.0, 100};
  CHECK(pay_ratios(self, kMotorolaScenario).actual_ratio == 1.0);

  CHECK_THROWS_AS(pay_ratios(CompanyRecord{"Tiny", 1e6, 1}, kMotorolaScenario), DomainError);
  CHECK_THROWS_AS(pay_ratios(CompanyRecord{"Free", 0.0, 10}, kMotorolaScenario), DomainError);
}

TEST_CASE("ratio identities and monotonicity") {
  const auto& bundle = ingestion::load_bundled_dataset();
  for (const auto& scenario : bundle.scenarios) {
    for (const auto& c : bundle.companies) {
      const auto row = pay_ratios(c, scenario);
      const double r = scenario.mean_salary() / scenario.min_salary();
      CHECK(row.ideal_ratio == doctest::Approx(std::pow(r, 1.0 + row.z_ceo / 3.0)).epsilon(1e-10));
      CHECK(row.excess_factor * row.ideal_ratio ==
            doctest::Approx(row.actual_ratio).epsilon(1e-15));
      CHECK(row.tail_area.value() == 1.0 / static_cast<double>(c.n_employees));
    }
  }

  double prev = 0.0;
  for (std::int64_t n = 2; n < 5'000'000; n = n * 3 / 2 + 1) {
    const double ratio = pay_ratios(CompanyRecord{"X", 1e6, n}, kMotorolaScenario).ideal_ratio;
    CHECK(ratio > prev);
    prev = ratio;
  }

  prev = 0.0;
  for (double mean = 14000.0; mean < 500000.0; mean *= 1.2) {
    const double ratio = pay_ratios(CompanyRecord{"X", 1e6, 50000}, Scenario(13100.0, mean)).ideal_ratio;
    CHECK(ratio > prev);
    prev = ratio;
  }
}

TEST_CASE("ratios do not depend on the currency unit") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double min = 5000.0 + 50000.0 * unit(rng);
    const double mean = min * (1.05 + 5.0 * unit(rng));
    const double pay = 1e5 + 1e8 * unit(rng);
    const auto n = static_cast<std::int64_t>(2 + 1e6 * unit(rng));
    const double k = std::exp(-5.0 + 10.0 * unit(rng));
    const auto a = pay_ratios(CompanyRecord{"A", pay, n}, Scenario(min, mean));
    const auto b = pay_ratios(CompanyRecord{"A", pay * k, n}, Scenario(min * k, mean * k));
    CHECK(b.actual_ratio == doctest::Approx(a.actual_ratio).epsilon(1e-12));
    CHECK(b.ideal_ratio == doctest::Approx(a.ideal_ratio).epsilon(1e-12));
    CHECK(b.excess_factor == doctest::Approx(a.excess_factor).epsilon(1e-12));
  }
}

TEST_CASE("aggregate analysis") {
  const auto& bundle = ingestion::load_bundled_dataset();
  std::vector<PayAnalysisRow> t2;
  std::vector<PayAnalysisRow> t1;
  for (const auto& c : bundle.companies) {
    t2.push_back(pay_ratios(c, kTable2Scenario2));
    t1.push_back(pay_ratios(c, kMotorolaScenario));
  }
  const auto s2 = aggregate_analysis(t2, {"Berkshire"});
  CHECK(s2.included_count == 35);
  CHECK(std::fabs(s2.mean_actual_ratio - 1057) <= 1.0);
  CHECK(std::fabs(s2.mean_ideal_ratio - 8.2) <= 0.1);
  CHECK(std::fabs(s2.excess_of_means() - 129) <= 3.0);
  CHECK(std::fabs(s2.mean_excess_factor - 129) <= 3.0);
  CHECK(std::fabs(aggregate_analysis(t1, {"Berkshire"}).mean_actual_ratio - 2017) <= 1.0);
  CHECK(s2.mean_ceo_total_pay / 1e6 == doctest::Approx(26.4).epsilon(0.01));

  const std::vector<PayAnalysisRow> one{t2.front()};
  const auto single = aggregate_analysis(one);
  CHECK(single.mean_actual_ratio == t2.front().actual_ratio);
  CHECK(single.mean_ideal_ratio == t2.front().ideal_ratio);
  CHECK(single.mean_excess_factor == t2.front().excess_factor);

  CHECK_THROWS_AS(aggregate_analysis(one, {t2.front().company}), DomainError);
  CHECK_THROWS_AS(aggregate_analysis(std::vector<PayAnalysisRow>{}), DomainError);
}

TEST_CASE("truncated lognormal fit recovers the body") {
  SUBCASE("clean sample") {
    const auto draws = oracle::lognormal_draws(10.6, 0.37, 100000, 42);
    const auto p = fit_lognormal(sample_of(draws), 0.95);
    CHECK(std::fabs(p.mu() - 10.6) <= 0.01);
    CHECK(std::fabs(p.sigma() - 0.37) <= 0.01);
    const auto p90 = fit_lognormal(sample_of(draws), 0.90);
    CHECK(std::fabs(p90.mu() - 10.6) <= 0.01);
    CHECK(std::fabs(p90.sigma() - 0.37) <= 0.01);
  }
  SUBCASE("Pareto-contaminated top") {
    const auto draws = oracle::pareto_contaminated(10.6, 0.37, 100000, 43);
    const auto p = fit_lognormal(sample_of(draws), 0.95);
    CHECK(std::fabs(p.mu() - 10.6) <= 0.02);
    CHECK(std::fabs(p.sigma() - 0.37) <= 0.02);
    // An untruncated fit is pulled up by the tail.
    const auto naive = fit_lognormal(sample_of(draws), 1.0);
    CHECK(naive.sigma() > p.sigma());
  }
  SUBCASE("no truncation gives the plain log moments") {
    const auto draws = oracle::lognormal_draws(3.0, 0.8, 5000, 5);
    double sum = 0.0;
    for (double s : draws) sum += std::log(s);
    const double mean = sum / 5000.0;
    double ss = 0.0;
    for (double s : draws) ss += (std::log(s) - mean) * (std::log(s) - mean);
    const auto p = fit_lognormal(sample_of(draws), 1.0);
    CHECK(p.mu() == doctest::Approx(mean).epsilon(1e-12));
    CHECK(p.sigma() == doctest::Approx(std::sqrt(ss / 5000.0)).epsilon(1e-12));
  }
}

TEST_CASE("fit error shrinks with sample size") {
  double prev = 1.0;
  for (std::size_t n : {1000u, 10000u, 100000u}) {
    double err = 0.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto p = fit_lognormal(sample_of(oracle::lognormal_draws(10.6, 0.37, n, seed)), 0.95);
      err += std::hypot(p.mu() - 10.6, p.sigma() - 0.37);
    }
    err /= 5.0;
    CHECK(err < prev);
    prev = err;
  }
}

TEST_CASE("fit error paths") {
  CHECK_THROWS_AS(fit_lognormal(sample_of(std::vector<double>(29, 5e4))), InsufficientDataError);
  const auto draws = oracle::lognormal_draws(10.0, 0.5, 40, 9);
  CHECK_THROWS_AS(fit_lognormal(sample_of(draws), 0.5), InsufficientDataError);
  CHECK_THROWS_AS(fit_lognormal(sample_of(draws), 0.0), ContractError);
  CHECK_THROWS_AS(fit_lognormal(sample_of(draws), 1.5), ContractError);
  CHECK_THROWS_AS(sample_of({1.0, -2.0}), DomainError);
  // Mass piled at the cutoff: no interior likelihood maximum.
  std::vector<double> piled(100, std::exp(10.0));
  piled.insert(piled.end(), 900, std::exp(11.0));
  CHECK_THROWS_AS(fit_lognormal(sample_of(piled), 0.95), ConvergenceError);
}

TEST_CASE("fairness index") {
  const distributions::LognormalParams fitted(10.6, 0.37);
  const auto own = fairness_index(sample_of(oracle::lognormal_draws(10.6, 0.37, 100000, 21)), fitted);
  CHECK(own.kl_divergence >= 0.0);
  CHECK(own.kl_divergence < 0.01);
  CHECK(std::fabs(own.entropy_gap) < 0.01);
  CHECK(own.bins >= kMinHistogramBins);
  CHECK(own.bins <= kMaxHistogramBins);

  const auto wide = fairness_index(sample_of(oracle::lognormal_draws(10.6, 0.74, 100000, 21)), fitted);
  CHECK(wide.kl_divergence > own.kl_divergence);

  CHECK_THROWS_AS(fairness_index(sample_of(std::vector<double>(100, 5e4)), fitted), DomainError);
}

TEST_CASE("KL divergence of mass vectors") {
  const std::vector<double> model{0.1, 0.2, 0.3, 0.4};
  const std::vector<double> counts{10.0, 20.0, 30.0, 40.0};
  CHECK(kl_divergence(counts, model) == 0.0);
  const std::vector<double> other{40.0, 30.0, 20.0, 10.0};
  CHECK(kl_divergence(other, model) > 0.0);
  const std::vector<double> holes{0.5, 0.5, 0.0, 0.0};
  CHECK(std::isinf(kl_divergence(model, holes)));
  CHECK(kl_divergence(holes, model) == doctest::Approx(0.5 * std::log(0.5 / 0.1) + 0.5 * std::log(0.5 / 0.2)));
}
