#include <doctest.h>

#include <cmath>
#include <vector>

#include "fairwage/distributions.hpp"
#include "fairwage/error.hpp"
#include "fairwage/maxent.hpp"
#include "oracles.hpp"

using namespace fairwage;
using namespace fairwage::maxent;

namespace {

const double kMus[] = {0.0, 1.0, 10.0};
const double kSigmas[] = {0.25, 0.5, 1.0, 2.0};

double sup_relative_error(const MaxEntSolution& sol) {
  const auto& c = sol.constraints;
  double worst = 0.0;
  for (std::size_t i = 0; i < sol.grid.size(); ++i) {
    const double exact = oracle::normal_pdf(sol.grid.point(i), c.mu(), c.sigma());
    if (exact > 1e-12) worst = std::max(worst, std::fabs(sol.density[i] - exact) / exact);
  }
  return worst;
}

double relative(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

// Salary-domain entropy of N(mu, sigma^2) in log space, independent of the solver.
double closed_form_entropy(double mu, double sigma) {
  return mu + 0.5 * std::log(2 * 3.14159265358979323846 * 2.71828182845904523536 * sigma * sigma);
}

std::vector<double> standardized(const MaxEntSolution& sol) {
  std::vector<double> t;
  for (double x : sol.grid.points()) t.push_back((x - sol.constraints.mu()) / sol.constraints.sigma());
  return t;
}

}  // namespace

TEST_CASE("standard case multipliers") {
  const MomentConstraints c(0.0, 1.0);
  const auto sol = solve_maxent(c, numerics::Grid(-8.0, 8.0, 4001), 1e-12);
  CHECK(std::fabs(sol.multipliers.lambda2 + 0.5) <= 1e-9);
  CHECK(std::fabs(sol.multipliers.lambda1) <= 1e-9);
  CHECK(sol.residual <= 1e-12);
  for (double g : sol.density) CHECK(g >= 0.0);
}

TEST_CASE("minimum-wage scenario constraints") {
  const MomentConstraints c(10.5966, 0.3721);
  const auto sol = solve_maxent(c, default_grid(c));
  const double s2 = 0.3721 * 0.3721;
  CHECK(relative(sol.multipliers.lambda2, -1.0 / (2 * s2)) <= 1e-6);
  CHECK(relative(sol.multipliers.lambda1, 10.5966 / s2) <= 1e-6);
  CHECK(sol.multipliers.lambda2 == doctest::Approx(-3.611).epsilon(1e-3));
  CHECK(sol.multipliers.lambda1 == doctest::Approx(76.53).epsilon(1e-4));
  CHECK(sup_relative_error(sol) < 1e-6);
}

TEST_CASE("analytic multiplier identities, moments and density across the parameter grid") {
  for (double mu : kMus) {
    for (double sigma : kSigmas) {
      CAPTURE(mu);
      CAPTURE(sigma);
      const MomentConstraints c(mu, sigma);
      const auto sol = solve_maxent(c, default_grid(c, 4001), 1e-12);
      const double s2 = sigma * sigma;
      CHECK(relative(sol.multipliers.lambda2, -1.0 / (2 * s2)) <= 1e-6);
      if (mu == 0.0) {
        CHECK(std::fabs(sol.multipliers.lambda1) <= 1e-9);
      } else {
        CHECK(relative(sol.multipliers.lambda1, mu / s2) <= 1e-6);
      }
      CHECK(sol.multipliers.lambda2 < 0.0);
      CHECK(std::fabs(sol.achieved_moments.m0 - 1.0) <= 1e-12);
      CHECK(std::fabs(sol.achieved_moments.m1 - mu) <= 1e-12 * std::max(1.0, std::fabs(mu)));
      CHECK(std::fabs(sol.achieved_moments.m2 - c.second_raw_moment()) <=
            1e-12 * std::max(1.0, c.second_raw_moment()));
      CHECK(sup_relative_error(sol) < 1e-6);
      CHECK(std::fabs(solution_entropy(sol) - closed_form_entropy(mu, sigma)) <= 1e-6);
      CHECK(sol.entropy == solution_entropy(sol));
    }
  }
}

TEST_CASE("solution entropy reproduces the closed form") {
  const MomentConstraints unit(0.0, 1.0);
  CHECK(std::fabs(solution_entropy(solve_maxent(unit, default_grid(unit))) - 1.418939) <= 1e-6);
  const MomentConstraints shifted(5.0, 1.0);
  CHECK(std::fabs(solution_entropy(solve_maxent(shifted, default_grid(shifted))) - 6.418939) <=
        1e-6);
}

// The trapezoid rule converges geometrically for Gaussian integrands, so at
// 501 points the discretisation error is already below round-off. The sweep
// therefore checks that refining never makes things worse by more than the
// round-off floor, and that every grid sits at that floor.
TEST_CASE("grid refinement sweep") {
  constexpr double kRoundOffFloor = 1e-12;
  for (double mu : kMus) {
    for (double sigma : kSigmas) {
      CAPTURE(mu);
      CAPTURE(sigma);
      const MomentConstraints c(mu, sigma);
      double prev_entropy_error = 1.0;
      double prev_density_error = 1.0;
      for (std::size_t n : {501u, 1001u, 2001u, 4001u, 8001u}) {
        const auto sol = solve_maxent(c, default_grid(c, n));
        const double entropy_error =
            std::fabs(solution_entropy(sol) - closed_form_entropy(mu, sigma));
        const double density_error = sup_relative_error(sol);
        CHECK(entropy_error < 1e-10);
        CHECK(density_error < 1e-10);
        CHECK(entropy_error <= prev_entropy_error + kRoundOffFloor);
        CHECK(density_error <= prev_density_error + kRoundOffFloor);
        prev_entropy_error = entropy_error;
        prev_density_error = density_error;
      }
    }
  }
}

TEST_CASE("damped Newton recovers from poor starting points") {
  const MomentConstraints c(10.0, 0.5);
  const auto grid = default_grid(c);
  const std::vector<double> flat(grid.size(), 0.0);
  const detail::TiltCoefficients starts[] = {
      {0.0, 0.0, -0.5}, {0.0, 0.0, -0.02}, {-3.0, 2.0, -2.0}, {5.0, -1.5, -0.1}, {0.0, 0.0, 0.0}};
  for (const auto& start : starts) {
    const auto r = detail::solve_tilt(flat, grid, c, start, 1e-12, 100);
    const auto m = detail::to_multipliers(r.coefficients, c);
    CHECK(r.residual <= 1e-12);
    CHECK(relative(m.lambda2, -1.0 / (2 * 0.25)) <= 1e-9);
    CHECK(relative(m.lambda1, 10.0 / 0.25) <= 1e-9);
  }
}

TEST_CASE("solver error paths") {
  const MomentConstraints c(0.0, 1.0);
  SUBCASE("iteration budget exhausted") {
    try {
      solve_maxent(c, default_grid(c), 1e-12, 1);
      FAIL("expected a convergence error");
    } catch (const ConvergenceError& e) {
      CHECK(e.residual() > 1e-12);
    }
  }
  SUBCASE("grid too narrow") {
    CHECK_THROWS_AS(solve_maxent(c, numerics::Grid(-3.0, 8.0, 4001)), TruncationError);
    CHECK_THROWS_AS(solve_maxent(c, numerics::Grid(-8.0, 6.0, 4001)), TruncationError);
    CHECK_THROWS_AS(solve_maxent(c, numerics::Grid(20.0, 40.0, 101)), TruncationError);
    CHECK_NOTHROW(solve_maxent(c, numerics::Grid(-7.0, 12.0, 4001)));
  }
  SUBCASE("bad options") {
    CHECK_THROWS_AS(solve_maxent(c, default_grid(c), 0.0), ContractError);
    CHECK_THROWS_AS(solve_maxent(c, default_grid(c), 1e-12, 0), ContractError);
    CHECK_THROWS_AS(MomentConstraints(0.0, 0.0), DomainError);
    CHECK_THROWS_AS(MomentConstraints(0.0, -1.0), DomainError);
  }
}

TEST_CASE("projection onto the constraint set") {
  const MomentConstraints c(1.0, 0.5);
  const auto sol = solve_maxent(c, default_grid(c));
  const auto t = standardized(sol);
  std::vector<double> bumped(sol.density);
  for (std::size_t i = 0; i < t.size(); ++i) bumped[i] *= 1.0 + 0.08 * std::sin(1.7 * t[i]) + 0.3;
  const auto projected = project_onto_constraints(bumped, sol.grid, c);
  const auto m = density_moments(projected, sol.grid);
  CHECK(m.m0 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m.m1 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m.m2 == doctest::Approx(1.25).epsilon(1e-12));
  CHECK(density_entropy(projected, sol.grid) < solution_entropy(sol));
}

TEST_CASE("entropy dominance of the converged solution") {
  for (double mu : kMus) {
    for (double sigma : kSigmas) {
      const MomentConstraints c(mu, sigma);
      const auto sol = solve_maxent(c, default_grid(c));
      CHECK(entropy_dominance_check(sol, 0.05, 100, 20240611));
    }
  }
  const MomentConstraints unit(0.0, 1.0);
  const auto sol = solve_maxent(unit, default_grid(unit));
  CHECK(entropy_dominance_check(sol, 1e-12, 5, 1));
  CHECK_THROWS_AS(entropy_dominance_check(sol, 0.0, 5, 1), ContractError);
  CHECK_THROWS_AS(entropy_dominance_check(sol, 0.2, 5, 1), ContractError);
  CHECK_THROWS_AS(entropy_dominance_check(sol, 0.05, 0, 1), ContractError);
}

TEST_CASE("a mis-converged solution is dominated") {
  const MomentConstraints c(0.0, 1.0);
  const auto good = solve_maxent(c, default_grid(c));
  const auto t = standardized(good);

  // Off the constraint set by ~1e-2 and not exponential-quadratic.
  MaxEntSolution bad = good;
  for (std::size_t i = 0; i < t.size(); ++i) {
    bad.density[i] *= (1.0 + 0.1 * std::sin(2.0 * t[i])) * std::exp(0.01 * t[i]);
  }
  const auto m = density_moments(bad.density, bad.grid);
  bad.residual = std::max({std::fabs(m.m0 - 1.0), std::fabs(m.m1), std::fabs(m.m2 - 1.0)});
  bad.entropy = solution_entropy(bad);
  CHECK(bad.residual > 5e-3);
  CHECK(bad.residual < 5e-2);

  const auto corrected = project_onto_constraints(bad.density, bad.grid, c);
  CHECK(density_entropy(corrected, bad.grid) < solution_entropy(good));

  // Perturbing the dominated density finds feasible densities above it.
  MaxEntSolution feasible_bad = good;
  feasible_bad.density = corrected;
  CHECK_FALSE(entropy_dominance_check(feasible_bad, 0.1, 100, 3));
}
