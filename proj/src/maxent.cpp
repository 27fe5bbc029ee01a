#include "fairwage/maxent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "fairwage/error.hpp"

namespace fairwage::maxent {

using numerics::Grid;

namespace {

constexpr int kMaxHalvings = 20;
constexpr double kTruncationRatio = 1e-10;
constexpr double kDominanceSlack = 1e-9;

struct Evaluation {
  std::array<double, 3> residual{};
  std::array<std::array<double, 3>, 3> jacobian{};
  double max_residual = std::numeric_limits<double>::infinity();
};

std::vector<double> standardized_points(const Grid& grid, const MomentConstraints& c) {
  std::vector<double> t(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) t[i] = (grid.point(i) - c.mu()) / c.sigma();
  return t;
}

double tilt_exponent(const detail::TiltCoefficients& a, double t) {
  return a[0] + t * (a[1] + t * a[2]);
}

// Targets in t are E[1] = 1, E[t] = 0, E[t^2] = 1 by construction of t.
Evaluation evaluate(std::span<const double> log_base, std::span<const double> t,
                    std::span<const double> weights, const detail::TiltCoefficients& a) {
  std::array<long double, 5> raw{};
  for (std::size_t i = 0; i < t.size(); ++i) {
    const long double g = std::exp(log_base[i] + tilt_exponent(a, t[i]));
    long double term = weights[i] * g;
    for (auto& r : raw) {
      r += term;
      term *= t[i];
    }
  }
  Evaluation ev;
  constexpr std::array<double, 3> target{1.0, 0.0, 1.0};
  double worst = 0.0;
  for (int k = 0; k < 3; ++k) {
    ev.residual[k] = static_cast<double>(raw[k]) - target[k];
    for (int j = 0; j < 3; ++j) ev.jacobian[k][j] = static_cast<double>(raw[k + j]);
    const double r = std::fabs(ev.residual[k]);
    if (!std::isfinite(r)) {
      worst = std::numeric_limits<double>::infinity();
      break;
    }
    worst = std::max(worst, r);
  }
  for (const auto& row : ev.jacobian) {
    for (double v : row) {
      if (!std::isfinite(v)) worst = std::numeric_limits<double>::infinity();
    }
  }
  ev.max_residual = worst;
  return ev;
}

// Gaussian elimination with partial pivoting; false if singular.
bool solve3(std::array<std::array<double, 3>, 3> m, std::array<double, 3> rhs,
            std::array<double, 3>& out) {
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::fabs(m[r][col]) > std::fabs(m[pivot][col])) pivot = r;
    }
    if (!(std::fabs(m[pivot][col]) > 0.0)) return false;
    std::swap(m[col], m[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    for (int r = col + 1; r < 3; ++r) {
      const double f = m[r][col] / m[col][col];
      for (int c = col; c < 3; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  for (int r = 2; r >= 0; --r) {
    double s = rhs[r];
    for (int c = r + 1; c < 3; ++c) s -= m[r][c] * out[c];
    out[r] = s / m[r][r];
  }
  return std::isfinite(out[0]) && std::isfinite(out[1]) && std::isfinite(out[2]);
}

void check_grid_coverage(const MomentConstraints& c, const Grid& grid) {
  if (!(grid.lo() <= c.mu() && c.mu() <= grid.hi())) {
    throw TruncationError("grid [" + std::to_string(grid.lo()) + ", " +
                          std::to_string(grid.hi()) + "] does not contain mu = " +
                          std::to_string(c.mu()));
  }
  for (double end : {grid.lo(), grid.hi()}) {
    const double z = (end - c.mu()) / c.sigma();
    if (std::exp(-0.5 * z * z) > kTruncationRatio) {
      throw TruncationError("grid end " + std::to_string(end) + " lies " + std::to_string(z) +
                            " sigma from mu; the density there exceeds 1e-10 of its peak");
    }
  }
}

std::vector<double> tilted_density(std::span<const double> log_base, std::span<const double> t,
                                   const detail::TiltCoefficients& a) {
  std::vector<double> g(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) g[i] = std::exp(log_base[i] + tilt_exponent(a, t[i]));
  return g;
}

}  // namespace

MomentConstraints::MomentConstraints(double mu, double sigma) : mu_(mu), sigma_(sigma) {
  if (!std::isfinite(mu) || !std::isfinite(sigma) || !(sigma > 0.0)) {
    throw DomainError("moment constraints require finite mu and sigma > 0");
  }
}

Grid default_grid(const MomentConstraints& c, std::size_t n_points) {
  const double half = kDefaultHalfWidthSigmas * c.sigma();
  return Grid(c.mu() - half, c.mu() + half, n_points);
}

namespace detail {

TiltResult solve_tilt(std::span<const double> log_base, const Grid& grid,
                      const MomentConstraints& constraints, TiltCoefficients start, double tol,
                      int max_iter) {
  if (!(tol > 0.0)) throw ContractError("tolerance must be positive");
  if (max_iter < 1) throw ContractError("max_iter must be at least 1");
  if (log_base.size() != grid.size()) throw ContractError("base measure does not match grid");

  const auto t = standardized_points(grid, constraints);
  const auto w = grid.trapezoid_weights();

  TiltCoefficients a = start;
  Evaluation ev = evaluate(log_base, t, w, a);
  int iterations = 0;
  while (ev.max_residual > tol) {
    if (iterations == max_iter) {
      throw ConvergenceError("maximum-entropy Newton iteration did not converge in " +
                                 std::to_string(max_iter) + " iterations",
                             ev.max_residual);
    }
    std::array<double, 3> rhs{-ev.residual[0], -ev.residual[1], -ev.residual[2]};
    std::array<double, 3> delta{};
    if (!solve3(ev.jacobian, rhs, delta)) {
      throw ConvergenceError("singular moment Jacobian", ev.max_residual);
    }
    double scale = 1.0;
    bool accepted = false;
    for (int h = 0; h <= kMaxHalvings; ++h) {
      TiltCoefficients trial{a[0] + scale * delta[0], a[1] + scale * delta[1],
                             a[2] + scale * delta[2]};
      Evaluation next = evaluate(log_base, t, w, trial);
      if (next.max_residual < ev.max_residual) {
        a = trial;
        ev = next;
        accepted = true;
        break;
      }
      scale *= 0.5;
    }
    ++iterations;
    if (!accepted) {
      throw ConvergenceError("Newton step halving stalled", ev.max_residual);
    }
  }
  return TiltResult{a, iterations, ev.max_residual};
}

Multipliers to_multipliers(const TiltCoefficients& a, const MomentConstraints& c) {
  const double mu = c.mu();
  const double s = c.sigma();
  return Multipliers{a[0] - a[1] * mu / s + a[2] * mu * mu / (s * s),
                     a[1] / s - 2.0 * a[2] * mu / (s * s), a[2] / (s * s)};
}

}  // namespace detail

Moments density_moments(std::span<const double> density, const Grid& grid) {
  if (density.size() != grid.size()) throw ContractError("density does not match grid");
  std::vector<double> f1(grid.size());
  std::vector<double> f2(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.point(i);
    f1[i] = x * density[i];
    f2[i] = x * x * density[i];
  }
  return Moments{numerics::trapezoid_integrate(density, grid),
                 numerics::trapezoid_integrate(f1, grid), numerics::trapezoid_integrate(f2, grid)};
}

double density_entropy(std::span<const double> density, const Grid& grid) {
  if (density.size() != grid.size()) throw ContractError("density does not match grid");
  std::vector<double> integrand(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double g = density[i];
    if (g < 0.0) throw DomainError("density must be nonnegative");
    // -g ln g for the log-domain entropy, + x g for the change of variables.
    integrand[i] = g > 0.0 ? g * (grid.point(i) - std::log(g)) : 0.0;
  }
  return numerics::trapezoid_integrate(integrand, grid);
}

MaxEntSolution solve_maxent(const MomentConstraints& constraints, const Grid& grid, double tol,
                            int max_iter) {
  check_grid_coverage(constraints, grid);
  const std::vector<double> flat(grid.size(), 0.0);
  const auto result =
      detail::solve_tilt(flat, grid, constraints, {0.0, 0.0, -0.5}, tol, max_iter);

  const auto t = standardized_points(grid, constraints);
  MaxEntSolution sol{grid, tilted_density(flat, t, result.coefficients),
                     detail::to_multipliers(result.coefficients, constraints),
                     Moments{}, 0.0, result.iterations, result.residual, constraints};
  sol.achieved_moments = density_moments(sol.density, grid);
  sol.entropy = solution_entropy(sol);
  return sol;
}

double solution_entropy(const MaxEntSolution& solution) {
  return density_entropy(solution.density, solution.grid);
}

std::vector<double> project_onto_constraints(std::span<const double> density, const Grid& grid,
                                             const MomentConstraints& constraints, double tol,
                                             int max_iter) {
  if (density.size() != grid.size()) throw ContractError("density does not match grid");
  std::vector<double> log_base(density.size());
  for (std::size_t i = 0; i < density.size(); ++i) {
    if (!(density[i] >= 0.0) || !std::isfinite(density[i])) {
      throw DomainError("density must be finite and nonnegative");
    }
    log_base[i] = std::log(density[i]);
  }
  const auto result =
      detail::solve_tilt(log_base, grid, constraints, {0.0, 0.0, 0.0}, tol, max_iter);
  return tilted_density(log_base, standardized_points(grid, constraints), result.coefficients);
}

bool entropy_dominance_check(const MaxEntSolution& solution, double perturbation_scale,
                             int trials, std::uint64_t seed) {
  if (!(perturbation_scale > 0.0 && perturbation_scale <= 0.1)) {
    throw ContractError("perturbation_scale must lie in (0, 0.1]");
  }
  if (trials < 1) throw ContractError("trials must be at least 1");

  const Grid& grid = solution.grid;
  const auto& c = solution.constraints;
  const auto t = standardized_points(grid, c);
  const double optimum = solution_entropy(solution);

  constexpr int kModes = 6;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> amplitude(-1.0, 1.0);
  std::uniform_real_distribution<double> frequency(0.2, 3.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * 3.141592653589793);

  const int max_redraws = 10 * trials;
  int redraws = 0;
  std::vector<double> perturbed(grid.size());
  for (int done = 0; done < trials;) {
    std::array<double, kModes> amp{};
    std::array<double, kModes> freq{};
    std::array<double, kModes> ph{};
    double norm = 0.0;
    for (int k = 0; k < kModes; ++k) {
      amp[k] = amplitude(rng);
      freq[k] = frequency(rng);
      ph[k] = phase(rng);
      norm += std::fabs(amp[k]);
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
      double eta = 0.0;
      for (int k = 0; k < kModes; ++k) eta += amp[k] * std::sin(freq[k] * t[i] + ph[k]);
      perturbed[i] = solution.density[i] * (1.0 + perturbation_scale * eta / norm);
    }

    std::vector<double> corrected;
    bool feasible = true;
    try {
      corrected = project_onto_constraints(perturbed, grid, c);
      feasible = std::all_of(corrected.begin(), corrected.end(),
                             [](double g) { return std::isfinite(g) && g >= 0.0; });
    } catch (const ConvergenceError&) {
      feasible = false;
    }
    if (!feasible) {
      if (++redraws > max_redraws) {
        throw ConvergenceError("too many infeasible perturbation draws",
                               static_cast<double>(redraws));
      }
      continue;
    }
    if (density_entropy(corrected, grid) > optimum + kDominanceSlack) return false;
    ++done;
  }
  return true;
}

}  // namespace fairwage::maxent
