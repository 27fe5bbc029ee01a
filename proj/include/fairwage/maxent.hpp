#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "fairwage/numerics.hpp"

namespace fairwage::maxent {

/// Targets E[ln S] = mu and sd(ln S) = sigma.
class MomentConstraints {
 public:
  /// Throws DomainError unless both are finite and sigma > 0.
  MomentConstraints(double mu, double sigma);

  double mu() const noexcept { return mu_; }
  double sigma() const noexcept { return sigma_; }
  double second_raw_moment() const noexcept { return mu_ * mu_ + sigma_ * sigma_; }

 private:
  double mu_;
  double sigma_;
};

/// Coefficients of g(x) = exp(lambda0 + lambda1 x + lambda2 x^2), x = ln S.
struct Multipliers {
  double lambda0 = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
};

/// Integrals of x^k g(x) for k = 0, 1, 2.
struct Moments {
  double m0 = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;
};

struct MaxEntSolution {
  numerics::Grid grid;
  std::vector<double> density;  ///< g at each grid point (log-salary domain)
  Multipliers multipliers;
  Moments achieved_moments;
  double entropy = 0.0;  ///< salary-domain entropy, nats
  int iterations = 0;
  double residual = 0.0;  ///< max constraint violation in standardized units
  MomentConstraints constraints;  ///< the targets the solve was asked to meet
};

inline constexpr double kDefaultTolerance = 1e-12;
inline constexpr int kDefaultMaxIterations = 50;
inline constexpr std::size_t kDefaultGridPoints = 4001;
inline constexpr double kDefaultHalfWidthSigmas = 8.0;

/// [mu - 8 sigma, mu + 8 sigma] with 4001 points unless overridden.
numerics::Grid default_grid(const MomentConstraints& constraints,
                            std::size_t n_points = kDefaultGridPoints);

/// Maximum-entropy density on `grid` subject to unit mass and the two
/// log-moment constraints.
///
/// The multipliers are found by damped Newton iteration on the moment
/// residuals, carried out in the standardized coordinate
/// t = (x - mu) / sigma so that every residual is O(1). A step that does not
/// reduce the max residual is halved, up to 20 times. Iteration stops once
/// that residual is <= tol.
///
/// Throws TruncationError when the target density at either grid end
/// exceeds 1e-10 of its peak, ConvergenceError when max_iter is exhausted or
/// step halving stalls, ContractError for tol <= 0 or max_iter < 1.
MaxEntSolution solve_maxent(const MomentConstraints& constraints, const numerics::Grid& grid,
                            double tol = kDefaultTolerance,
                            int max_iter = kDefaultMaxIterations);

/// Salary-domain entropy of the solution density:
/// -integral(g ln g dx) + E[x], since f(s) = g(ln s) / s.
double solution_entropy(const MaxEntSolution& solution);

/// Same quantity for an arbitrary nonnegative log-domain density.
double density_entropy(std::span<const double> density, const numerics::Grid& grid);

/// Moments m0, m1, m2 of a log-domain density by trapezoid quadrature.
Moments density_moments(std::span<const double> density, const numerics::Grid& grid);

/// Exponential tilt of `density`: returns density(x) * exp(a0 + a1 t + a2 t^2)
/// with coefficients chosen so the result has unit mass and satisfies
/// `constraints`. Entries of `density` must be finite and >= 0.
/// Throws ConvergenceError when the tilt cannot be solved to `tol`.
std::vector<double> project_onto_constraints(std::span<const double> density,
                                             const numerics::Grid& grid,
                                             const MomentConstraints& constraints,
                                             double tol = kDefaultTolerance,
                                             int max_iter = kDefaultMaxIterations);

/// Draws `trials` seeded smooth perturbations of the solution, projects each
/// back onto the constraint set and returns true iff none has entropy above
/// solution_entropy(solution) + 1e-9. Trials whose projection fails are
/// redrawn; more than 10 * trials redraws throws ConvergenceError.
/// Requires perturbation_scale in (0, 0.1] and trials >= 1 (ContractError).
bool entropy_dominance_check(const MaxEntSolution& solution, double perturbation_scale,
                             int trials, std::uint64_t seed);

namespace detail {

/// Coefficients (a0, a1, a2) of a tilt exp(a0 + a1 t + a2 t^2) in the
/// standardized coordinate t = (x - mu) / sigma.
using TiltCoefficients = std::array<double, 3>;

struct TiltResult {
  TiltCoefficients coefficients;
  int iterations;
  double residual;
};

/// Core damped-Newton solver shared by solve_maxent and the projection.
/// `log_base` holds ln of the base measure at each grid point (all zeros
/// for the plain maximum-entropy problem). Exposed for testing with
/// arbitrary starting points.
TiltResult solve_tilt(std::span<const double> log_base, const numerics::Grid& grid,
                      const MomentConstraints& constraints, TiltCoefficients start, double tol,
                      int max_iter);

/// Converts standardized tilt coefficients into multipliers in x = ln S.
Multipliers to_multipliers(const TiltCoefficients& a, const MomentConstraints& constraints);

}  // namespace detail

}  // namespace fairwage::maxent
