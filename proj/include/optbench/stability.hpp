#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "optbench/numerics.hpp"
#include "optbench/optimizers.hpp"
#include "optbench/problems.hpp"

namespace optbench {

enum class Prediction { Converge, Diverge, Marginal };
std::string to_string(Prediction p);

/// Outcomes within this distance of spectral radius 1 are reported Marginal
/// rather than called either way.
inline constexpr double kStabilityMargin = 1e-3;

Prediction classify(double max_rho);

struct StabilityReport {
  std::string method;
  std::vector<std::pair<double, double>> per_mode;  // (eigenvalue, spectral radius)
  double max_rho = 0.0;
  Prediction predicted = Prediction::Marginal;
  /// HB-SGE only: the scalar eigenvalue formula 1 - eta*lambda*(1 + alpha*eta*lambda) + beta
  /// evaluated per mode. Reported alongside the exact radii; the two are not
  /// asserted to agree.
  std::optional<std::vector<double>> closed_form_hbsge;
  /// HB-SGE only: the extrapolation bound 2/(eta*L) - 1.
  std::optional<double> alpha_bound;
};

/// One-step update matrix of the optimizer on a single quadratic eigenmode
/// (curvature lambda_i, centered at the optimum). States: SGD (x_t);
/// Momentum/NAG (x_t, x_{t-1}); HB-SGE with fixed alpha (x_t, x_{t-1}, m_t).
/// Adam has no linear per-mode form and raises UnknownMethod.
Matrix mode_matrix(Method method, double lambda_i, double eta, double beta, double alpha);

/// The scalar closed-form eigenvalue expression, evaluated verbatim.
double hbsge_closed_form_eigen(double lambda_i, double eta, double beta, double alpha);

/// Extrapolation coefficient bound 2/(eta*L) - 1 below which the closed-form
/// mode eigenvalues stay inside the unit circle.
double theorem_alpha_bound(double eta, double lipschitz);

/// Per-mode spectral analysis for the optimizer on the quadratic's
/// prescribed spectrum. HB-SGE is analyzed at the given fixed extrapolation
/// coefficient (the adaptive schedule decays toward zero, so alpha_max and 0
/// are the two endpoints of interest); alpha_fixed is ignored for the other
/// methods.
StabilityReport predict(const QuadraticProblem& problem, const OptimizerConfig& opt,
                        double alpha_fixed);

}  // namespace optbench
