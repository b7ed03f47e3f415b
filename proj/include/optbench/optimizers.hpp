#pragma once

#include <optional>
#include <string>

#include "optbench/numerics.hpp"
#include "optbench/problems.hpp"

namespace optbench {

struct UnknownMethod : std::invalid_argument {
  explicit UnknownMethod(const std::string& what) : std::invalid_argument(what) {}
};

enum class Method { Sgd, Momentum, Nag, Adam, HbSge };

struct OptimizerConfig {
  Method method = Method::Sgd;
  double eta = 0.1;        // learning rate
  double beta = 0.9;       // momentum
  double alpha_max = 1.2;  // HB-SGE: max extrapolation coefficient
  double tau = 1000.0;     // HB-SGE: extrapolation decay time constant
  /// When set, HB-SGE uses this extrapolation coefficient on every step
  /// instead of the adaptive schedule. Used by the stability analysis and
  /// the fixed-coefficient convergence checks.
  std::optional<double> fixed_alpha;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  std::string display;  // e.g. "HB-SGE-Safe(beta=0.95)"; derived from method when empty
  std::string slug;     // e.g. "hbsge_safe"; derived from method when empty
};

/// Throws std::invalid_argument when a hyperparameter is out of range.
void validate(const OptimizerConfig& cfg);

std::string method_display(const OptimizerConfig& cfg);
std::string method_slug(const OptimizerConfig& cfg);

struct OptimizerState {
  std::size_t t = 0;            // completed steps
  Vector momentum;              // v (Momentum/NAG) or m (HB-SGE); zero-initialized
  Vector prev_gradient;         // HB-SGE: g_{t-1}, initialized to grad f(x0)
  double prev_grad_norm = 0.0;  // HB-SGE: ||g_{t-1}||
  Vector adam_m;
  Vector adam_v;
  std::optional<double> last_alpha;  // extrapolation coefficient used by the latest HB-SGE step
};

/// Zero buffers; HB-SGE additionally seeds the gradient history with
/// grad f(x0) so the first step sees a zero gradient difference.
OptimizerState init_state(const OptimizerConfig& cfg, const Problem& problem, const Vector& x0);

/// Extrapolation schedule: alpha_max * exp(-t/tau), halved when the gradient
/// norm grew. Equal norms count as non-increasing.
double adaptive_alpha(std::size_t t, double grad_norm, double prev_grad_norm,
                      double alpha_max, double tau);

/// g + alpha * (g - g_prev): first-order prediction of the next gradient.
Vector synthetic_gradient(const Vector& g, const Vector& g_prev, double alpha);

/// One optimizer step: returns x_{t+1} and mutates the state exactly once.
/// Each method performs exactly one gradient evaluation (NAG's is at the
/// look-ahead point, which is why the problem is passed rather than a
/// precomputed gradient). Non-finite inputs propagate to the output.
Vector step(const OptimizerConfig& cfg, OptimizerState& state, const Vector& x,
            const Problem& problem);

}  // namespace optbench
