#include "optbench/stability.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace optbench {

std::string to_string(Prediction p) {
  switch (p) {
    case Prediction::Converge: return "Converge";
    case Prediction::Diverge: return "Diverge";
    case Prediction::Marginal: return "Marginal";
  }
  return "Unknown";
}

Prediction classify(double max_rho) {
  if (max_rho < 1.0 - kStabilityMargin) return Prediction::Converge;
  if (max_rho > 1.0 + kStabilityMargin) return Prediction::Diverge;
  return Prediction::Marginal;
}

Matrix mode_matrix(Method method, double lambda_i, double eta, double beta, double alpha) {
  if (!(lambda_i > 0.0)) throw std::invalid_argument("mode_matrix: lambda_i must be > 0");
  const double s = eta * lambda_i;
  switch (method) {
    case Method::Sgd: {
      Matrix m(1, 1);
      m(0, 0) = 1.0 - s;
      return m;
    }
    case Method::Momentum: {
      // x_{t+1} = (1 + beta - s) x_t - beta x_{t-1}
      Matrix m(2, 2);
      m(0, 0) = 1.0 + beta - s;
      m(0, 1) = -beta;
      m(1, 0) = 1.0;
      return m;
    }
    case Method::Nag: {
      // Eliminating v from the look-ahead recurrence gives
      // x_{t+1} = (1+beta)(1-s) x_t - beta(1-s) x_{t-1}.
      Matrix m(2, 2);
      m(0, 0) = (1.0 + beta) * (1.0 - s);
      m(0, 1) = -beta * (1.0 - s);
      m(1, 0) = 1.0;
      return m;
    }
    case Method::HbSge: {
      // State (x_t, x_{t-1}, m_t) with fixed extrapolation alpha. The
      // synthetic gradient on a mode is lambda((1+alpha) x_t - alpha x_{t-1}).
      const double ema = 1.0 - beta;
      Matrix m(3, 3);
      m(0, 0) = 1.0 - eta * ema * lambda_i * (1.0 + alpha);
      m(0, 1) = eta * ema * alpha * lambda_i;
      m(0, 2) = -eta * beta;
      m(1, 0) = 1.0;
      m(2, 0) = ema * lambda_i * (1.0 + alpha);
      m(2, 1) = -ema * alpha * lambda_i;
      m(2, 2) = beta;
      return m;
    }
    case Method::Adam:
      throw UnknownMethod("mode_matrix: Adam has no linear per-mode update");
  }
  throw UnknownMethod("mode_matrix: unknown method");
}

double hbsge_closed_form_eigen(double lambda_i, double eta, double beta, double alpha) {
  return 1.0 - eta * lambda_i * (1.0 + alpha * eta * lambda_i) + beta;
}

double theorem_alpha_bound(double eta, double lipschitz) {
  if (!(eta > 0.0) || !(lipschitz > 0.0))
    throw std::invalid_argument("theorem_alpha_bound: eta and L must be > 0");
  return 2.0 / (eta * lipschitz) - 1.0;
}

StabilityReport predict(const QuadraticProblem& problem, const OptimizerConfig& opt,
                        double alpha_fixed) {
  StabilityReport rep;
  rep.method = method_display(opt);
  if (opt.method == Method::HbSge) {
    char suffix[32];
    std::snprintf(suffix, sizeof suffix, " alpha=%g", alpha_fixed);
    rep.method += suffix;
  }

  const Vector& lambdas = problem.eigenvalues();
  rep.per_mode.reserve(lambdas.size());
  double max_rho = 0.0;
  for (double lambda : lambdas) {
    const double rho =
        small_spectral_radius(mode_matrix(opt.method, lambda, opt.eta, opt.beta, alpha_fixed));
    rep.per_mode.emplace_back(lambda, rho);
    max_rho = std::max(max_rho, rho);
  }
  rep.max_rho = max_rho;
  rep.predicted = classify(max_rho);

  if (opt.method == Method::HbSge) {
    std::vector<double> closed;
    closed.reserve(lambdas.size());
    for (double lambda : lambdas) {
      closed.push_back(hbsge_closed_form_eigen(lambda, opt.eta, opt.beta, alpha_fixed));
    }
    rep.closed_form_hbsge = std::move(closed);
    rep.alpha_bound = theorem_alpha_bound(opt.eta, problem.kappa());
  }
  return rep;
}

}  // namespace optbench
