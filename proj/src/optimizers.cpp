#include "optbench/optimizers.hpp"

#include <cmath>
#include <cstdio>

namespace optbench {

void validate(const OptimizerConfig& cfg) {
  if (!(cfg.eta > 0.0)) throw std::invalid_argument("optimizer config: eta must be > 0");
  if (!(cfg.beta >= 0.0 && cfg.beta < 1.0))
    throw std::invalid_argument("optimizer config: beta must be in [0, 1)");
  if (!(cfg.alpha_max >= 0.0))
    throw std::invalid_argument("optimizer config: alpha_max must be >= 0");
  if (!(cfg.tau > 0.0)) throw std::invalid_argument("optimizer config: tau must be > 0");
}

namespace {

std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

std::string method_display(const OptimizerConfig& cfg) {
  if (!cfg.display.empty()) return cfg.display;
  switch (cfg.method) {
    case Method::Sgd: return "SGD";
    case Method::Momentum: return "Momentum(beta=" + fmt_g(cfg.beta) + ")";
    case Method::Nag: return "NAG(beta=" + fmt_g(cfg.beta) + ")";
    case Method::Adam: return "Adam";
    case Method::HbSge: return "HB-SGE(beta=" + fmt_g(cfg.beta) + ")";
  }
  throw UnknownMethod("method_display: unknown method");
}

std::string method_slug(const OptimizerConfig& cfg) {
  if (!cfg.slug.empty()) return cfg.slug;
  switch (cfg.method) {
    case Method::Sgd: return "sgd";
    case Method::Momentum: return "momentum";
    case Method::Nag: return "nag";
    case Method::Adam: return "adam";
    case Method::HbSge: return "hbsge";
  }
  throw UnknownMethod("method_slug: unknown method");
}

OptimizerState init_state(const OptimizerConfig& cfg, const Problem& problem, const Vector& x0) {
  if (x0.size() != problem.dim())
    throw DimensionMismatch("init_state: x0 does not match problem dimension");
  OptimizerState st;
  st.momentum.assign(problem.dim(), 0.0);
  if (cfg.method == Method::Adam) {
    st.adam_m.assign(problem.dim(), 0.0);
    st.adam_v.assign(problem.dim(), 0.0);
  }
  if (cfg.method == Method::HbSge) {
    st.prev_gradient = problem.gradient(x0);
    st.prev_grad_norm = norm(st.prev_gradient);
  }
  return st;
}

double adaptive_alpha(std::size_t t, double grad_norm, double prev_grad_norm,
                      double alpha_max, double tau) {
  const double decayed = alpha_max * std::exp(-static_cast<double>(t) / tau);
  return grad_norm <= prev_grad_norm ? decayed : 0.5 * decayed;
}

Vector synthetic_gradient(const Vector& g, const Vector& g_prev, double alpha) {
  if (g.size() != g_prev.size())
    throw DimensionMismatch("synthetic_gradient: size mismatch");
  Vector out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = g[i] + alpha * (g[i] - g_prev[i]);
  return out;
}

Vector step(const OptimizerConfig& cfg, OptimizerState& st, const Vector& x,
            const Problem& problem) {
  const std::size_t d = problem.dim();
  if (x.size() != d) throw DimensionMismatch("step: x does not match problem dimension");
  if (st.momentum.size() != d) throw DimensionMismatch("step: state does not match problem dimension");

  Vector next(d);
  switch (cfg.method) {
    case Method::Sgd: {
      const Vector g = problem.gradient(x);
      for (std::size_t i = 0; i < d; ++i) next[i] = x[i] - cfg.eta * g[i];
      break;
    }
    case Method::Momentum: {
      // v <- beta v + g(x); raw accumulation, no (1-beta) scaling.
      const Vector g = problem.gradient(x);
      for (std::size_t i = 0; i < d; ++i) {
        st.momentum[i] = cfg.beta * st.momentum[i] + g[i];
        next[i] = x[i] - cfg.eta * st.momentum[i];
      }
      break;
    }
    case Method::Nag: {
      Vector look(d);
      for (std::size_t i = 0; i < d; ++i) look[i] = x[i] - cfg.eta * cfg.beta * st.momentum[i];
      const Vector g = problem.gradient(look);
      for (std::size_t i = 0; i < d; ++i) {
        st.momentum[i] = cfg.beta * st.momentum[i] + g[i];
        next[i] = x[i] - cfg.eta * st.momentum[i];
      }
      break;
    }
    case Method::Adam: {
      const Vector g = problem.gradient(x);
      const double b1 = cfg.adam_beta1;
      const double b2 = cfg.adam_beta2;
      const double c1 = 1.0 - std::pow(b1, static_cast<double>(st.t + 1));
      const double c2 = 1.0 - std::pow(b2, static_cast<double>(st.t + 1));
      for (std::size_t i = 0; i < d; ++i) {
        st.adam_m[i] = b1 * st.adam_m[i] + (1.0 - b1) * g[i];
        st.adam_v[i] = b2 * st.adam_v[i] + (1.0 - b2) * g[i] * g[i];
        const double m_hat = st.adam_m[i] / c1;
        const double v_hat = st.adam_v[i] / c2;
        next[i] = x[i] - cfg.eta * m_hat / (std::sqrt(v_hat) + cfg.adam_eps);
      }
      break;
    }
    case Method::HbSge: {
      Vector g = problem.gradient(x);
      const double grad_norm = norm(g);
      const double alpha =
          cfg.fixed_alpha ? *cfg.fixed_alpha
                          : adaptive_alpha(st.t, grad_norm, st.prev_grad_norm, cfg.alpha_max,
                                           cfg.tau);
      const Vector synth = synthetic_gradient(g, st.prev_gradient, alpha);
      // m <- beta m + (1-beta) g~; exponential moving average, unlike the
      // classical momentum baseline above.
      for (std::size_t i = 0; i < d; ++i) {
        st.momentum[i] = cfg.beta * st.momentum[i] + (1.0 - cfg.beta) * synth[i];
        next[i] = x[i] - cfg.eta * st.momentum[i];
      }
      st.prev_gradient = std::move(g);
      st.prev_grad_norm = grad_norm;
      st.last_alpha = alpha;
      break;
    }
  }
  ++st.t;
  return next;
}

}  // namespace optbench
