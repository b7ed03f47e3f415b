#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "optbench/harness.hpp"
#include "optbench/optimizers.hpp"
#include "oracles.hpp"

using namespace optbench;

namespace {

OptimizerConfig hbsge_config(double eta, double beta, double alpha_max = 1.2) {
  OptimizerConfig cfg;
  cfg.method = Method::HbSge;
  cfg.eta = eta;
  cfg.beta = beta;
  cfg.alpha_max = alpha_max;
  return cfg;
}

}  // namespace

TEST_CASE("config validation") {
  OptimizerConfig cfg;
  cfg.eta = 0.0;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg.eta = 0.1;
  cfg.beta = 1.0;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg.beta = 0.9;
  cfg.alpha_max = -0.1;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg.alpha_max = 1.2;
  cfg.tau = 0.0;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg.tau = 1000.0;
  CHECK_NOTHROW(validate(cfg));
}

TEST_CASE("adaptive_alpha: schedule values") {
  CHECK(adaptive_alpha(0, 1.0, 1.0, 1.2, 1000.0) == doctest::Approx(1.2));   // tie: full value
  CHECK(adaptive_alpha(0, 2.0, 1.0, 1.2, 1000.0) == doctest::Approx(0.6));   // grew: halved
  CHECK(adaptive_alpha(1000, 0.5, 1.0, 1.2, 1000.0) ==
        doctest::Approx(1.2 * std::exp(-1.0)).epsilon(1e-12));  // ~0.441455
}

TEST_CASE("adaptive_alpha: monotone decay, cap, exact halving") {
  double prev = adaptive_alpha(0, 1.0, 1.0, 1.2, 1000.0);
  CHECK(prev <= 1.2);
  for (std::size_t t = 1; t <= 5000; t += 97) {
    const double cur = adaptive_alpha(t, 1.0, 1.0, 1.2, 1000.0);
    CHECK(cur < prev);
    CHECK(cur <= 1.2);
    CHECK(adaptive_alpha(t, 3.0, 1.0, 1.2, 1000.0) == 0.5 * cur);
    prev = cur;
  }
}

TEST_CASE("synthetic_gradient: extrapolation formula") {
  CHECK(synthetic_gradient({1.0, 0.0}, {0.0, 0.0}, 1.2)[0] == doctest::Approx(2.2));
  CHECK(synthetic_gradient({1.0, 0.0}, {0.0, 0.0}, 1.2)[1] == doctest::Approx(0.0));

  const Vector g{0.3, -0.7};
  const Vector same = synthetic_gradient(g, g, 0.8);
  CHECK(same == g);
  const Vector off = synthetic_gradient(g, {5.0, 5.0}, 0.0);
  CHECK(off[0] == g[0]);
  CHECK(off[1] == g[1]);

  CHECK_THROWS_AS(synthetic_gradient({1.0}, {1.0, 2.0}, 1.0), DimensionMismatch);
}

TEST_CASE("step: hand-simulated first steps on f(x) = x^2/2") {
  const QuadraticProblem p = test_oracles::one_d_quadratic(1.0);
  const Vector x0{1.0};

  SUBCASE("SGD") {
    OptimizerConfig cfg;
    cfg.method = Method::Sgd;
    cfg.eta = 0.1;
    OptimizerState st = init_state(cfg, p, x0);
    const Vector x1 = step(cfg, st, x0, p);
    CHECK(x1[0] == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(st.t == 1);
  }

  SUBCASE("NAG with zero initial velocity") {
    OptimizerConfig cfg;
    cfg.method = Method::Nag;
    cfg.eta = 0.1;
    cfg.beta = 0.9;
    OptimizerState st = init_state(cfg, p, x0);
    const Vector x1 = step(cfg, st, x0, p);
    CHECK(st.momentum[0] == doctest::Approx(1.0));  // look-ahead is x0 itself
    CHECK(x1[0] == doctest::Approx(0.9).epsilon(1e-15));
  }

  SUBCASE("Momentum") {
    OptimizerConfig cfg;
    cfg.method = Method::Momentum;
    cfg.eta = 0.1;
    cfg.beta = 0.9;
    OptimizerState st = init_state(cfg, p, x0);
    const Vector x1 = step(cfg, st, x0, p);
    CHECK(x1[0] == doctest::Approx(0.9).epsilon(1e-15));
    const Vector x2 = step(cfg, st, x1, p);
    // v2 = 0.9*1 + 0.9 = 1.8, x2 = 0.9 - 0.18
    CHECK(x2[0] == doctest::Approx(0.72).epsilon(1e-15));
  }

  SUBCASE("Adam first step is a signed unit step scaled by eta") {
    OptimizerConfig cfg;
    cfg.method = Method::Adam;
    cfg.eta = 0.1;
    OptimizerState st = init_state(cfg, p, x0);
    const Vector x1 = step(cfg, st, x0, p);
    CHECK(std::abs(x1[0] - 0.9) <= 1e-8);
  }

  SUBCASE("HB-SGE cold start: zero gradient difference, EMA-scaled step") {
    OptimizerConfig cfg = hbsge_config(0.1, 0.9);
    OptimizerState st = init_state(cfg, p, x0);
    CHECK(st.prev_gradient[0] == doctest::Approx(1.0));
    CHECK(st.prev_grad_norm == doctest::Approx(1.0));
    const Vector x1 = step(cfg, st, x0, p);
    // m1 = 0.1 * g = 0.1; x1 = 1 - 0.1*0.1
    CHECK(x1[0] == doctest::Approx(0.99).epsilon(1e-15));
    REQUIRE(st.last_alpha.has_value());
    CHECK(*st.last_alpha == doctest::Approx(1.2));  // tie goes to the non-increasing branch
    CHECK(st.prev_grad_norm == doctest::Approx(1.0));
  }
}

TEST_CASE("step is deterministic given identical inputs") {
  const QuadraticProblem p = make_quadratic(50.0, 10, std::uint64_t{5});
  SeededRng rng(8);
  Vector x0 = standard_normal(rng, 10);

  OptimizerConfig cfg = hbsge_config(0.05, 0.9);
  OptimizerState a = init_state(cfg, p, x0);
  OptimizerState b = init_state(cfg, p, x0);
  for (int t = 0; t < 10; ++t) {
    const Vector xa = step(cfg, a, x0, p);
    const Vector xb = step(cfg, b, x0, p);
    CHECK(xa == xb);
    CHECK(a.momentum == b.momentum);
    CHECK(a.prev_gradient == b.prev_gradient);
    CHECK(a.t == b.t);
    x0 = xa;
  }
}

TEST_CASE("non-finite iterates propagate instead of throwing") {
  const QuadraticProblem p = test_oracles::one_d_quadratic(2.0);
  OptimizerConfig cfg = hbsge_config(0.1, 0.9);
  Vector x{std::numeric_limits<double>::infinity()};
  OptimizerState st = init_state(cfg, p, {1.0});
  const Vector next = step(cfg, st, x, p);
  CHECK(!all_finite(next));
}

TEST_CASE("reduction: HB-SGE with alpha_max = 0 equals the EMA-momentum recurrence") {
  const QuadraticProblem quad = make_quadratic(50.0, 10, std::uint64_t{7});
  const RosenbrockProblem rosen;
  const BealeProblem beale;

  const std::pair<const Problem*, double> cases[] = {
      {&quad, 0.05}, {&rosen, 0.005}, {&beale, 0.01}};

  for (const auto& [problem, eta] : cases) {
    SeededRng rng(13);
    Vector x0 = initial_point(*problem, rng);
    const double beta = 0.9;
    const int steps = 100;

    const auto reference = test_oracles::ema_momentum_trajectory(*problem, x0, eta, beta, steps);

    OptimizerConfig cfg = hbsge_config(eta, beta, /*alpha_max=*/0.0);
    OptimizerState st = init_state(cfg, *problem, x0);
    Vector x = x0;
    CAPTURE(problem->name());
    for (int t = 1; t <= steps; ++t) {
      x = step(cfg, st, x, *problem);
      REQUIRE(all_finite(x));
      for (std::size_t i = 0; i < x.size(); ++i) {
        CAPTURE(t);
        REQUIRE(x[i] == reference[static_cast<std::size_t>(t)][i]);  // bit-exact
      }
    }
  }
}

TEST_CASE("NAG matches the two-term recurrence oracle on a quadratic") {
  const QuadraticProblem p = make_quadratic(10.0, 10, std::uint64_t{3});
  SeededRng rng(21);
  const Vector x0 = initial_point(p, rng);
  const double eta = 0.1, beta = 0.9;

  OptimizerConfig cfg;
  cfg.method = Method::Nag;
  cfg.eta = eta;
  cfg.beta = beta;
  OptimizerState st = init_state(cfg, p, x0);

  // x_{t+1} = x_t - eta (A x_t - b) + beta (I - eta A)(x_t - x_{t-1}), with
  // x_1 = x_0 - eta (A x_0 - b) because v_0 = 0.
  const Matrix& a = p.hessian();
  const Vector& b = p.rhs();
  Vector prev = x0;
  Vector cur(10);
  {
    const Vector g = a.apply(x0);
    for (std::size_t i = 0; i < 10; ++i) cur[i] = x0[i] - eta * (g[i] - b[i]);
  }
  Vector x = step(cfg, st, x0, p);
  for (std::size_t i = 0; i < 10; ++i) CHECK(std::abs(x[i] - cur[i]) <= 1e-12);

  for (int t = 2; t <= 20; ++t) {
    Vector diff(10);
    for (std::size_t i = 0; i < 10; ++i) diff[i] = cur[i] - prev[i];
    const Vector g = a.apply(cur);
    const Vector a_diff = a.apply(diff);
    Vector next(10);
    for (std::size_t i = 0; i < 10; ++i) {
      next[i] = cur[i] - eta * (g[i] - b[i]) + beta * (diff[i] - eta * a_diff[i]);
    }
    x = step(cfg, st, x, p);
    CAPTURE(t);
    for (std::size_t i = 0; i < 10; ++i) {
      CHECK(std::abs(x[i] - next[i]) <= 1e-12 * std::max(1.0, std::abs(next[i])));
    }
    prev = cur;
    cur = next;
  }
}

TEST_CASE("fixed-extrapolation convergence stays within the iteration bound") {
  // eta = 1/(L(1+alpha)), beta = 0.9, alpha pinned to 0.5; iterations to
  // squared distance <= eps must not exceed (2/(eta*mu*(1-beta))) ln(d0^2/eps).
  SeededRng meta(314);
  int checked = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const double kappa = 1.0 + 19.0 * meta.next_uniform();
    SeededRng rng(derive_stream_seed(1000 + trial, 0));
    const QuadraticProblem p = make_quadratic(kappa, 10, rng);
    const Vector x0 = initial_point(p, rng);
    const Vector star = *p.optimum();

    const double alpha = 0.5;
    const double eta = 1.0 / (kappa * (1.0 + alpha));
    const double beta = 0.9;
    const double eps = 1e-6;

    const double d0_sq = std::pow(distance(x0, star), 2);
    const double bound = 2.0 / (eta * 1.0 * (1.0 - beta)) * std::log(d0_sq / eps);

    OptimizerConfig cfg = hbsge_config(eta, beta);
    cfg.fixed_alpha = alpha;
    OptimizerState st = init_state(cfg, p, x0);
    Vector x = x0;
    const std::size_t cap = static_cast<std::size_t>(bound) + 2;
    std::size_t observed = cap;
    for (std::size_t t = 1; t <= cap; ++t) {
      x = step(cfg, st, x, p);
      const double d = distance(x, star);
      if (d * d <= eps) {
        observed = t;
        break;
      }
    }
    CAPTURE(trial);
    CAPTURE(kappa);
    CHECK(static_cast<double>(observed) <= bound);
    ++checked;
  }
  CHECK(checked == 50);
}
