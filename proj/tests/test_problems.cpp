#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "optbench/problems.hpp"
#include "oracles.hpp"

using namespace optbench;

namespace {

// Relative gradient error against central differences.
double fd_relative_error(const Problem& p, const Vector& x) {
  const Vector analytic = p.gradient(x);
  const Vector numeric = finite_diff_gradient(p, x);
  return distance(analytic, numeric) / std::max(1.0, norm(analytic));
}

struct ConstantProblem final : Problem {
  ProblemKind kind() const override { return ProblemKind::Quadratic; }
  const std::string& name() const override { return name_; }
  std::size_t dim() const override { return 3; }
  double value(const Vector&) const override { return 4.25; }
  Vector gradient(const Vector&) const override { return Vector(3, 0.0); }
  std::optional<Vector> optimum() const override { return std::nullopt; }
  std::string name_ = "constant";
};

}  // namespace

TEST_CASE("make_quadratic: prescribed eigenvalue spacing at kappa=50, d=10") {
  const QuadraticProblem p = make_quadratic(50.0, 10, std::uint64_t{42});
  const Vector& lambda = p.eigenvalues();
  REQUIRE(lambda.size() == 10);
  CHECK(lambda.front() == doctest::Approx(1.0));
  CHECK(lambda.back() == doctest::Approx(50.0));
  for (std::size_t i = 1; i < 10; ++i) {
    CHECK(lambda[i] - lambda[i - 1] == doctest::Approx(49.0 / 9.0).epsilon(1e-12));
  }
  CHECK(p.kappa() == doctest::Approx(50.0));
  CHECK(p.lipschitz_constant() == doctest::Approx(50.0));
  CHECK(p.strong_convexity() == doctest::Approx(1.0));
}

TEST_CASE("make_quadratic: kappa=1 reduces to the identity Hessian") {
  const QuadraticProblem p = make_quadratic(1.0, 10, std::uint64_t{42});
  const Matrix& a = p.hessian();
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = 0; j < 10; ++j)
      CHECK(std::abs(a(i, j) - (i == j ? 1.0 : 0.0)) <= 1e-12);
  REQUIRE(p.optimum());
  CHECK(distance(*p.optimum(), p.rhs()) <= 1e-10);
}

TEST_CASE("make_quadratic: gradient vanishes at the optimum") {
  for (std::uint64_t seed : {1u, 7u, 42u}) {
    for (double kappa : {10.0, 50.0, 500.0}) {
      const QuadraticProblem p = make_quadratic(kappa, 10, seed);
      REQUIRE(p.optimum());
      CAPTURE(seed);
      CAPTURE(kappa);
      CHECK(norm(p.gradient(*p.optimum())) <= 1e-8);
    }
  }
}

TEST_CASE("make_quadratic: stored eigenpairs match the assembled matrix") {
  const QuadraticProblem p = make_quadratic(100.0, 10, std::uint64_t{3});
  const Matrix& a = p.hessian();
  const Matrix& q = p.basis();
  for (std::size_t k = 0; k < 10; ++k) {
    Vector qk(10);
    for (std::size_t i = 0; i < 10; ++i) qk[i] = q(i, k);
    const Vector aq = a.apply(qk);
    double res = 0.0;
    for (std::size_t i = 0; i < 10; ++i) {
      const double diff = aq[i] - p.eigenvalues()[k] * qk[i];
      res += diff * diff;
    }
    CAPTURE(k);
    CHECK(std::sqrt(res) <= 1e-8);
  }
}

TEST_CASE("make_quadratic: identical seed gives bit-identical instance") {
  const QuadraticProblem a = make_quadratic(50.0, 10, std::uint64_t{42});
  const QuadraticProblem b = make_quadratic(50.0, 10, std::uint64_t{42});
  CHECK(a.hessian().data() == b.hessian().data());
  CHECK(a.rhs() == b.rhs());
  const QuadraticProblem c = make_quadratic(50.0, 10, std::uint64_t{43});
  CHECK(a.rhs() != c.rhs());
}

TEST_CASE("make_quadratic validates kappa") {
  CHECK_THROWS_AS(make_quadratic(0.5, 10, std::uint64_t{1}), InvalidKappa);
  CHECK_THROWS_AS(make_quadratic(std::nan(""), 10, std::uint64_t{1}), InvalidKappa);
}

TEST_CASE("quadratic value and gradient: direct evaluation") {
  Matrix a(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 2.0;
  const QuadraticProblem p(a, {0.0, 0.0}, Matrix::identity(2), {1.0, 2.0}, 2.0, {0.0, 0.0},
                           "diag12");
  const auto [value, grad] = p.value_grad({1.0, 1.0});
  CHECK(value == doctest::Approx(1.5));
  CHECK(grad[0] == doctest::Approx(1.0));
  CHECK(grad[1] == doctest::Approx(2.0));

  CHECK_THROWS_AS(p.value_grad({1.0, 2.0, 3.0}), DimensionMismatch);
}

TEST_CASE("quadratic gradient agrees with finite differences") {
  const QuadraticProblem p = make_quadratic(50.0, 10, std::uint64_t{42});
  SeededRng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    Vector x(10);
    for (double& xi : x) xi = -3.0 + 6.0 * rng.next_uniform();
    CHECK(fd_relative_error(p, x) <= 1e-6);
  }
}

TEST_CASE("rosenbrock: minimum, reference point, origin") {
  {
    const auto [f, g] = rosenbrock_value_grad({1.0, 1.0});
    CHECK(f == doctest::Approx(0.0));
    CHECK(g[0] == doctest::Approx(0.0));
    CHECK(g[1] == doctest::Approx(0.0));
  }
  {
    const auto [f, g] = rosenbrock_value_grad({-1.2, 1.0});
    CHECK(f == doctest::Approx(24.2).epsilon(1e-12));
    CHECK(g[0] == doctest::Approx(-215.6).epsilon(1e-12));
    CHECK(g[1] == doctest::Approx(-88.0).epsilon(1e-12));
  }
  {
    const auto [f, g] = rosenbrock_value_grad({0.0, 0.0});
    CHECK(f == doctest::Approx(1.0));
    CHECK(g[0] == doctest::Approx(-2.0));
    CHECK(g[1] == doctest::Approx(0.0));
  }
  CHECK_THROWS_AS(rosenbrock_value_grad({1.0}), DimensionMismatch);
}

TEST_CASE("beale: minimum and hand-evaluated point") {
  {
    const auto [f, g] = beale_value_grad({3.0, 0.5});
    CHECK(f == doctest::Approx(0.0));
    CHECK(std::abs(g[0]) <= 1e-12);
    CHECK(std::abs(g[1]) <= 1e-12);
  }
  {
    // Residuals collapse to 1.5, 2.25, 2.625 at (1,1).
    const auto [f, g] = beale_value_grad({1.0, 1.0});
    CHECK(f == doctest::Approx(14.203125).epsilon(1e-14));
    CHECK(g[0] == doctest::Approx(0.0));
    CHECK(g[1] == doctest::Approx(27.75).epsilon(1e-14));
  }
  CHECK_THROWS_AS(beale_value_grad({1.0, 2.0, 3.0}), DimensionMismatch);
}

TEST_CASE("beale gradient agrees with finite differences on [-2,4]^2") {
  const BealeProblem p;
  SeededRng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    Vector x(2);
    for (double& xi : x) xi = -2.0 + 6.0 * rng.next_uniform();
    CHECK(fd_relative_error(p, x) <= 1e-6);
  }
}

TEST_CASE("finite differences track analytic gradients at 100 random points per family") {
  const QuadraticProblem quad = make_quadratic(50.0, 10, std::uint64_t{42});
  const RosenbrockProblem rosen;
  const BealeProblem beale;
  const Problem* problems[] = {&quad, &rosen, &beale};

  SeededRng rng(17);
  for (const Problem* p : problems) {
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      Vector x(p->dim());
      for (double& xi : x) xi = -3.0 + 6.0 * rng.next_uniform();
      worst = std::max(worst, fd_relative_error(*p, x));
    }
    CAPTURE(p->name());
    CHECK(worst <= 1e-5);
  }
}

TEST_CASE("finite differences: reference point and constant objective") {
  const RosenbrockProblem rosen;
  const Vector fd = finite_diff_gradient(rosen, {-1.2, 1.0});
  CHECK(std::abs(fd[0] - (-215.6)) <= 1e-4);
  CHECK(std::abs(fd[1] - (-88.0)) <= 1e-4);

  const ConstantProblem flat;
  const Vector zero = finite_diff_gradient(flat, {0.3, -2.0, 5.0});
  for (double g : zero) CHECK(g == doctest::Approx(0.0));
}

TEST_CASE("non-finite inputs pass through rather than trap") {
  const RosenbrockProblem rosen;
  const double huge = 1e200;
  const auto [f, g] = rosenbrock_value_grad({huge, 0.0});
  CHECK(std::isinf(f));
  CHECK(!all_finite(g));
  CHECK(std::isnan(rosen.value({std::nan(""), 0.0})));
}
