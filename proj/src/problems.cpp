#include "optbench/problems.hpp"

#include <cmath>
#include <cstdio>

namespace optbench {

namespace {

void require_dim(const Vector& x, std::size_t d, const char* where) {
  if (x.size() != d) {
    throw DimensionMismatch(std::string(where) + ": expected dimension " + std::to_string(d) +
                            ", got " + std::to_string(x.size()));
  }
}

}  // namespace

std::pair<double, Vector> rosenbrock_value_grad(const Vector& v) {
  require_dim(v, 2, "rosenbrock_value_grad");
  const double x = v[0], y = v[1];
  const double a = 1.0 - x;
  const double b = y - x * x;
  const double value = a * a + 100.0 * b * b;
  Vector grad{-2.0 * a - 400.0 * x * b, 200.0 * b};
  return {value, std::move(grad)};
}

std::pair<double, Vector> beale_value_grad(const Vector& v) {
  require_dim(v, 2, "beale_value_grad");
  const double x = v[0], y = v[1];
  const double r1 = 1.5 - x + x * y;
  const double r2 = 2.25 - x + x * y * y;
  const double r3 = 2.625 - x + x * y * y * y;
  const double value = r1 * r1 + r2 * r2 + r3 * r3;
  const double gx = 2.0 * (r1 * (y - 1.0) + r2 * (y * y - 1.0) + r3 * (y * y * y - 1.0));
  const double gy = 2.0 * (r1 * x + r2 * 2.0 * x * y + r3 * 3.0 * x * y * y);
  return {value, Vector{gx, gy}};
}

QuadraticProblem::QuadraticProblem(Matrix a, Vector b, Matrix q, Vector eigenvalues,
                                   double kappa, Vector optimum, std::string name)
    : a_(std::move(a)),
      b_(std::move(b)),
      q_(std::move(q)),
      eigenvalues_(std::move(eigenvalues)),
      kappa_(kappa),
      optimum_(std::move(optimum)),
      name_(std::move(name)) {}

Vector QuadraticProblem::gradient(const Vector& x) const {
  require_dim(x, dim(), "QuadraticProblem::gradient");
  Vector g = a_.apply(x);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] -= b_[i];
  return g;
}

std::pair<double, Vector> QuadraticProblem::value_grad(const Vector& x) const {
  require_dim(x, dim(), "QuadraticProblem::value_grad");
  const Vector ax = a_.apply(x);
  double value = 0.0;
  Vector grad(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    value += 0.5 * x[i] * ax[i] - b_[i] * x[i];
    grad[i] = ax[i] - b_[i];
  }
  return {value, std::move(grad)};
}

QuadraticProblem make_quadratic(double kappa, std::size_t d, SeededRng& rng) {
  if (!(kappa >= 1.0)) throw InvalidKappa("make_quadratic: kappa must be >= 1");
  if (d < 2) throw std::invalid_argument("make_quadratic: d must be >= 2");

  const Matrix q = random_orthogonal(rng, d);

  Vector lambda(d);
  for (std::size_t i = 0; i < d; ++i) {
    lambda[i] = 1.0 + static_cast<double>(i) * (kappa - 1.0) / static_cast<double>(d - 1);
  }

  // A = Q diag(lambda) Q', then symmetrized so A == A' holds exactly as stored.
  Matrix a(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < d; ++k) s += q(i, k) * lambda[k] * q(j, k);
      a(i, j) = s;
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      const double sym = 0.5 * (a(i, j) + a(j, i));
      a(i, j) = sym;
      a(j, i) = sym;
    }
  }

  Vector b = standard_normal(rng, d);
  Vector optimum = solve_spd(a, b);

  char name[48];
  std::snprintf(name, sizeof name, "Quadratic(kappa=%g)", kappa);
  return QuadraticProblem(std::move(a), std::move(b), q, std::move(lambda), kappa,
                          std::move(optimum), name);
}

QuadraticProblem make_quadratic(double kappa, std::size_t d, std::uint64_t seed) {
  SeededRng rng(seed);
  return make_quadratic(kappa, d, rng);
}

Vector finite_diff_gradient(const Problem& p, const Vector& x, double h) {
  Vector grad(x.size());
  Vector probe = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double step = h * std::max(1.0, std::abs(x[i]));
    probe[i] = x[i] + step;
    const double fp = p.value(probe);
    probe[i] = x[i] - step;
    const double fm = p.value(probe);
    probe[i] = x[i];
    grad[i] = (fp - fm) / (2.0 * step);
  }
  return grad;
}

}  // namespace optbench
