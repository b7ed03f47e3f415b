#pragma once

#include <optional>
#include <string>
#include <utility>

#include "optbench/numerics.hpp"

namespace optbench {

struct InvalidKappa : std::invalid_argument {
  explicit InvalidKappa(const std::string& what) : std::invalid_argument(what) {}
};

enum class ProblemKind { Quadratic, Rosenbrock, Beale };

/// Objective contract shared by the optimizers and the run loop. Values and
/// gradients are returned as-is, non-finite results included; divergence
/// detection downstream relies on observing them.
class Problem {
 public:
  virtual ~Problem() = default;
  virtual ProblemKind kind() const = 0;
  virtual const std::string& name() const = 0;
  virtual std::size_t dim() const = 0;
  virtual double value(const Vector& x) const = 0;
  virtual Vector gradient(const Vector& x) const = 0;
  virtual std::optional<Vector> optimum() const = 0;
  virtual std::optional<double> lipschitz_constant() const { return std::nullopt; }
  virtual std::optional<double> strong_convexity() const { return std::nullopt; }
};

/// f(x,y) = (1-x)^2 + 100(y-x^2)^2, minimum at (1,1).
std::pair<double, Vector> rosenbrock_value_grad(const Vector& x);

/// f(x,y) = (1.5-x+xy)^2 + (2.25-x+xy^2)^2 + (2.625-x+xy^3)^2,
/// minimum at (3.0, 0.5).
std::pair<double, Vector> beale_value_grad(const Vector& x);

class RosenbrockProblem final : public Problem {
 public:
  ProblemKind kind() const override { return ProblemKind::Rosenbrock; }
  const std::string& name() const override { return name_; }
  std::size_t dim() const override { return 2; }
  double value(const Vector& x) const override { return rosenbrock_value_grad(x).first; }
  Vector gradient(const Vector& x) const override { return rosenbrock_value_grad(x).second; }
  std::optional<Vector> optimum() const override { return Vector{1.0, 1.0}; }

 private:
  std::string name_ = "Rosenbrock";
};

class BealeProblem final : public Problem {
 public:
  ProblemKind kind() const override { return ProblemKind::Beale; }
  const std::string& name() const override { return name_; }
  std::size_t dim() const override { return 2; }
  double value(const Vector& x) const override { return beale_value_grad(x).first; }
  Vector gradient(const Vector& x) const override { return beale_value_grad(x).second; }
  std::optional<Vector> optimum() const override { return Vector{3.0, 0.5}; }

 private:
  std::string name_ = "Beale";
};

/// f(x) = 1/2 x'Ax - b'x with A = Q diag(lambda) Q', eigenvalues uniformly
/// spaced from 1 to kappa, so L = kappa and mu = 1 by construction.
class QuadraticProblem final : public Problem {
 public:
  QuadraticProblem(Matrix a, Vector b, Matrix q, Vector eigenvalues, double kappa,
                   Vector optimum, std::string name);

  ProblemKind kind() const override { return ProblemKind::Quadratic; }
  const std::string& name() const override { return name_; }
  std::size_t dim() const override { return b_.size(); }
  double value(const Vector& x) const override { return value_grad(x).first; }
  Vector gradient(const Vector& x) const override;
  std::optional<Vector> optimum() const override { return optimum_; }
  std::optional<double> lipschitz_constant() const override { return kappa_; }
  std::optional<double> strong_convexity() const override { return 1.0; }

  std::pair<double, Vector> value_grad(const Vector& x) const;

  const Matrix& hessian() const { return a_; }
  const Vector& rhs() const { return b_; }
  /// Columns are the eigenvectors used during construction.
  const Matrix& basis() const { return q_; }
  const Vector& eigenvalues() const { return eigenvalues_; }
  double kappa() const { return kappa_; }

 private:
  Matrix a_;
  Vector b_;
  Matrix q_;
  Vector eigenvalues_;
  double kappa_ = 1.0;
  Vector optimum_;
  std::string name_;
};

/// Builds the quadratic instance from the given stream. Draw order is fixed:
/// the Gaussian matrix behind Q first, then b; callers that need a starting
/// point continue drawing from the same stream.
QuadraticProblem make_quadratic(double kappa, std::size_t d, SeededRng& rng);
QuadraticProblem make_quadratic(double kappa, std::size_t d, std::uint64_t seed);

/// Central differences with a per-coordinate step h * max(1, |x_i|).
Vector finite_diff_gradient(const Problem& p, const Vector& x, double h = 1e-6);

}  // namespace optbench
