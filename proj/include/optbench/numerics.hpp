#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace optbench {

using Vector = std::vector<double>;

struct DimensionMismatch : std::invalid_argument {
  explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct NotPositiveDefinite : std::runtime_error {
  explicit NotPositiveDefinite(const std::string& what) : std::runtime_error(what) {}
};

struct UnsupportedSize : std::invalid_argument {
  explicit UnsupportedSize(const std::string& what) : std::invalid_argument(what) {}
};

double dot(const Vector& a, const Vector& b);
double norm(const Vector& v);
double distance(const Vector& a, const Vector& b);
bool all_finite(const Vector& v);

/// Row-major dense matrix. Just enough linear algebra for this project; no
/// external numeric dependencies.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double value = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, value) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector apply(const Vector& x) const;  // A x
  Matrix transposed() const;
  Matrix operator*(const Matrix& rhs) const;

  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// splitmix64 counter generator. Identical seeds give bit-identical streams
/// on every platform, which is what makes instances and runs replayable.
struct SeededRng {
  explicit SeededRng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next_u64();
  double next_uniform();  // uniform in (0, 1]
  /// One N(0,1) draw via Box-Muller (cosine branch). Always consumes exactly
  /// two u64 draws so the stream position is independent of the values seen.
  double next_normal();

  std::uint64_t state;
};

/// Mixes (seed, index) into an independent stream seed. Used to give every
/// suite cell its own replayable stream.
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t index);

/// n i.i.d. standard-normal draws.
Vector standard_normal(SeededRng& rng, std::size_t n);

/// Random orthogonal d x d matrix: Householder QR of a standard Gaussian
/// matrix, with the R diagonal normalized positive so Q is unique per seed.
Matrix random_orthogonal(SeededRng& rng, std::size_t d);

/// Solves A x = b for symmetric positive definite A by Cholesky
/// factorization. Throws NotPositiveDefinite when a pivot is <= 0.
Vector solve_spd(const Matrix& a, const Vector& b);

/// Largest eigenvalue modulus of a 1x1, 2x2 or 3x3 matrix via closed-form
/// characteristic-polynomial roots. Complex pairs are handled exactly.
/// Throws UnsupportedSize for anything bigger.
double small_spectral_radius(const Matrix& m);

}  // namespace optbench
