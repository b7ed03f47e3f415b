#include "optbench/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

namespace optbench {

double dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vector& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double distance(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("distance: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

bool all_finite(const Vector& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Vector Matrix::apply(const Vector& x) const {
  if (x.size() != cols_) throw DimensionMismatch("Matrix::apply: size mismatch");
  Vector y(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw DimensionMismatch("Matrix::operator*: size mismatch");
  Matrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const double a = (*this)(i, k);
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

std::uint64_t SeededRng::next_u64() {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SeededRng::next_uniform() {
  // 53 random bits; +1 keeps the value strictly positive so log() is safe.
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double SeededRng::next_normal() {
  const double u1 = next_uniform();
  const double u2 = next_uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Vector standard_normal(SeededRng& rng, std::size_t n) {
  Vector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = rng.next_normal();
  return v;
}

namespace {

// Householder QR of a (square), accumulating the explicit Q. Returns nothing
// when an exact zero pivot shows up, in which case the caller redraws.
std::optional<Matrix> orthogonalize(Matrix a) {
  const std::size_t d = a.rows();
  std::vector<Vector> reflectors(d);
  std::vector<double> betas(d, 0.0);
  Vector r_diag(d, 0.0);

  for (std::size_t k = 0; k < d; ++k) {
    double sigma = 0.0;
    for (std::size_t i = k; i < d; ++i) sigma += a(i, k) * a(i, k);
    if (sigma == 0.0) return std::nullopt;

    const double norm_x = std::sqrt(sigma);
    const double alpha = a(k, k) > 0.0 ? -norm_x : norm_x;

    Vector v(d - k);
    v[0] = a(k, k) - alpha;
    for (std::size_t i = k + 1; i < d; ++i) v[i - k] = a(i, k);
    const double vtv = dot(v, v);
    const double beta = vtv == 0.0 ? 0.0 : 2.0 / vtv;

    for (std::size_t j = k; j < d; ++j) {
      double s = 0.0;
      for (std::size_t i = k; i < d; ++i) s += v[i - k] * a(i, j);
      s *= beta;
      for (std::size_t i = k; i < d; ++i) a(i, j) -= s * v[i - k];
    }
    a(k, k) = alpha;  // exact pivot; the reflection maps the column onto alpha*e1

    reflectors[k] = std::move(v);
    betas[k] = beta;
    r_diag[k] = alpha;
  }

  // Q = H_0 H_1 ... H_{d-1}, built by applying reflectors to I in reverse.
  Matrix q = Matrix::identity(d);
  for (std::size_t kk = d; kk-- > 0;) {
    const Vector& v = reflectors[kk];
    const double beta = betas[kk];
    if (beta == 0.0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      double s = 0.0;
      for (std::size_t i = kk; i < d; ++i) s += v[i - kk] * q(i, j);
      s *= beta;
      for (std::size_t i = kk; i < d; ++i) q(i, j) -= s * v[i - kk];
    }
  }

  // Flip column signs so the implied R has a positive diagonal; this pins Q
  // uniquely for a given input matrix.
  for (std::size_t k = 0; k < d; ++k) {
    if (r_diag[k] < 0.0) {
      for (std::size_t i = 0; i < d; ++i) q(i, k) = -q(i, k);
    }
  }
  return q;
}

}  // namespace

Matrix random_orthogonal(SeededRng& rng, std::size_t d) {
  if (d < 1) throw std::invalid_argument("random_orthogonal: d must be >= 1");
  for (;;) {
    Matrix g(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) g(i, j) = rng.next_normal();
    if (auto q = orthogonalize(std::move(g))) return *q;
    // Zero column (almost surely never): redraw from the advanced stream.
  }
}

Vector solve_spd(const Matrix& a, const Vector& b) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw DimensionMismatch("solve_spd: matrix not square");
  if (b.size() != n) throw DimensionMismatch("solve_spd: rhs size mismatch");

  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double pivot = a(j, j);
    for (std::size_t k = 0; k < j; ++k) pivot -= l(j, k) * l(j, k);
    if (!(pivot > 0.0)) {
      throw NotPositiveDefinite("solve_spd: non-positive pivot at column " + std::to_string(j));
    }
    l(j, j) = std::sqrt(pivot);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }

  Vector y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * y[k];
    y[i] = s / l(i, i);
  }
  Vector x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = y[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= l(k, ii) * x[k];
    x[ii] = s / l(ii, ii);
  }
  return x;
}

namespace {

// Largest root modulus of lambda^2 + b*lambda + c.
double quadratic_radius(double b, double c) {
  const double disc = b * b - 4.0 * c;
  if (disc >= 0.0) {
    const double s = std::sqrt(disc);
    return std::max(std::abs((-b + s) / 2.0), std::abs((-b - s) / 2.0));
  }
  return std::hypot(-b / 2.0, std::sqrt(-disc) / 2.0);  // complex conjugate pair
}

// Largest root modulus of lambda^3 + a*lambda^2 + b*lambda + c, via the
// depressed cubic t^3 + p t + q (t = lambda + a/3): Cardano when one real
// root, trigonometric form when three.
double cubic_radius(double a, double b, double c) {
  const double shift = -a / 3.0;
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double half_q = q / 2.0;
  const double third_p = p / 3.0;
  const double delta = half_q * half_q + third_p * third_p * third_p;

  if (delta > 0.0) {
    const double sq = std::sqrt(delta);
    const double u = std::cbrt(-half_q + sq);
    const double v = std::cbrt(-half_q - sq);
    const double real_root = u + v + shift;
    const double re = -(u + v) / 2.0 + shift;
    const double im = std::sqrt(3.0) / 2.0 * (u - v);
    return std::max(std::abs(real_root), std::hypot(re, im));
  }

  if (p == 0.0) return std::abs(shift);  // delta <= 0 and p == 0 forces q == 0: triple root

  const double r = 2.0 * std::sqrt(-third_p);
  const double cos_phi = std::clamp(3.0 * q / (p * r), -1.0, 1.0);
  const double phi = std::acos(cos_phi);
  double radius = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double t = r * std::cos((phi - 2.0 * std::numbers::pi * k) / 3.0);
    radius = std::max(radius, std::abs(t + shift));
  }
  return radius;
}

}  // namespace

double small_spectral_radius(const Matrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n || n < 1 || n > 3) {
    throw UnsupportedSize("small_spectral_radius: supports square matrices up to 3x3");
  }
  if (n == 1) return std::abs(m(0, 0));
  if (n == 2) {
    const double tr = m(0, 0) + m(1, 1);
    const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    return quadratic_radius(-tr, det);
  }
  const double tr = m(0, 0) + m(1, 1) + m(2, 2);
  const double minors = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)) +
                        (m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0)) +
                        (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1));
  const double det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                     m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                     m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  return cubic_radius(-tr, minors, -det);
}

}  // namespace optbench
