#include "linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace framekit {

namespace {

void check_shape(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0)
    throw error(errc::invalid_argument, "matrix dimensions must be positive");
}

void check_finite(const std::vector<double>& entries) {
  for (double v : entries)
    if (!std::isfinite(v))
      throw error(errc::invalid_argument, "matrix entries must be finite");
}

} // namespace

matrix::matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, 0.0) {
  check_shape(rows, cols);
}

matrix::matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  check_shape(rows, cols);
  if (entries_.size() != rows * cols)
    throw error(errc::invalid_argument, "entry count does not match matrix shape");
  check_finite(entries_);
}

matrix matrix::identity(std::size_t n) {
  matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

matrix matrix::transposed() const {
  matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      t(j, i) = (*this)(i, j);
  return t;
}

std::vector<double> matrix::apply(std::span<const double> x) const {
  if (x.size() != cols_)
    throw error(errc::dimension_mismatch, "vector length does not match matrix columns");
  std::vector<double> y(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < cols_; ++j)
      acc += (*this)(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

double matrix::frobenius_norm() const {
  double acc = 0.0;
  for (double v : entries_) acc += v * v;
  return std::sqrt(acc);
}

matrix operator*(const matrix& a, const matrix& b) {
  if (a.cols() != b.rows())
    throw error(errc::dimension_mismatch, "matrix shapes are not compatible");
  matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        c(i, j) += aik * b(k, j);
    }
  return c;
}

namespace {

double off_diagonal_norm(const matrix& a) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) acc += a(i, j) * a(i, j);
  return std::sqrt(acc);
}

/// Compares eigenvector columns entry by entry; used to order equal
/// eigenvalues deterministically.
bool column_less(const matrix& q, std::size_t a, std::size_t b) {
  for (std::size_t i = 0; i < q.rows(); ++i) {
    if (q(i, a) < q(i, b)) return true;
    if (q(i, a) > q(i, b)) return false;
  }
  return false;
}

} // namespace

spectrum symmetric_eigen(const matrix& s) {
  if (s.rows() != s.cols())
    throw error(errc::invalid_argument, "eigendecomposition requires a square matrix");
  const std::size_t n = s.rows();

  double scale = s.frobenius_norm();
  if (scale < 1.0) scale = 1.0;
  double asym = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double d = s(i, j) - s(j, i);
      asym += 2.0 * d * d;
    }
  if (std::sqrt(asym) > 1e-12 * scale)
    throw error(errc::non_symmetric, "matrix is not symmetric");

  matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a(i, j) = 0.5 * (s(i, j) + s(j, i));

  matrix q = matrix::identity(n);
  const double threshold = 1e-14 * scale;

  bool converged = off_diagonal_norm(a) <= threshold;
  for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t r = p + 1; r < n; ++r) {
        double apq = a(p, r);
        if (apq == 0.0) continue;
        double theta = (a(r, r) - a(p, p)) / (2.0 * apq);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double sn = t * c;

        double app = a(p, p);
        double aqq = a(r, r);
        a(p, p) = app - t * apq;
        a(r, r) = aqq + t * apq;
        a(p, r) = 0.0;
        a(r, p) = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          if (i == p || i == r) continue;
          double aip = a(i, p);
          double air = a(i, r);
          a(i, p) = c * aip - sn * air;
          a(i, r) = sn * aip + c * air;
          a(p, i) = a(i, p);
          a(r, i) = a(i, r);
        }
        for (std::size_t i = 0; i < n; ++i) {
          double qip = q(i, p);
          double qir = q(i, r);
          q(i, p) = c * qip - sn * qir;
          q(i, r) = sn * qip + c * qir;
        }
      }
    converged = off_diagonal_norm(a) <= threshold;
  }
  if (!converged)
    throw error(errc::no_convergence, "eigendecomposition did not converge");

  for (std::size_t j = 0; j < n; ++j) {
    double lead = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(q(i, j)) > 1e-12) {
        lead = q(i, j);
        break;
      }
    }
    if (lead < 0.0)
      for (std::size_t i = 0; i < n; ++i) q(i, j) = -q(i, j);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (a(x, x) != a(y, y)) return a(x, x) < a(y, y);
    return column_less(q, x, y);
  });

  spectrum out;
  out.eigenvalues.resize(n);
  out.eigenvectors = matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.eigenvalues[j] = a(order[j], order[j]);
    for (std::size_t i = 0; i < n; ++i)
      out.eigenvectors(i, j) = q(i, order[j]);
  }
  return out;
}

std::vector<double> spd_apply_inverse(const spectrum& eig, std::span<const double> x) {
  const std::size_t n = eig.eigenvalues.size();
  if (x.size() != n)
    throw error(errc::dimension_mismatch, "vector length does not match operator size");
  double lambda_min = eig.eigenvalues.front();
  double lambda_max = eig.eigenvalues.back();
  if (lambda_min <= frame_tolerance(lambda_max))
    throw error(errc::singular_operator, "operator is numerically singular");

  const matrix& q = eig.eigenvectors;
  std::vector<double> w(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      acc += q(i, j) * x[i];
    w[j] = acc / eig.eigenvalues[j];
  }
  std::vector<double> y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      acc += q(i, j) * w[j];
    y[i] = acc;
  }
  return y;
}

std::vector<double> spd_apply_inverse(const matrix& s, std::span<const double> x) {
  return spd_apply_inverse(symmetric_eigen(s), x);
}

double operator_norm(const matrix& m) {
  matrix gram = (m.rows() <= m.cols()) ? m * m.transposed() : m.transposed() * m;
  spectrum eig = symmetric_eigen(gram);
  double top = eig.eigenvalues.back();
  return std::sqrt(top > 0.0 ? top : 0.0);
}

double vector_norm(std::span<const double> x) {
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return std::sqrt(acc);
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw error(errc::dimension_mismatch, "vector lengths differ");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

} // namespace framekit
