#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "errors.hpp"

namespace framekit {

/// Dense real matrix, row-major.  Entries are validated to be finite.
class matrix {
public:
  matrix() = default;
  matrix(std::size_t rows, std::size_t cols);
  matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  static matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }
  double& operator()(std::size_t i, std::size_t j) {
    return entries_[i * cols_ + j];
  }

  const std::vector<double>& entries() const noexcept { return entries_; }

  matrix transposed() const;
  std::vector<double> apply(std::span<const double> x) const;
  double frobenius_norm() const;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> entries_;
};

matrix operator*(const matrix& a, const matrix& b);

/// Eigendecomposition of a symmetric matrix: ascending eigenvalues, column i
/// of `eigenvectors` is the unit eigenvector for eigenvalue i.
struct spectrum {
  std::vector<double> eigenvalues;
  matrix eigenvectors;
};

/// Cyclic Jacobi eigendecomposition.  Converges when the off-diagonal
/// Frobenius norm falls below 1e-14 * max(1, ||S||_F); at most 100 sweeps.
/// Equal eigenvalues are ordered by sorting their eigenvector columns
/// lexicographically after making each column's first nonzero entry positive.
spectrum symmetric_eigen(const matrix& s);

/// Threshold below which an eigenvalue of an operator with largest
/// eigenvalue `lambda_max` is treated as zero.
inline double frame_tolerance(double lambda_max) {
  return 1e-10 * (lambda_max > 1.0 ? lambda_max : 1.0);
}

/// Solves S y = x through the eigendecomposition y = Q diag(1/lambda) Q^t x.
/// Fails with singular_operator when lambda_min <= frame_tolerance(lambda_max).
std::vector<double> spd_apply_inverse(const spectrum& eig, std::span<const double> x);
std::vector<double> spd_apply_inverse(const matrix& s, std::span<const double> x);

/// Largest singular value sqrt(lambda_max(M^t M)).
double operator_norm(const matrix& m);

double vector_norm(std::span<const double> x);
double dot(std::span<const double> a, std::span<const double> b);

} // namespace framekit
