#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "linalg.hpp"
#include "testutil.hpp"

using framekit::matrix;
using framekit::spectrum;

namespace {

matrix random_symmetric(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  matrix s(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double v = normal(rng);
      s(i, j) = v;
      s(j, i) = v;
    }
  return s;
}

matrix random_spd(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  matrix g(n, n + 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n + 2; ++j)
      g(i, j) = normal(rng);
  matrix s = g * g.transposed();
  for (std::size_t i = 0; i < n; ++i) s(i, i) += 0.5;
  return s;
}

double reconstruction_residual(const matrix& s, const spectrum& eig) {
  const std::size_t n = s.rows();
  const matrix& q = eig.eigenvectors;
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double entry = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        entry += q(i, k) * eig.eigenvalues[k] * q(j, k);
      double d = entry - s(i, j);
      acc += d * d;
    }
  return std::sqrt(acc);
}

double orthonormality_residual(const matrix& q) {
  const std::size_t n = q.rows();
  double acc = 0.0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      double entry = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        entry += q(i, a) * q(i, b);
      double d = entry - (a == b ? 1.0 : 0.0);
      acc += d * d;
    }
  return std::sqrt(acc);
}

} // namespace

TEST_CASE("matrix validates shape and entries") {
  CHECK_THROWS_AS(matrix(0, 2), framekit::error);
  CHECK_THROWS_AS(matrix(2, 2, {1.0, 2.0, 3.0}), framekit::error);
  CHECK_THROWS_AS(matrix(1, 2, {1.0, std::nan("")}), framekit::error);
  CHECK_THROWS_AS(matrix(1, 1, {INFINITY}), framekit::error);
}

TEST_CASE("matrix product and transpose") {
  matrix a(2, 3, {1, 2, 3, 4, 5, 6});
  matrix at = a.transposed();
  CHECK(at.rows() == 3);
  CHECK(at(0, 1) == 4.0);
  matrix g = a * at;
  CHECK(g(0, 0) == 14.0);
  CHECK(g(0, 1) == 32.0);
  CHECK(g(1, 1) == 77.0);
  CHECK_THROWS_AS(a * a, framekit::error);
}

TEST_CASE("eigen of a diagonal matrix is exact") {
  matrix s(2, 2, {1, 0, 0, 4});
  spectrum eig = framekit::symmetric_eigen(s);
  CHECK(eig.eigenvalues[0] == 1.0);
  CHECK(eig.eigenvalues[1] == 4.0);
  CHECK(eig.eigenvectors(0, 0) == 1.0);
  CHECK(eig.eigenvectors(1, 1) == 1.0);
  CHECK(eig.eigenvectors(0, 1) == 0.0);
  CHECK(eig.eigenvectors(1, 0) == 0.0);
}

TEST_CASE("eigen of [[2,1],[1,2]]") {
  matrix s(2, 2, {2, 1, 1, 2});
  spectrum eig = framekit::symmetric_eigen(s);
  CHECK(eig.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(eig.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-12));
  double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(eig.eigenvectors(0, 0) == doctest::Approx(inv_sqrt2));
  CHECK(eig.eigenvectors(1, 0) == doctest::Approx(-inv_sqrt2));
  CHECK(eig.eigenvectors(0, 1) == doctest::Approx(inv_sqrt2));
  CHECK(eig.eigenvectors(1, 1) == doctest::Approx(inv_sqrt2));
}

TEST_CASE("eigen of the identity") {
  spectrum eig = framekit::symmetric_eigen(matrix::identity(4));
  for (double lambda : eig.eigenvalues) CHECK(lambda == 1.0);
  CHECK(orthonormality_residual(eig.eigenvectors) <= 1e-10 * 2.0);
}

TEST_CASE("eigen rejects non-symmetric and non-square input") {
  CHECK_THROWS_AS(framekit::symmetric_eigen(matrix(2, 3)), framekit::error);
  matrix s(2, 2, {1, 2, 0, 1});
  CHECK_THROWS_AS(framekit::symmetric_eigen(s), framekit::error);
  try {
    framekit::symmetric_eigen(s);
  } catch (const framekit::error& e) {
    CHECK(e.code() == framekit::errc::non_symmetric);
  }
}

TEST_CASE("eigen accepts tiny symmetric perturbations") {
  matrix s(2, 2, {2, 1, 1 + 1e-15, 2});
  spectrum eig = framekit::symmetric_eigen(s);
  CHECK(eig.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("eigen is deterministic") {
  std::mt19937_64 rng(1234);
  matrix s = random_symmetric(rng, 5);
  spectrum a = framekit::symmetric_eigen(s);
  spectrum b = framekit::symmetric_eigen(s);
  CHECK(a.eigenvalues == b.eigenvalues);
  CHECK(a.eigenvectors.entries() == b.eigenvectors.entries());
}

TEST_CASE("eigen reconstruction and orthonormality on random symmetric input") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = 2 + static_cast<std::size_t>(trial % 7);
    matrix s = random_symmetric(rng, n);
    spectrum eig = framekit::symmetric_eigen(s);
    for (std::size_t i = 1; i < n; ++i)
      CHECK(eig.eigenvalues[i - 1] <= eig.eigenvalues[i]);
    double scale = s.frobenius_norm();
    if (scale < 1.0) scale = 1.0;
    CHECK(reconstruction_residual(s, eig) <= 1e-10 * scale);
    CHECK(orthonormality_residual(eig.eigenvectors) <=
          1e-10 * std::sqrt(static_cast<double>(n)));
  }
}

TEST_CASE("re-running eigen on the reconstruction reproduces the spectrum") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    matrix s = random_symmetric(rng, 4);
    spectrum eig = framekit::symmetric_eigen(s);
    matrix rebuilt(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        double entry = 0.0;
        for (std::size_t k = 0; k < 4; ++k)
          entry += eig.eigenvectors(i, k) * eig.eigenvalues[k] *
                   eig.eigenvectors(j, k);
        rebuilt(i, j) = entry;
      }
    spectrum again = framekit::symmetric_eigen(rebuilt);
    for (std::size_t i = 0; i < 4; ++i) {
      double ref = eig.eigenvalues[i];
      double tol = 1e-9 * (std::abs(ref) > 1.0 ? std::abs(ref) : 1.0);
      CHECK(std::abs(again.eigenvalues[i] - ref) <= tol);
    }
  }
}

TEST_CASE("spd_apply_inverse on frozen instances") {
  matrix s(2, 2, {1, 0, 0, 4});
  std::vector<double> x{0.0, 2.0};
  std::vector<double> y = framekit::spd_apply_inverse(s, x);
  CHECK(y[0] == 0.0);
  CHECK(y[1] == doctest::Approx(0.5).epsilon(1e-14));

  std::vector<double> z{3.0, -2.0};
  std::vector<double> w = framekit::spd_apply_inverse(matrix::identity(2), z);
  CHECK(w[0] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(w[1] == doctest::Approx(-2.0).epsilon(1e-14));

  matrix m(2, 2, {2, 1, 1, 2});
  std::vector<double> ones{1.0, 1.0};
  std::vector<double> third = framekit::spd_apply_inverse(m, ones);
  CHECK(third[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(third[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("spd_apply_inverse rejects singular operators") {
  matrix s(2, 2, {1, 0, 0, 0});
  std::vector<double> x{1.0, 1.0};
  CHECK_THROWS_AS(framekit::spd_apply_inverse(s, x), framekit::error);
  try {
    framekit::spd_apply_inverse(s, x);
  } catch (const framekit::error& e) {
    CHECK(e.code() == framekit::errc::singular_operator);
  }
}

TEST_CASE("spd_apply_inverse round trip on random SPD matrices") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 2 + static_cast<std::size_t>(trial % 9);
    matrix s = random_spd(rng, n);
    std::vector<double> x = testutil::random_coords(rng, n);
    std::vector<double> y = framekit::spd_apply_inverse(s, x);
    std::vector<double> back = s.apply(y);
    double xnorm = framekit::vector_norm(x);
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      err += (back[i] - x[i]) * (back[i] - x[i]);
    CHECK(std::sqrt(err) <= 1e-10 * (xnorm > 1.0 ? xnorm : 1.0));
  }
}

TEST_CASE("operator_norm frozen instances") {
  CHECK(framekit::operator_norm(matrix(3, 2)) == 0.0);
  CHECK(framekit::operator_norm(matrix(2, 2, {1, 0, 0, 4})) ==
        doctest::Approx(4.0).epsilon(1e-13));
  CHECK(framekit::operator_norm(matrix(2, 1, {3, 4})) ==
        doctest::Approx(5.0).epsilon(1e-13));
}

TEST_CASE("operator_norm dominates the image of unit vectors") {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> normal(0.0, 1.0);
  matrix m(5, 8);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 8; ++j)
      m(i, j) = normal(rng);
  double norm = framekit::operator_norm(m);
  double best = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> c = testutil::random_unit(rng, 8);
    best = std::max(best, framekit::vector_norm(m.apply(c)));
  }
  CHECK(best <= norm + 1e-9);
  CHECK(norm <= m.frobenius_norm() + 1e-12);
}
