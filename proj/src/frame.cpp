#include "frame.hpp"

#include <cmath>

namespace framekit {

frame::frame(std::size_t dim, std::size_t count, std::vector<double> coords)
    : dim_(dim), count_(count), coords_(std::move(coords)) {
  if (dim_ == 0)
    throw error(errc::invalid_argument, "frame dimension must be positive");
  if (count_ == 0)
    throw error(errc::invalid_argument, "frame must contain at least one vector");
  if (coords_.size() != dim_ * count_)
    throw error(errc::invalid_argument, "coordinate count does not match dim * count");
  for (double v : coords_)
    if (!std::isfinite(v))
      throw error(errc::invalid_argument, "frame coordinates must be finite");
}

matrix synthesis_matrix(const frame& f) {
  matrix t(f.dim(), f.count());
  for (std::size_t j = 0; j < f.count(); ++j) {
    auto v = f.vec(j);
    for (std::size_t i = 0; i < f.dim(); ++i)
      t(i, j) = v[i];
  }
  return t;
}

matrix frame_operator(const frame& f) {
  const std::size_t n = f.dim();
  matrix s(n, n);
  for (std::size_t j = 0; j < f.count(); ++j) {
    auto v = f.vec(j);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        s(a, b) += v[a] * v[b];
  }
  return s;
}

frame_analysis analyze_family(const frame& f) {
  frame_analysis out;
  out.eig = symmetric_eigen(frame_operator(f));
  double a = out.eig.eigenvalues.front();
  double b = out.eig.eigenvalues.back();
  out.report.lower_bound = a;
  out.report.upper_bound = b;
  if (a <= frame_tolerance(b)) {
    out.is_frame = false;
    return out;
  }
  out.is_frame = true;
  out.report.condition_number = b / a;
  out.report.is_tight = out.report.condition_number - 1.0 <= tight_tolerance;
  return out;
}

frame_report analyze(const frame& f) {
  frame_analysis a = analyze_family(f);
  if (!a.is_frame)
    throw error(errc::not_a_frame, "family does not span the space");
  return a.report;
}

frame canonical_dual(const frame& f) {
  frame_analysis a = analyze_family(f);
  if (!a.is_frame)
    throw error(errc::not_a_frame, "family does not span the space");
  std::vector<double> coords;
  coords.reserve(f.dim() * f.count());
  for (std::size_t j = 0; j < f.count(); ++j) {
    std::vector<double> d = spd_apply_inverse(a.eig, f.vec(j));
    coords.insert(coords.end(), d.begin(), d.end());
  }
  return frame(f.dim(), f.count(), std::move(coords));
}

std::vector<double> reconstruct(const frame& f, std::span<const double> x) {
  if (x.size() != f.dim())
    throw error(errc::dimension_mismatch, "vector length does not match frame dimension");
  frame dual = canonical_dual(f);
  std::vector<double> y(f.dim(), 0.0);
  for (std::size_t j = 0; j < f.count(); ++j) {
    double c = dot(x, dual.vec(j));
    auto v = f.vec(j);
    for (std::size_t i = 0; i < f.dim(); ++i)
      y[i] += c * v[i];
  }
  return y;
}

double tight_bound_identity(const frame& f) {
  double acc = 0.0;
  for (std::size_t j = 0; j < f.count(); ++j) {
    double norm = vector_norm(f.vec(j));
    acc += norm * norm;
  }
  return acc / static_cast<double>(f.dim());
}

} // namespace framekit
