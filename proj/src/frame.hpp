#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "linalg.hpp"

namespace framekit {

/// Finite family of k vectors in R^n, stored row-major (vector j occupies
/// coords [j*dim, (j+1)*dim)).  Immutable after construction; zero vectors
/// are allowed, the frame property is decided by analyze().
class frame {
public:
  frame(std::size_t dim, std::size_t count, std::vector<double> coords);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t count() const noexcept { return count_; }

  std::span<const double> vec(std::size_t j) const {
    return {coords_.data() + j * dim_, dim_};
  }
  const std::vector<double>& coords() const noexcept { return coords_; }

  bool operator==(const frame& other) const = default;

private:
  std::size_t dim_ = 0;
  std::size_t count_ = 0;
  std::vector<double> coords_;
};

struct frame_report {
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  double condition_number = 0.0;
  bool is_tight = false;
};

/// Tightness is declared when condition_number - 1 <= tight_tolerance.
inline constexpr double tight_tolerance = 1e-8;

/// n x k matrix whose column j is vector j.
matrix synthesis_matrix(const frame& f);

/// S = T T^t, accumulated as the sum of outer products in vector order.
matrix frame_operator(const frame& f);

/// Full analysis result; `is_frame` is false when the family does not span
/// (lambda_min at or below frame_tolerance), in which case `report` holds
/// the raw bounds with condition_number unset.
struct frame_analysis {
  bool is_frame = false;
  frame_report report;
  spectrum eig;
};

frame_analysis analyze_family(const frame& f);

/// Optimal frame bounds A = lambda_min(S), B = lambda_max(S).
/// Throws not_a_frame when the family does not span R^n.
frame_report analyze(const frame& f);

/// Canonical dual {S^-1 v_j}.
frame canonical_dual(const frame& f);

/// Sum_j <x, S^-1 v_j> v_j; reproduces x for any frame.
std::vector<double> reconstruct(const frame& f, std::span<const double> x);

/// (1/n) Sum_j ||v_j||^2; equals the frame bound when f is tight.
double tight_bound_identity(const frame& f);

} // namespace framekit
