#pragma once

#include <cstddef>

#include "frame.hpp"

namespace framekit {

struct diag_result {
  std::size_t chosen_vector = 0;
  std::size_t chosen_row = 0;
  std::size_t perturb_axis = 0;
  double epsilon = 0.0;
  frame perturbed;
  bool still_frame = false;
};

/// Makes the frame operator of an R^2 frame diagonal by adding epsilon to a
/// single coordinate of a single vector: the largest-|entry| coordinate
/// v_{j*}(i) is located (ties: larger vector index, then smaller row) and
/// the OTHER coordinate of that vector is shifted by
/// epsilon = -<u1, u2> / v_{j*}(i), cancelling the off-diagonal entry.
/// All indices in the result are 0-based.
diag_result diagonalize_r2(const frame& f);

} // namespace framekit
