#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "frame.hpp"

namespace framekit {

struct append_verdict {
  bool combined_tight = false;
  bool appended_tight = false;
  bool degenerate = false;
  bool has_bounds = false;
  double appended_bound = 0.0;
  double combined_bound = 0.0;
};

/// Appending `added` to a tight frame keeps it tight exactly when the
/// added family's frame operator is c*I; the combined bound is then A + c.
/// The degenerate flag marks an added family with zero operator (c = 0),
/// which is tight-compatible but not itself a frame.
append_verdict append_check(const frame& base, const frame& added);

struct erasure_verdict {
  std::size_t erased_count = 0;
  bool remainder_is_frame = false;
  bool remainder_tight = false;
  bool erased_tight = false;
  std::optional<frame_report> remainder_report;
  std::vector<double> remainder_eigenvalues;
  std::string_view rule_applied;
};

/// Erasing p of the k vectors of a tight frame (indices 0-based, a proper
/// nonempty subset): for p < dim the remainder is never tight; for p >= dim
/// it is tight exactly when the erased set's operator is c*I with c below
/// the original bound.
erasure_verdict erase_check(const frame& base, std::span<const std::size_t> indices);

} // namespace framekit
