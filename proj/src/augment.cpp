#include "augment.hpp"

#include <algorithm>
#include <cmath>

namespace framekit {

namespace {

frame_report require_tight(const frame& base) {
  frame_analysis a = analyze_family(base);
  if (!a.is_frame)
    throw error(errc::not_a_frame, "base family does not span the space");
  if (!a.report.is_tight)
    throw error(errc::not_tight, "base frame is not tight");
  return a.report;
}

/// Best multiple-of-identity fit c = trace(S)/n and the largest deviation
/// |S - c*I| over all entries.
std::pair<double, double> identity_fit(const matrix& s) {
  const std::size_t n = s.rows();
  double c = 0.0;
  for (std::size_t i = 0; i < n; ++i) c += s(i, i);
  c /= static_cast<double>(n);
  double deviation = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double target = (i == j) ? c : 0.0;
      deviation = std::max(deviation, std::abs(s(i, j) - target));
    }
  return {c, deviation};
}

} // namespace

append_verdict append_check(const frame& base, const frame& added) {
  if (added.dim() != base.dim())
    throw error(errc::dimension_mismatch, "added vectors must match the base dimension");
  frame_report base_report = require_tight(base);
  double bound = base_report.lower_bound;

  matrix s_added = frame_operator(added);
  auto [c, deviation] = identity_fit(s_added);

  append_verdict verdict;
  double scale = std::max({1.0, c, bound});
  verdict.combined_tight = deviation <= 1e-9 * scale;

  double zero_scale = std::max(1.0, bound);
  double magnitude = 0.0;
  for (double v : s_added.entries()) magnitude = std::max(magnitude, std::abs(v));
  verdict.degenerate = magnitude <= 1e-9 * zero_scale;

  frame_analysis added_analysis = analyze_family(added);
  verdict.appended_tight = added_analysis.is_frame && added_analysis.report.is_tight;

  if (verdict.combined_tight) {
    verdict.has_bounds = true;
    verdict.appended_bound = verdict.degenerate ? 0.0 : c;
    verdict.combined_bound = bound + verdict.appended_bound;
  }
  return verdict;
}

erasure_verdict erase_check(const frame& base, std::span<const std::size_t> indices) {
  frame_report base_report = require_tight(base);
  const std::size_t k = base.count();
  const std::size_t n = base.dim();

  if (indices.empty() || indices.size() >= k)
    throw error(errc::invalid_indices, "erasure must remove a proper nonempty subset");
  std::vector<std::size_t> sorted(indices.begin(), indices.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.back() >= k)
    throw error(errc::invalid_indices, "erasure index out of range");
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw error(errc::invalid_indices, "erasure indices must be distinct");

  std::vector<double> erased_coords;
  std::vector<double> remainder_coords;
  std::size_t next = 0;
  for (std::size_t j = 0; j < k; ++j) {
    auto v = base.vec(j);
    if (next < sorted.size() && sorted[next] == j) {
      erased_coords.insert(erased_coords.end(), v.begin(), v.end());
      ++next;
    } else {
      remainder_coords.insert(remainder_coords.end(), v.begin(), v.end());
    }
  }
  frame erased(n, sorted.size(), std::move(erased_coords));
  frame remainder(n, k - sorted.size(), std::move(remainder_coords));

  erasure_verdict verdict;
  verdict.erased_count = sorted.size();
  verdict.rule_applied = sorted.size() < n ? "p<n: never tight"
                                           : "p>=n: tight iff erased tight";

  auto [c, deviation] = identity_fit(frame_operator(erased));
  double scale = std::max({1.0, c, base_report.lower_bound});
  verdict.erased_tight = deviation <= 1e-9 * scale;

  frame_analysis rem = analyze_family(remainder);
  verdict.remainder_is_frame = rem.is_frame;
  verdict.remainder_tight = rem.is_frame && rem.report.is_tight;
  if (rem.is_frame) {
    verdict.remainder_report = rem.report;
    verdict.remainder_eigenvalues = rem.eig.eigenvalues;
  }
  return verdict;
}

} // namespace framekit
