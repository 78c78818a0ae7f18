#include "diag2.hpp"

#include <cmath>

namespace framekit {

diag_result diagonalize_r2(const frame& f) {
  if (f.dim() != 2)
    throw error(errc::wrong_dimension, "diagonalization is defined for dimension 2 only");
  bool any_nonzero = false;
  for (double v : f.coords())
    if (v != 0.0) { any_nonzero = true; break; }
  if (!any_nonzero)
    throw error(errc::all_zero, "every vector is zero");

  double off_diagonal = 0.0;
  for (std::size_t j = 0; j < f.count(); ++j)
    off_diagonal += f.vec(j)[0] * f.vec(j)[1];

  std::size_t best_vector = 0;
  std::size_t best_row = 0;
  double best_abs = -1.0;
  for (std::size_t j = 0; j < f.count(); ++j)
    for (std::size_t i = 0; i < 2; ++i) {
      double a = std::abs(f.vec(j)[i]);
      if (a > best_abs ||
          (a == best_abs && (j > best_vector || (j == best_vector && i < best_row)))) {
        best_abs = a;
        best_vector = j;
        best_row = i;
      }
    }

  std::size_t axis = 1 - best_row;
  double epsilon =
      off_diagonal == 0.0 ? 0.0 : -off_diagonal / f.vec(best_vector)[best_row];

  std::vector<double> coords(f.coords());
  if (epsilon != 0.0)
    coords[best_vector * 2 + axis] += epsilon;
  frame perturbed(2, f.count(), std::move(coords));

  matrix s = frame_operator(perturbed);
  double d0 = s(0, 0);
  double d1 = s(1, 1);
  double top = std::max(d0, d1);
  bool still_frame = std::min(d0, d1) > frame_tolerance(top);

  return diag_result{best_vector, best_row, axis, epsilon, std::move(perturbed),
                     still_frame};
}

} // namespace framekit
