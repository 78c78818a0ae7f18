#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "frame.hpp"

namespace framekit {

/// Image of an eigenvalue under the perturbation v_j + r S^-1 v_j:
/// lambda + 2r + r^2 / lambda.
double spectral_shift(double lambda, double r);

struct improve_result {
  frame perturbed;
  std::vector<std::vector<double>> deltas;
  double r_used;
  frame_report report_before;
  frame_report report_after;
};

/// One condition-number-reducing step: delta_j = r S^-1 v_j with
/// r = safety * min(epsilon / max_j ||S^-1 v_j||, A).  Every delta norm
/// stays strictly below epsilon and the condition number never increases.
improve_result improve_step(const frame& f, double epsilon, double safety);

struct tighten_step {
  std::size_t index;
  double r;
  std::pair<double, double> bounds_before;
  std::pair<double, double> bounds_after;
  std::vector<double> eigenvalues_after;
  frame frame_after;
};

struct tightening_trace {
  std::vector<tighten_step> steps;
  frame final_frame;
  std::vector<std::vector<double>> total_deltas;
};

/// Repeats the perturbation with r_m = sqrt(A_{m-1} B_{m-1}) until the
/// frame is tight; takes at most dim - 1 steps.
tightening_trace tighten(const frame& f);

/// sqrt(A / k): any perturbation family with every ||delta_j|| strictly
/// below this radius leaves the frame property intact.
double stability_radius(const frame& f);

struct pw_certificate {
  double lambda_const;
  double mu_crude;
  double mu_sharp;
  bool admissible;
  double guaranteed_lower;
  double guaranteed_upper;
};

/// Paley-Wiener certificate for the perturbed family g, with lambda = 0 and
/// mu the operator norm of the difference synthesis matrix.  When
/// admissible (mu < sqrt(A)), g is a frame with bounds inside
/// [A(1 - mu/sqrt(A))^2, B(1 + mu/sqrt(B))^2].
pw_certificate pw_check(const frame& f, const frame& g);

struct blend_certificate {
  double tau;
  double threshold;
  double mu_sharp;
  bool certified;
  double guaranteed_lower;
  double guaranteed_upper;
};

struct blend_result {
  frame blended;
  blend_certificate cert;
};

/// Pointwise blend {(1 - t_j) f_j + t_j g_j}.  Certified a frame when
/// tau = max |t_j| stays below sqrt(A)/mu; the threshold is +inf when the
/// two frames coincide (mu = 0).
blend_result blend(const frame& f, const frame& g, std::span<const double> ts);

} // namespace framekit
