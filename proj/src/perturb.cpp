#include "perturb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace framekit {

namespace {

std::vector<std::vector<double>> dual_vectors(const frame& f, const spectrum& eig) {
  std::vector<std::vector<double>> duals;
  duals.reserve(f.count());
  for (std::size_t j = 0; j < f.count(); ++j)
    duals.push_back(spd_apply_inverse(eig, f.vec(j)));
  return duals;
}

frame_analysis require_frame(const frame& f) {
  frame_analysis a = analyze_family(f);
  if (!a.is_frame)
    throw error(errc::not_a_frame, "family does not span the space");
  return a;
}

void check_same_shape(const frame& f, const frame& g) {
  if (f.dim() != g.dim() || f.count() != g.count())
    throw error(errc::dimension_mismatch, "frames must have the same dimension and vector count");
}

double delta_operator_norm(const frame& f, const frame& g) {
  matrix delta(f.dim(), f.count());
  for (std::size_t j = 0; j < f.count(); ++j)
    for (std::size_t i = 0; i < f.dim(); ++i)
      delta(i, j) = g.vec(j)[i] - f.vec(j)[i];
  return operator_norm(delta);
}

} // namespace

double spectral_shift(double lambda, double r) {
  if (!(lambda > 0.0) || !(r > 0.0))
    throw error(errc::domain_error, "spectral shift requires lambda > 0 and r > 0");
  return lambda + 2.0 * r + r * r / lambda;
}

improve_result improve_step(const frame& f, double epsilon, double safety) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw error(errc::domain_error, "epsilon must be positive");
  if (!(safety > 0.0) || !(safety < 1.0))
    throw error(errc::domain_error, "safety must lie strictly between 0 and 1");
  frame_analysis a = require_frame(f);

  std::vector<std::vector<double>> duals = dual_vectors(f, a.eig);
  double max_dual = 0.0;
  for (const auto& u : duals)
    max_dual = std::max(max_dual, vector_norm(u));

  double r = safety * std::min(epsilon / max_dual, a.report.lower_bound);

  std::vector<std::vector<double>> deltas;
  deltas.reserve(f.count());
  std::vector<double> coords(f.coords());
  for (std::size_t j = 0; j < f.count(); ++j) {
    std::vector<double> d(f.dim());
    for (std::size_t i = 0; i < f.dim(); ++i) {
      d[i] = r * duals[j][i];
      coords[j * f.dim() + i] += d[i];
    }
    deltas.push_back(std::move(d));
  }

  frame perturbed(f.dim(), f.count(), std::move(coords));
  frame_report after = analyze(perturbed);
  return improve_result{std::move(perturbed), std::move(deltas), r, a.report, after};
}

tightening_trace tighten(const frame& f) {
  frame_analysis a = require_frame(f);
  const std::size_t max_steps = f.dim() - 1;

  frame current = f;
  std::vector<tighten_step> steps;
  while (a.report.condition_number - 1.0 > tight_tolerance) {
    if (steps.size() == max_steps)
      throw error(errc::no_convergence, "tightening did not converge within dim - 1 steps");

    double lower = a.report.lower_bound;
    double upper = a.report.upper_bound;
    double r = std::sqrt(lower * upper);

    std::vector<std::vector<double>> duals = dual_vectors(current, a.eig);
    std::vector<double> coords(current.coords());
    for (std::size_t j = 0; j < current.count(); ++j)
      for (std::size_t i = 0; i < current.dim(); ++i)
        coords[j * current.dim() + i] += r * duals[j][i];

    frame next(current.dim(), current.count(), std::move(coords));
    frame_analysis next_a = analyze_family(next);
    if (!next_a.is_frame)
      throw error(errc::no_convergence, "tightening step produced a non-frame");

    steps.push_back(tighten_step{
        steps.size() + 1,
        r,
        {lower, upper},
        {next_a.report.lower_bound, next_a.report.upper_bound},
        next_a.eig.eigenvalues,
        next,
    });
    current = std::move(next);
    a = std::move(next_a);
  }

  std::vector<std::vector<double>> total_deltas;
  total_deltas.reserve(f.count());
  for (std::size_t j = 0; j < f.count(); ++j) {
    std::vector<double> d(f.dim());
    for (std::size_t i = 0; i < f.dim(); ++i)
      d[i] = current.vec(j)[i] - f.vec(j)[i];
    total_deltas.push_back(std::move(d));
  }
  return tightening_trace{std::move(steps), std::move(current), std::move(total_deltas)};
}

double stability_radius(const frame& f) {
  frame_analysis a = require_frame(f);
  return std::sqrt(a.report.lower_bound / static_cast<double>(f.count()));
}

pw_certificate pw_check(const frame& f, const frame& g) {
  check_same_shape(f, g);
  frame_analysis a = require_frame(f);
  double lower = a.report.lower_bound;
  double upper = a.report.upper_bound;

  double max_delta = 0.0;
  for (std::size_t j = 0; j < f.count(); ++j) {
    std::vector<double> d(f.dim());
    for (std::size_t i = 0; i < f.dim(); ++i)
      d[i] = g.vec(j)[i] - f.vec(j)[i];
    max_delta = std::max(max_delta, vector_norm(d));
  }

  double mu = delta_operator_norm(f, g);
  pw_certificate cert;
  cert.lambda_const = 0.0;
  cert.mu_crude = std::sqrt(static_cast<double>(f.count())) * max_delta;
  cert.mu_sharp = mu;
  cert.admissible = mu / std::sqrt(lower) < 1.0;
  double down = 1.0 - mu / std::sqrt(lower);
  double up = 1.0 + mu / std::sqrt(upper);
  cert.guaranteed_lower = lower * down * down;
  cert.guaranteed_upper = upper * up * up;
  return cert;
}

blend_result blend(const frame& f, const frame& g, std::span<const double> ts) {
  check_same_shape(f, g);
  if (ts.size() != f.count())
    throw error(errc::invalid_argument, "blend requires one weight per vector");
  for (double t : ts)
    if (!std::isfinite(t))
      throw error(errc::invalid_argument, "blend weights must be finite");
  frame_analysis a = require_frame(f);
  double lower = a.report.lower_bound;
  double upper = a.report.upper_bound;

  double mu = delta_operator_norm(f, g);
  double tau = 0.0;
  for (double t : ts) tau = std::max(tau, std::abs(t));

  std::vector<double> coords(f.dim() * f.count());
  for (std::size_t j = 0; j < f.count(); ++j)
    for (std::size_t i = 0; i < f.dim(); ++i)
      coords[j * f.dim() + i] = (1.0 - ts[j]) * f.vec(j)[i] + ts[j] * g.vec(j)[i];
  frame blended(f.dim(), f.count(), std::move(coords));

  blend_certificate cert;
  cert.tau = tau;
  cert.threshold = mu == 0.0 ? std::numeric_limits<double>::infinity()
                             : std::sqrt(lower) / mu;
  cert.mu_sharp = mu;
  cert.certified = tau < cert.threshold;
  double down = 1.0 - tau * mu / std::sqrt(lower);
  double up = 1.0 + tau * mu / std::sqrt(upper);
  cert.guaranteed_lower = lower * down * down;
  cert.guaranteed_upper = upper * up * up;
  return blend_result{std::move(blended), cert};
}

} // namespace framekit
