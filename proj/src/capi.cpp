#include "framekit.h"

#include <cstdint>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "augment.hpp"
#include "diag2.hpp"
#include "errors.hpp"
#include "frame.hpp"
#include "linalg.hpp"
#include "perturb.hpp"

struct fk_frame {
  framekit::frame impl;
};

struct fk_trace {
  framekit::tightening_trace impl;
  std::vector<fk_frame> step_frames;
  fk_frame final_frame;
};

namespace {

thread_local std::string last_error;

void set_error(const char* message) { last_error = message; }

fk_status map_code(framekit::errc code) {
  switch (code) {
    case framekit::errc::invalid_argument: return FK_ERROR_INVALID_ARGUMENT;
    case framekit::errc::dimension_mismatch: return FK_ERROR_DIMENSION_MISMATCH;
    case framekit::errc::not_a_frame: return FK_ERROR_NOT_A_FRAME;
    case framekit::errc::not_tight: return FK_ERROR_NOT_TIGHT;
    case framekit::errc::singular_operator: return FK_ERROR_SINGULAR_OPERATOR;
    case framekit::errc::non_symmetric: return FK_ERROR_NON_SYMMETRIC;
    case framekit::errc::no_convergence: return FK_ERROR_NO_CONVERGENCE;
    case framekit::errc::domain_error: return FK_ERROR_DOMAIN;
    case framekit::errc::invalid_indices: return FK_ERROR_INVALID_INDICES;
    case framekit::errc::wrong_dimension: return FK_ERROR_WRONG_DIMENSION;
    case framekit::errc::all_zero: return FK_ERROR_ALL_ZERO;
  }
  return FK_ERROR_INTERNAL;
}

template <typename Fn>
fk_status guarded(Fn&& fn) noexcept {
  try {
    return fn();
  } catch (const framekit::error& e) {
    set_error(e.what());
    return map_code(e.code());
  } catch (const std::bad_alloc&) {
    set_error("out of memory");
    return FK_ERROR_INTERNAL;
  } catch (const std::exception& e) {
    set_error(e.what());
    return FK_ERROR_INTERNAL;
  } catch (...) {
    set_error("unknown failure");
    return FK_ERROR_INTERNAL;
  }
}

fk_status null_argument(const char* what) {
  set_error(what);
  return FK_ERROR_INVALID_ARGUMENT;
}

fk_report to_c_report(const framekit::frame_report& r) {
  return fk_report{r.lower_bound, r.upper_bound, r.condition_number,
                   r.is_tight ? 1 : 0};
}

} // namespace

extern "C" {

const char* fk_status_name(fk_status status) {
  switch (status) {
    case FK_OK: return "ok";
    case FK_ERROR_INVALID_ARGUMENT: return "invalid_argument";
    case FK_ERROR_DIMENSION_MISMATCH: return "dimension_mismatch";
    case FK_ERROR_NOT_A_FRAME: return "not_a_frame";
    case FK_ERROR_NOT_TIGHT: return "not_tight";
    case FK_ERROR_SINGULAR_OPERATOR: return "singular_operator";
    case FK_ERROR_NON_SYMMETRIC: return "non_symmetric";
    case FK_ERROR_NO_CONVERGENCE: return "no_convergence";
    case FK_ERROR_DOMAIN: return "domain_error";
    case FK_ERROR_INVALID_INDICES: return "invalid_indices";
    case FK_ERROR_WRONG_DIMENSION: return "wrong_dimension";
    case FK_ERROR_ALL_ZERO: return "all_zero";
    case FK_ERROR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

const char* fk_last_error_message(void) { return last_error.c_str(); }

fk_status fk_frame_create(size_t dim, size_t count, const double* coords,
                          fk_frame** out) {
  if (!coords || !out) return null_argument("coords and out must be non-null");
  if (dim != 0 && count > SIZE_MAX / sizeof(double) / dim)
    return null_argument("frame size overflows");
  return guarded([&] {
    std::vector<double> data(coords, coords + dim * count);
    *out = new fk_frame{framekit::frame(dim, count, std::move(data))};
    return FK_OK;
  });
}

void fk_frame_free(fk_frame* frame) { delete frame; }

size_t fk_frame_dim(const fk_frame* frame) { return frame ? frame->impl.dim() : 0; }

size_t fk_frame_count(const fk_frame* frame) {
  return frame ? frame->impl.count() : 0;
}

fk_status fk_frame_coords(const fk_frame* frame, double* out) {
  if (!frame || !out) return null_argument("frame and out must be non-null");
  const auto& coords = frame->impl.coords();
  std::memcpy(out, coords.data(), coords.size() * sizeof(double));
  return FK_OK;
}

fk_status fk_synthesis_matrix(const fk_frame* frame, double* out) {
  if (!frame || !out) return null_argument("frame and out must be non-null");
  return guarded([&] {
    framekit::matrix t = framekit::synthesis_matrix(frame->impl);
    std::memcpy(out, t.entries().data(), t.entries().size() * sizeof(double));
    return FK_OK;
  });
}

fk_status fk_frame_operator(const fk_frame* frame, double* out) {
  if (!frame || !out) return null_argument("frame and out must be non-null");
  return guarded([&] {
    framekit::matrix s = framekit::frame_operator(frame->impl);
    std::memcpy(out, s.entries().data(), s.entries().size() * sizeof(double));
    return FK_OK;
  });
}

fk_status fk_analyze(const fk_frame* frame, fk_report* report,
                     double* eigenvalues) {
  if (!frame || !report) return null_argument("frame and report must be non-null");
  return guarded([&] {
    framekit::frame_analysis a = framekit::analyze_family(frame->impl);
    if (!a.is_frame)
      throw framekit::error(framekit::errc::not_a_frame,
                            "family does not span the space");
    *report = to_c_report(a.report);
    if (eigenvalues)
      std::memcpy(eigenvalues, a.eig.eigenvalues.data(),
                  a.eig.eigenvalues.size() * sizeof(double));
    return FK_OK;
  });
}

fk_status fk_canonical_dual(const fk_frame* frame, fk_frame** dual) {
  if (!frame || !dual) return null_argument("frame and dual must be non-null");
  return guarded([&] {
    *dual = new fk_frame{framekit::canonical_dual(frame->impl)};
    return FK_OK;
  });
}

fk_status fk_reconstruct(const fk_frame* frame, const double* x, double* out) {
  if (!frame || !x || !out)
    return null_argument("frame, x, and out must be non-null");
  return guarded([&] {
    std::vector<double> y = framekit::reconstruct(
        frame->impl, {x, frame->impl.dim()});
    std::memcpy(out, y.data(), y.size() * sizeof(double));
    return FK_OK;
  });
}

fk_status fk_tight_bound_identity(const fk_frame* frame, double* out) {
  if (!frame || !out) return null_argument("frame and out must be non-null");
  return guarded([&] {
    *out = framekit::tight_bound_identity(frame->impl);
    return FK_OK;
  });
}

fk_status fk_spectral_shift(double lambda, double r, double* out) {
  if (!out) return null_argument("out must be non-null");
  return guarded([&] {
    *out = framekit::spectral_shift(lambda, r);
    return FK_OK;
  });
}

fk_status fk_improve(const fk_frame* frame, double epsilon, double safety,
                     fk_frame** perturbed, double* r_used, fk_report* before,
                     fk_report* after, double* deltas) {
  if (!frame || !perturbed)
    return null_argument("frame and perturbed must be non-null");
  return guarded([&] {
    framekit::improve_result res =
        framekit::improve_step(frame->impl, epsilon, safety);
    if (r_used) *r_used = res.r_used;
    if (before) *before = to_c_report(res.report_before);
    if (after) *after = to_c_report(res.report_after);
    if (deltas) {
      const std::size_t n = frame->impl.dim();
      for (std::size_t j = 0; j < res.deltas.size(); ++j)
        std::memcpy(deltas + j * n, res.deltas[j].data(), n * sizeof(double));
    }
    *perturbed = new fk_frame{std::move(res.perturbed)};
    return FK_OK;
  });
}

fk_status fk_tighten(const fk_frame* frame, fk_trace** trace) {
  if (!frame || !trace) return null_argument("frame and trace must be non-null");
  return guarded([&] {
    framekit::tightening_trace t = framekit::tighten(frame->impl);
    std::vector<fk_frame> step_frames;
    step_frames.reserve(t.steps.size());
    for (const auto& step : t.steps)
      step_frames.push_back(fk_frame{step.frame_after});
    fk_frame final_frame{t.final_frame};
    *trace = new fk_trace{std::move(t), std::move(step_frames),
                          std::move(final_frame)};
    return FK_OK;
  });
}

void fk_trace_free(fk_trace* trace) { delete trace; }

size_t fk_trace_step_count(const fk_trace* trace) {
  return trace ? trace->impl.steps.size() : 0;
}

fk_status fk_trace_step(const fk_trace* trace, size_t step, double* r,
                        double* bounds_before, double* bounds_after,
                        double* eigenvalues_after) {
  if (!trace) return null_argument("trace must be non-null");
  if (step >= trace->impl.steps.size())
    return null_argument("step index out of range");
  const framekit::tighten_step& s = trace->impl.steps[step];
  if (r) *r = s.r;
  if (bounds_before) {
    bounds_before[0] = s.bounds_before.first;
    bounds_before[1] = s.bounds_before.second;
  }
  if (bounds_after) {
    bounds_after[0] = s.bounds_after.first;
    bounds_after[1] = s.bounds_after.second;
  }
  if (eigenvalues_after)
    std::memcpy(eigenvalues_after, s.eigenvalues_after.data(),
                s.eigenvalues_after.size() * sizeof(double));
  return FK_OK;
}

const fk_frame* fk_trace_step_frame(const fk_trace* trace, size_t step) {
  if (!trace || step >= trace->step_frames.size()) return nullptr;
  return &trace->step_frames[step];
}

const fk_frame* fk_trace_final_frame(const fk_trace* trace) {
  return trace ? &trace->final_frame : nullptr;
}

fk_status fk_trace_total_deltas(const fk_trace* trace, double* deltas) {
  if (!trace || !deltas) return null_argument("trace and deltas must be non-null");
  const auto& total = trace->impl.total_deltas;
  const std::size_t n = trace->final_frame.impl.dim();
  for (std::size_t j = 0; j < total.size(); ++j)
    std::memcpy(deltas + j * n, total[j].data(), n * sizeof(double));
  return FK_OK;
}

fk_status fk_stability_radius(const fk_frame* frame, double* out) {
  if (!frame || !out) return null_argument("frame and out must be non-null");
  return guarded([&] {
    *out = framekit::stability_radius(frame->impl);
    return FK_OK;
  });
}

fk_status fk_pw_check(const fk_frame* base, const fk_frame* perturbed,
                      fk_pw_certificate* cert) {
  if (!base || !perturbed || !cert)
    return null_argument("base, perturbed, and cert must be non-null");
  return guarded([&] {
    framekit::pw_certificate c = framekit::pw_check(base->impl, perturbed->impl);
    *cert = fk_pw_certificate{c.lambda_const, c.mu_crude,      c.mu_sharp,
                              c.admissible ? 1 : 0, c.guaranteed_lower,
                              c.guaranteed_upper};
    return FK_OK;
  });
}

fk_status fk_blend(const fk_frame* base, const fk_frame* other,
                   const double* ts, fk_frame** blended,
                   fk_blend_certificate* cert) {
  if (!base || !other || !ts || !blended)
    return null_argument("base, other, ts, and blended must be non-null");
  return guarded([&] {
    framekit::blend_result res =
        framekit::blend(base->impl, other->impl, {ts, base->impl.count()});
    if (cert)
      *cert = fk_blend_certificate{res.cert.tau,
                                   res.cert.threshold,
                                   res.cert.mu_sharp,
                                   res.cert.certified ? 1 : 0,
                                   res.cert.guaranteed_lower,
                                   res.cert.guaranteed_upper};
    *blended = new fk_frame{std::move(res.blended)};
    return FK_OK;
  });
}

fk_status fk_append_check(const fk_frame* base, const fk_frame* added,
                          fk_append_verdict* verdict) {
  if (!base || !added || !verdict)
    return null_argument("base, added, and verdict must be non-null");
  return guarded([&] {
    framekit::append_verdict v = framekit::append_check(base->impl, added->impl);
    *verdict = fk_append_verdict{v.combined_tight ? 1 : 0,
                                 v.appended_tight ? 1 : 0,
                                 v.degenerate ? 1 : 0,
                                 v.has_bounds ? 1 : 0,
                                 v.appended_bound,
                                 v.combined_bound};
    return FK_OK;
  });
}

fk_status fk_erase_check(const fk_frame* base, const size_t* indices,
                         size_t index_count, fk_erasure_verdict* verdict,
                         double* remainder_eigenvalues) {
  if (!base || !indices || !verdict)
    return null_argument("base, indices, and verdict must be non-null");
  return guarded([&] {
    framekit::erasure_verdict v =
        framekit::erase_check(base->impl, {indices, index_count});
    verdict->erased_count = v.erased_count;
    verdict->remainder_is_frame = v.remainder_is_frame ? 1 : 0;
    verdict->remainder_tight = v.remainder_tight ? 1 : 0;
    verdict->erased_tight = v.erased_tight ? 1 : 0;
    verdict->has_remainder_report = v.remainder_report.has_value() ? 1 : 0;
    verdict->remainder_report =
        v.remainder_report ? to_c_report(*v.remainder_report) : fk_report{};
    verdict->rule_applied = v.rule_applied.data();
    if (remainder_eigenvalues && !v.remainder_eigenvalues.empty())
      std::memcpy(remainder_eigenvalues, v.remainder_eigenvalues.data(),
                  v.remainder_eigenvalues.size() * sizeof(double));
    return FK_OK;
  });
}

fk_status fk_diagonalize_r2(const fk_frame* frame, fk_diag_result* result,
                            fk_frame** perturbed) {
  if (!frame || !result) return null_argument("frame and result must be non-null");
  return guarded([&] {
    framekit::diag_result res = framekit::diagonalize_r2(frame->impl);
    result->chosen_vector = res.chosen_vector;
    result->chosen_row = res.chosen_row;
    result->perturb_axis = res.perturb_axis;
    result->epsilon = res.epsilon;
    result->still_frame = res.still_frame ? 1 : 0;
    if (perturbed) *perturbed = new fk_frame{std::move(res.perturbed)};
    return FK_OK;
  });
}

} // extern "C"
