#include "frame_io.hpp"

#include <framekit.h>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace {

using fio::json_builder;

struct frame_handle {
  fk_frame* ptr = nullptr;
  frame_handle() = default;
  frame_handle(frame_handle&& other) noexcept : ptr(other.ptr) { other.ptr = nullptr; }
  frame_handle& operator=(frame_handle&& other) noexcept {
    std::swap(ptr, other.ptr);
    return *this;
  }
  frame_handle(const frame_handle&) = delete;
  frame_handle& operator=(const frame_handle&) = delete;
  ~frame_handle() { fk_frame_free(ptr); }
};

struct trace_handle {
  fk_trace* ptr = nullptr;
  trace_handle() = default;
  trace_handle(const trace_handle&) = delete;
  trace_handle& operator=(const trace_handle&) = delete;
  ~trace_handle() { fk_trace_free(ptr); }
};

/// Failure carrying everything the error report needs.
struct cli_failure {
  std::string kind;
  std::string message;
  int exit_code;
};

int exit_code_for(fk_status status) {
  switch (status) {
    case FK_OK:
      return 0;
    case FK_ERROR_INVALID_ARGUMENT:
    case FK_ERROR_DIMENSION_MISMATCH:
    case FK_ERROR_DOMAIN:
    case FK_ERROR_INVALID_INDICES:
    case FK_ERROR_WRONG_DIMENSION:
      return 2;
    default:
      return 1;
  }
}

void check(fk_status status) {
  if (status != FK_OK)
    throw cli_failure{fk_status_name(status), fk_last_error_message(),
                      exit_code_for(status)};
}

/// Accumulates the report envelope: command, input summaries, warnings.
class report {
public:
  explicit report(std::string command) : command_(std::move(command)) {}

  void add_input(std::string key, std::size_t dim, std::size_t count) {
    inputs_.push_back({std::move(key), dim, count});
  }

  void warn(std::string message) { warnings_.push_back(std::move(message)); }

  template <typename Payload>
  int finish(Payload&& payload) {
    json_builder b;
    begin(b, warnings_.empty() ? "ok" : "warning", warnings_);
    b.key("result");
    payload(b);
    b.end_object();
    emit(b.take());
    for (const auto& w : warnings_) std::cerr << "framekit: warning: " << w << "\n";
    return 0;
  }

  int fail(const std::string& kind, const std::string& message, int exit_code) {
    json_builder b;
    begin(b, "error", {message});
    b.key("error");
    b.begin_object();
    b.key("kind");
    b.value(std::string_view(kind));
    b.key("message");
    b.value(std::string_view(message));
    b.end_object();
    b.end_object();
    emit(b.take());
    std::cerr << "framekit: error: " << message << "\n";
    return exit_code;
  }

private:
  struct input_entry {
    std::string key;
    std::size_t dim;
    std::size_t count;
  };

  static void put_summary(json_builder& b, const input_entry& in) {
    b.begin_object();
    b.key("dim");
    b.value(in.dim);
    b.key("count");
    b.value(in.count);
    b.end_object();
  }

  void begin(json_builder& b, std::string_view status,
             const std::vector<std::string>& messages) {
    b.begin_object();
    b.key("command");
    b.value(std::string_view(command_));
    b.key("input");
    if (inputs_.empty()) {
      b.value_null();
    } else if (inputs_.size() == 1 && inputs_[0].key.empty()) {
      put_summary(b, inputs_[0]);
    } else {
      b.begin_object();
      for (const auto& in : inputs_) {
        b.key(in.key);
        put_summary(b, in);
      }
      b.end_object();
    }
    b.key("status");
    b.value(status);
    b.key("messages");
    b.begin_array();
    for (const auto& m : messages) b.value(std::string_view(m));
    b.end_array();
  }

  static void emit(const std::string& text) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::fflush(stdout);
  }

  std::string command_;
  std::vector<input_entry> inputs_;
  std::vector<std::string> warnings_;
};

std::optional<fio::frame_format> parse_format(const std::string& name) {
  if (name.empty()) return std::nullopt;
  if (name == "csv") return fio::frame_format::csv;
  return fio::frame_format::json;
}

/// Parses a frame file and wraps it in a library handle; records the input
/// summary on the report under `key` ("" for single-input commands).
frame_handle load_frame(report& rep, std::string key, const std::string& path,
                        std::optional<fio::frame_format> forced) {
  fio::parsed_frame parsed;
  try {
    parsed = fio::parse_frame_file(path, forced);
  } catch (const fio::io_error& e) {
    throw cli_failure{std::string(fio::io_errc_name(e.kind())), e.what(), 2};
  }
  rep.add_input(std::move(key), parsed.dim, parsed.count);
  frame_handle handle;
  check(fk_frame_create(parsed.dim, parsed.count, parsed.coords.data(), &handle.ptr));
  return handle;
}

std::vector<double> frame_coords(const fk_frame* frame) {
  std::vector<double> coords(fk_frame_dim(frame) * fk_frame_count(frame));
  check(fk_frame_coords(frame, coords.data()));
  return coords;
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw fio::io_error(fio::io_errc::io, path + ": cannot open for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw fio::io_error(fio::io_errc::io, path + ": write failed");
}

void put_rows(json_builder& b, std::size_t dim, std::size_t count,
              const double* data) {
  b.begin_array();
  for (std::size_t j = 0; j < count; ++j)
    b.numbers(std::span<const double>(data + j * dim, dim));
  b.end_array();
}

/// Embedded frames use the frame-file schema so they can be piped back in.
void put_frame(json_builder& b, std::size_t dim, std::size_t count,
               const double* coords) {
  b.begin_object();
  b.key("dim");
  b.value(dim);
  b.key("vectors");
  put_rows(b, dim, count, coords);
  b.end_object();
}

void put_report(json_builder& b, const fk_report& r) {
  b.begin_object();
  b.key("lower_bound");
  b.value(r.lower_bound);
  b.key("upper_bound");
  b.value(r.upper_bound);
  b.key("condition_number");
  b.value(r.condition_number);
  b.key("is_tight");
  b.value(r.is_tight != 0);
  b.end_object();
}

void put_bounds(json_builder& b, const double bounds[2]) {
  b.begin_object();
  b.key("lower");
  b.value(bounds[0]);
  b.key("upper");
  b.value(bounds[1]);
  b.end_object();
}

template <typename Body>
int guarded(const char* command, Body&& body) {
  report rep(command);
  try {
    return body(rep);
  } catch (const cli_failure& failure) {
    return rep.fail(failure.kind, failure.message, failure.exit_code);
  } catch (const fio::io_error& e) {
    return rep.fail(std::string(fio::io_errc_name(e.kind())), e.what(), 2);
  } catch (const std::exception& e) {
    return rep.fail("internal_error", e.what(), 1);
  }
}

/* ------------------------------------------------------------------ */
/* Subcommand options                                                  */

struct single_opts {
  std::string path;
  std::string format;
};

struct improve_opts {
  std::string path;
  std::string format;
  std::string output;
  double epsilon = 0.0;
  double safety = 0.9;
};

struct tighten_opts {
  std::string path;
  std::string format;
  std::string output;
  std::string trace_path;
};

struct pair_opts {
  std::string base;
  std::string other;
  std::string format;
};

struct erase_opts {
  std::string path;
  std::string format;
  std::vector<std::size_t> indices;
};

struct diag2_opts {
  std::string path;
  std::string format;
  std::string output;
};

struct blend_opts {
  std::string base;
  std::string other;
  std::string format;
  std::string output;
  std::vector<double> weights;
};

void maybe_write_frame(const std::string& path, std::size_t dim, std::size_t count,
                       std::span<const double> coords) {
  if (path.empty()) return;
  fio::write_frame_file(path, fio::detect_format(path, std::nullopt), dim, count,
                        coords);
}

/* ------------------------------------------------------------------ */
/* Subcommand bodies                                                   */

int cmd_analyze(report& rep, const single_opts& o) {
  frame_handle f = load_frame(rep, "", o.path, parse_format(o.format));
  fk_report r{};
  std::vector<double> eigenvalues(fk_frame_dim(f.ptr));
  check(fk_analyze(f.ptr, &r, eigenvalues.data()));
  double identity = 0.0;
  check(fk_tight_bound_identity(f.ptr, &identity));
  return rep.finish([&](json_builder& b) {
    b.begin_object();
    b.key("report");
    put_report(b, r);
    b.key("eigenvalues");
    b.numbers(eigenvalues);
    b.key("tight_bound_identity");
    b.value(identity);
    b.end_object();
  });
}

int cmd_improve(report& rep, const improve_opts& o) {
  frame_handle f = load_frame(rep, "", o.path, parse_format(o.format));
  const std::size_t dim = fk_frame_dim(f.ptr);
  const std::size_t count = fk_frame_count(f.ptr);
  frame_handle perturbed;
  double r_used = 0.0;
  fk_report before{};
  fk_report after{};
  std::vector<double> deltas(count * dim);
  check(fk_improve(f.ptr, o.epsilon, o.safety, &perturbed.ptr, &r_used, &before,
                   &after, deltas.data()));
  std::vector<double> coords = frame_coords(perturbed.ptr);
  maybe_write_frame(o.output, dim, count, coords);
  return rep.finish([&](json_builder& b) {
    b.begin_object();
    b.key("r_used");
    b.value(r_used);
    b.key("report_before");
    put_report(b, before);
    b.key("report_after");
    put_report(b, after);
    b.key("frame");
    put_frame(b, dim, count, coords.data());
    b.key("deltas");
    put_rows(b, dim, count, deltas.data());
    b.end_object();
  });
}

struct tighten_step_data {
  double r = 0.0;
  double bounds_before[2] = {0.0, 0.0};
  double bounds_after[2] = {0.0, 0.0};
  std::vector<double> eigenvalues_after;
  std::vector<double> coords_after;
};

int cmd_tighten(report& rep, const tighten_opts& o) {
  frame_handle f = load_frame(rep, "", o.path, parse_format(o.format));
  const std::size_t dim = fk_frame_dim(f.ptr);
  const std::size_t count = fk_frame_count(f.ptr);
  trace_handle trace;
  check(fk_tighten(f.ptr, &trace.ptr));

  const std::size_t steps = fk_trace_step_count(trace.ptr);
  std::vector<tighten_step_data> data(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    tighten_step_data& st = data[i];
    st.eigenvalues_after.resize(dim);
    check(fk_trace_step(trace.ptr, i, &st.r, st.bounds_before, st.bounds_after,
                        st.eigenvalues_after.data()));
    st.coords_after = frame_coords(fk_trace_step_frame(trace.ptr, i));
  }

  const fk_frame* final_frame = fk_trace_final_frame(trace.ptr);
  std::vector<double> final_coords = frame_coords(final_frame);
  fk_report final_report{};
  check(fk_analyze(final_frame, &final_report, nullptr));
  std::vector<double> total_deltas(count * dim);
  check(fk_trace_total_deltas(trace.ptr, total_deltas.data()));

  maybe_write_frame(o.output, dim, count, final_coords);

  auto put_step = [&](json_builder& b, std::size_t i, bool with_frame) {
    const tighten_step_data& st = data[i];
    b.begin_object();
    b.key("index");
    b.value(i + 1);
    b.key("r");
    b.value(st.r);
    b.key("bounds_before");
    put_bounds(b, st.bounds_before);
    b.key("bounds_after");
    put_bounds(b, st.bounds_after);
    b.key("eigenvalues_after");
    b.numbers(st.eigenvalues_after);
    if (with_frame) {
      b.key("frame_after");
      put_frame(b, dim, count, st.coords_after.data());
    }
    b.end_object();
  };

  if (!o.trace_path.empty()) {
    std::vector<double> input_coords = frame_coords(f.ptr);
    json_builder b;
    b.begin_object();
    b.key("input_frame");
    put_frame(b, dim, count, input_coords.data());
    b.key("steps");
    b.begin_array();
    for (std::size_t i = 0; i < steps; ++i) put_step(b, i, true);
    b.end_array();
    b.key("final_frame");
    put_frame(b, dim, count, final_coords.data());
    b.key("total_deltas");
    put_rows(b, dim, count, total_deltas.data());
    b.end_object();
    write_text_file(o.trace_path, b.take());
  }

  return rep.finish([&](json_builder& b) {
    b.begin_object();
    b.key("step_count");
    b.value(steps);
    b.key("steps");
    b.begin_array();
    for (std::size_t i = 0; i < steps; ++i) put_step(b, i, false);
    b.end_array();
    b.key("final_report");
    put_report(b, final_report);
    b.key("final_frame");
    put_frame(b, dim, count, final_coords.data());
    b.key("total_deltas");
    put_rows(b, dim, count, total_deltas.data());
    b.end_object();
  });
}

int cmd_stability(report& rep, const single_opts& o) {
  frame_handle f = load_frame(rep, "", o.path, parse_format(o.format));
  fk_report r{};
  check(fk_analyze(f.ptr, &r, nullptr));
  double radius = 0.0;
  check(fk_stability_radius(f.ptr, &radius));
  return rep.finish([&](json_builder& b) {
    b.begin_object();
    b.key("radius");
    b.value(radius);
    b.key("report");
    put_report(b, r);
    b.end_object();
  });
}

int cmd_pw_check(report& rep, const pair_opts& o) {
  frame_handle base = load_frame(rep, "base", o.base, parse_format(o.format));
  frame_handle perturbed =
      load_frame(rep, "perturbed", o.other, parse_format(o.format));
  fk_report base_report{};
  check(fk_analyze(base.ptr, &base_report, nullptr));
  fk_pw_certificate cert{};
  check(fk_pw_check(base.ptr, perturbed.ptr, &cert));
  if (!cert.admissible)
    rep.warn("perturbation is not admissible: mu_sharp is at least sqrt(lower_bound)");
  return rep.finish([&](json_builder& b) {
    b.begin_object();
    b.key("base_report");
    put_report(b, base_report);
    b.key("certificate");
    b.begin_object();
    b.key("lambda_const");
    b.value(cert.lambda_const);
    b.key("mu_crude");
    b.value(cert.mu_crude);
    b.key("mu_sharp");
    b.value(cert.mu_sharp);
    b.key("admissible");
    b.value(cert.admissible != 0);
    b.key("guaranteed_lower");
    b.value(cert.guaranteed_lower);
    b.key("guaranteed_upper");
    b.value(cert.guaranteed_upper);
    b.end_object();
    b.end_object();
  });
}

int cmd_append(report& rep, const pair_opts& o) {
  frame_handle base = load_frame(rep, "base", o.base, parse_format(o.format));
  frame_handle added = load_frame(rep, "added", o.other, parse_format(o.format));
  fk_append_verdict verdict{};
  check(fk_append_check(base.ptr, added.ptr, &verdict));
  return rep.finish([&](json_builder& b) {
    b.begin_object();
    b.key("verdict");
    b.begin_object();
    b.key("combined_tight");
    b.value(verdict.combined_tight != 0);
    b.key("appended_tight");
    b.value(verdict.appended_tight != 0);
    b.key("degenerate");
    b.value(verdict.degenerate != 0);
    b.key("appended_bound");
    if (verdict.has_bounds)
      b.value(verdict.appended_bound);
    else
      b.value_null();
    b.key("combined_bound");
    if (verdict.has_bounds)
      b.value(verdict.combined_bound);
    else
      b.value_null();
    b.end_object();
    b.end_object();
  });
}

int cmd_erase(report& rep, const erase_opts& o) {
  frame_handle base = load_frame(rep, "", o.path, parse_format(o.format));
  std::vector<std::size_t> zero_based;
  zero_based.reserve(o.indices.size());
  for (std::size_t index : o.indices) {
    if (index < 1)
      throw cli_failure{"invalid_indices", "erasure indices are 1-based", 2};
    zero_based.push_back(index - 1);
  }
  fk_erasure_verdict verdict{};
  std::vector<double> remainder_eigenvalues(fk_frame_dim(base.ptr));
  check(fk_erase_check(base.ptr, zero_based.data(), zero_based.size(), &verdict,
                       remainder_eigenvalues.data()));
  if (!verdict.remainder_is_frame) rep.warn("remainder is not a frame");
  return rep.finish([&](json_builder& b) {
    b.begin_object();
    b.key("verdict");
    b.begin_object();
    b.key("erased_count");
    b.value(verdict.erased_count);
    b.key("remainder_is_frame");
    b.value(verdict.remainder_is_frame != 0);
    b.key("remainder_tight");
    b.value(verdict.remainder_tight != 0);
    b.key("erased_tight");
    b.value(verdict.erased_tight != 0);
    b.key("rule_applied");
    b.value(verdict.rule_applied);
    b.key("remainder_report");
    if (verdict.has_remainder_report)
      put_report(b, verdict.remainder_report);
    else
      b.value_null();
    b.key("remainder_eigenvalues");
    if (verdict.remainder_is_frame)
      b.numbers(remainder_eigenvalues);
    else
      b.value_null();
    b.end_object();
    b.end_object();
  });
}

int cmd_diag2(report& rep, const diag2_opts& o) {
  frame_handle f = load_frame(rep, "", o.path, parse_format(o.format));
  fk_diag_result result{};
  frame_handle perturbed;
  check(fk_diagonalize_r2(f.ptr, &result, &perturbed.ptr));
  const std::size_t dim = fk_frame_dim(perturbed.ptr);
  const std::size_t count = fk_frame_count(perturbed.ptr);
  std::vector<double> coords = frame_coords(perturbed.ptr);
  maybe_write_frame(o.output, dim, count, coords);
  if (!result.still_frame) rep.warn("perturbed family no longer spans R^2");
  return rep.finish([&](json_builder& b) {
    b.begin_object();
    b.key("chosen_vector");
    b.value(result.chosen_vector + 1);
    b.key("chosen_row");
    b.value(result.chosen_row + 1);
    b.key("perturb_axis");
    b.value(result.perturb_axis + 1);
    b.key("epsilon");
    b.value(result.epsilon);
    b.key("still_frame");
    b.value(result.still_frame != 0);
    b.key("frame");
    put_frame(b, dim, count, coords.data());
    b.end_object();
  });
}

int cmd_blend(report& rep, const blend_opts& o) {
  frame_handle base = load_frame(rep, "base", o.base, parse_format(o.format));
  frame_handle other = load_frame(rep, "other", o.other, parse_format(o.format));
  if (o.weights.size() != fk_frame_count(base.ptr))
    throw cli_failure{"invalid_argument",
                      "blend requires one weight per vector", 2};
  frame_handle blended;
  fk_blend_certificate cert{};
  check(fk_blend(base.ptr, other.ptr, o.weights.data(), &blended.ptr, &cert));
  const std::size_t dim = fk_frame_dim(blended.ptr);
  const std::size_t count = fk_frame_count(blended.ptr);
  std::vector<double> coords = frame_coords(blended.ptr);
  maybe_write_frame(o.output, dim, count, coords);
  if (!cert.certified) rep.warn("tau exceeds the certification threshold");
  return rep.finish([&](json_builder& b) {
    b.begin_object();
    b.key("certificate");
    b.begin_object();
    b.key("tau");
    b.value(cert.tau);
    b.key("threshold");
    b.value(cert.threshold);
    b.key("mu_sharp");
    b.value(cert.mu_sharp);
    b.key("certified");
    b.value(cert.certified != 0);
    b.key("guaranteed_lower");
    if (cert.certified)
      b.value(cert.guaranteed_lower);
    else
      b.value_null();
    b.key("guaranteed_upper");
    if (cert.certified)
      b.value(cert.guaranteed_upper);
    else
      b.value_null();
    b.end_object();
    b.key("frame");
    put_frame(b, dim, count, coords.data());
    b.end_object();
  });
}

void add_format_option(CLI::App* sub, std::string& target) {
  sub->add_option("--format", target,
                  "Force the input format instead of detecting it by extension")
      ->check(CLI::IsMember({"json", "csv"}));
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analysis and constructive repair of finite frames in R^n"};
  app.name("framekit");
  app.require_subcommand(1);
  int exit_code = 0;

  auto an = std::make_shared<single_opts>();
  CLI::App* analyze = app.add_subcommand(
      "analyze", "Optimal frame bounds, condition number, and spectrum");
  analyze->add_option("frame", an->path, "Frame file (JSON or CSV)")->required();
  add_format_option(analyze, an->format);
  analyze->callback([an, &exit_code] {
    exit_code = guarded("analyze", [&](report& rep) { return cmd_analyze(rep, *an); });
  });

  auto im = std::make_shared<improve_opts>();
  CLI::App* improve = app.add_subcommand(
      "improve", "One condition-number-reducing perturbation step");
  improve->add_option("frame", im->path, "Frame file (JSON or CSV)")->required();
  improve->add_option("--epsilon", im->epsilon, "Perturbation budget (maximum vector displacement)")
      ->required();
  improve->add_option("--safety", im->safety, "Safety factor in (0,1)")
      ->capture_default_str();
  improve->add_option("-o,--output", im->output, "Write the perturbed frame to this file");
  add_format_option(improve, im->format);
  improve->callback([im, &exit_code] {
    exit_code = guarded("improve", [&](report& rep) { return cmd_improve(rep, *im); });
  });

  auto ti = std::make_shared<tighten_opts>();
  CLI::App* tighten =
      app.add_subcommand("tighten", "Perturb iteratively until the frame is tight");
  tighten->add_option("frame", ti->path, "Frame file (JSON or CSV)")->required();
  tighten->add_option("-o,--output", ti->output, "Write the tight frame to this file");
  tighten->add_option("--trace", ti->trace_path,
                      "Write the step-by-step trace to this JSON file");
  add_format_option(tighten, ti->format);
  tighten->callback([ti, &exit_code] {
    exit_code = guarded("tighten", [&](report& rep) { return cmd_tighten(rep, *ti); });
  });

  auto st = std::make_shared<single_opts>();
  CLI::App* stability = app.add_subcommand(
      "stability", "Per-vector perturbation radius that preserves the frame property");
  stability->add_option("frame", st->path, "Frame file (JSON or CSV)")->required();
  add_format_option(stability, st->format);
  stability->callback([st, &exit_code] {
    exit_code =
        guarded("stability", [&](report& rep) { return cmd_stability(rep, *st); });
  });

  auto pw = std::make_shared<pair_opts>();
  CLI::App* pw_check = app.add_subcommand(
      "pw-check", "Certify a perturbed frame against its base frame");
  pw_check->add_option("base", pw->base, "Base frame file")->required();
  pw_check->add_option("perturbed", pw->other, "Perturbed frame file")->required();
  add_format_option(pw_check, pw->format);
  pw_check->callback([pw, &exit_code] {
    exit_code =
        guarded("pw-check", [&](report& rep) { return cmd_pw_check(rep, *pw); });
  });

  auto ap = std::make_shared<pair_opts>();
  CLI::App* append = app.add_subcommand(
      "append", "Tightness verdict for appending vectors to a tight frame");
  append->add_option("base", ap->base, "Tight base frame file")->required();
  append->add_option("added", ap->other, "Appended vectors as a frame file")->required();
  add_format_option(append, ap->format);
  append->callback([ap, &exit_code] {
    exit_code = guarded("append", [&](report& rep) { return cmd_append(rep, *ap); });
  });

  auto er = std::make_shared<erase_opts>();
  CLI::App* erase = app.add_subcommand(
      "erase", "Tightness verdict for erasing vectors from a tight frame");
  erase->add_option("frame", er->path, "Tight base frame file")->required();
  erase->add_option("--indices", er->indices, "1-based vector indices to erase")
      ->required()
      ->delimiter(',');
  add_format_option(erase, er->format);
  erase->callback([er, &exit_code] {
    exit_code = guarded("erase", [&](report& rep) { return cmd_erase(rep, *er); });
  });

  auto dg = std::make_shared<diag2_opts>();
  CLI::App* diag2 = app.add_subcommand(
      "diag2", "Single-entry perturbation that diagonalizes the frame operator in R^2");
  diag2->add_option("frame", dg->path, "Frame file (JSON or CSV)")->required();
  diag2->add_option("-o,--output", dg->output, "Write the perturbed frame to this file");
  add_format_option(diag2, dg->format);
  diag2->callback([dg, &exit_code] {
    exit_code = guarded("diag2", [&](report& rep) { return cmd_diag2(rep, *dg); });
  });

  auto bl = std::make_shared<blend_opts>();
  CLI::App* blend = app.add_subcommand(
      "blend", "Vectorwise convex blend of two frames with certification");
  blend->add_option("base", bl->base, "Base frame file")->required();
  blend->add_option("other", bl->other, "Other frame file")->required();
  blend->add_option("--t", bl->weights, "Blend weights, one per vector")
      ->required()
      ->delimiter(',');
  blend->add_option("-o,--output", bl->output, "Write the blended frame to this file");
  add_format_option(blend, bl->format);
  blend->callback([bl, &exit_code] {
    exit_code = guarded("blend", [&](report& rep) { return cmd_blend(rep, *bl); });
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return exit_code;
}
