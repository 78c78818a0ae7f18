#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fio {

enum class frame_format { json, csv };

/// Raw frame data as read from disk, before any library validation.
struct parsed_frame {
  std::size_t dim = 0;
  std::size_t count = 0;
  std::vector<double> coords;
};

enum class io_errc { format, empty_input, dimension_mismatch, io };

class io_error : public std::runtime_error {
public:
  io_error(io_errc kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  io_errc kind() const noexcept { return kind_; }

private:
  io_errc kind_;
};

/// Stable identifier for an I/O error kind, e.g. "format_error".
std::string_view io_errc_name(io_errc kind);

/// Picks the format from `forced` if set, otherwise from the file extension
/// (".csv" means CSV, anything else JSON).
frame_format detect_format(const std::string& path,
                           std::optional<frame_format> forced);

/// Reads a frame file.  JSON files must be {"dim": n, "vectors": [[...]]}
/// with no other keys; CSV files hold one comma-separated vector per line.
parsed_frame parse_frame_file(const std::string& path,
                              std::optional<frame_format> forced);

/// Writes a frame file in the given format.  Numbers are emitted in
/// shortest round-trip decimal form, so a rewritten file parses back to
/// bit-identical coordinates.
void write_frame_file(const std::string& path, frame_format format,
                      std::size_t dim, std::size_t count,
                      std::span<const double> coords);

/// Shortest decimal form that parses back to exactly the same double.
std::string format_shortest(double value);

/// Fixed 17-significant-digit form used in reports; non-finite values are
/// rendered as "null".
std::string format_report(double value);

/// Streaming JSON writer with deterministic layout: two-space indentation,
/// keys in insertion order, scalar arrays via numbers() on a single line.
class json_builder {
public:
  void begin_object();
  void end_object();
  void begin_array();
  void end_array();
  void key(std::string_view name);
  void value(double number);
  void value(bool flag);
  void value(std::size_t number);
  void value(std::string_view text);
  void value(const char* text);
  void value_null();
  /// One-line array of report-formatted numbers: [1, 4].
  void numbers(std::span<const double> values);
  /// Finishes the document (trailing newline) and returns the bytes.
  std::string take();

private:
  struct level {
    bool is_array;
    bool first;
  };
  void prepare_slot();
  void indent(std::size_t depth);
  void raw(std::string_view token);

  std::string out_;
  std::vector<level> stack_;
  bool pending_key_ = false;
};

} // namespace fio
