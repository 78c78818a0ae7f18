#include "frame_io.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fio {

std::string_view io_errc_name(io_errc kind) {
  switch (kind) {
    case io_errc::format: return "format_error";
    case io_errc::empty_input: return "empty_input";
    case io_errc::dimension_mismatch: return "dimension_mismatch";
    case io_errc::io: return "io_error";
  }
  return "io_error";
}

frame_format detect_format(const std::string& path,
                           std::optional<frame_format> forced) {
  if (forced) return *forced;
  auto dot = path.rfind('.');
  if (dot != std::string::npos) {
    std::string ext = path.substr(dot + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (ext == "csv") return frame_format::csv;
  }
  return frame_format::json;
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw io_error(io_errc::io, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad())
    throw io_error(io_errc::io, "cannot read '" + path + "'");
  return std::move(buffer).str();
}

parsed_frame parse_json(const std::string& path, const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw io_error(io_errc::format, path + ": " + e.what());
  }
  if (!doc.is_object())
    throw io_error(io_errc::format, path + ": top-level value must be an object");
  for (const auto& item : doc.items())
    if (item.key() != "dim" && item.key() != "vectors")
      throw io_error(io_errc::format, path + ": unknown key \"" + item.key() + "\"");
  if (!doc.contains("dim"))
    throw io_error(io_errc::format, path + ": missing \"dim\"");
  if (!doc.contains("vectors"))
    throw io_error(io_errc::format, path + ": missing \"vectors\"");

  const auto& dim_value = doc["dim"];
  if (!dim_value.is_number_integer() || dim_value.get<long long>() < 1 ||
      dim_value.get<long long>() > 1000000)
    throw io_error(io_errc::format, path + ": \"dim\" must be a positive integer");
  std::size_t dim = dim_value.get<std::size_t>();

  const auto& vectors = doc["vectors"];
  if (!vectors.is_array())
    throw io_error(io_errc::format, path + ": \"vectors\" must be an array");
  if (vectors.empty())
    throw io_error(io_errc::empty_input, path + ": \"vectors\" is empty");

  parsed_frame frame;
  frame.dim = dim;
  frame.count = vectors.size();
  frame.coords.reserve(dim * vectors.size());
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    const auto& row = vectors[j];
    if (!row.is_array())
      throw io_error(io_errc::format, path + ": vector " + std::to_string(j + 1) +
                                          " is not an array");
    if (row.size() != dim)
      throw io_error(io_errc::dimension_mismatch,
                     path + ": vector " + std::to_string(j + 1) + " has length " +
                         std::to_string(row.size()) + ", expected " +
                         std::to_string(dim));
    for (std::size_t i = 0; i < dim; ++i) {
      if (!row[i].is_number())
        throw io_error(io_errc::format,
                       path + ": vector " + std::to_string(j + 1) + ", entry " +
                           std::to_string(i + 1) + " is not a number");
      frame.coords.push_back(row[i].get<double>());
    }
  }
  return frame;
}

std::string_view trim(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t'))
    text.remove_prefix(1);
  while (!text.empty() &&
         (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
    text.remove_suffix(1);
  return text;
}

parsed_frame parse_csv(const std::string& path, const std::string& text) {
  parsed_frame frame;
  std::size_t row = 0;
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    bool last = line_end == std::string::npos;
    std::string_view line(text.data() + line_start,
                          (last ? text.size() : line_end) - line_start);
    line_start = last ? text.size() + 1 : line_end + 1;

    std::string_view content = trim(line);
    if (content.empty()) {
      if (last) break;
      std::size_t rest = line_start;
      bool only_blank = true;
      while (rest < text.size()) {
        std::size_t next = text.find('\n', rest);
        std::string_view tail(text.data() + rest,
                              (next == std::string::npos ? text.size() : next) - rest);
        if (!trim(tail).empty()) { only_blank = false; break; }
        if (next == std::string::npos) break;
        rest = next + 1;
      }
      if (only_blank) break;
      throw io_error(io_errc::format,
                     path + ": blank line at row " + std::to_string(row + 1));
    }

    ++row;
    std::vector<double> values;
    std::size_t field_start = 0;
    std::size_t field_index = 0;
    while (field_start <= content.size()) {
      std::size_t comma = content.find(',', field_start);
      std::string_view field = trim(content.substr(
          field_start,
          (comma == std::string::npos ? content.size() : comma) - field_start));
      ++field_index;
      double parsed = 0.0;
      auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(),
                                       parsed);
      if (ec != std::errc() || end != field.data() + field.size() ||
          !std::isfinite(parsed))
        throw io_error(io_errc::format,
                       path + ": row " + std::to_string(row) + ", field " +
                           std::to_string(field_index) + ": not a finite number");
      values.push_back(parsed);
      if (comma == std::string::npos) break;
      field_start = comma + 1;
    }

    if (row == 1) {
      frame.dim = values.size();
    } else if (values.size() != frame.dim) {
      throw io_error(io_errc::dimension_mismatch,
                     path + ": row " + std::to_string(row) + " has " +
                         std::to_string(values.size()) + " fields, expected " +
                         std::to_string(frame.dim));
    }
    frame.coords.insert(frame.coords.end(), values.begin(), values.end());
  }
  if (row == 0)
    throw io_error(io_errc::empty_input, path + ": no vectors");
  frame.count = row;
  return frame;
}

} // namespace

parsed_frame parse_frame_file(const std::string& path,
                              std::optional<frame_format> forced) {
  std::string text = read_file(path);
  return detect_format(path, forced) == frame_format::json
             ? parse_json(path, text)
             : parse_csv(path, text);
}

std::string format_shortest(double value) {
  if (value == 0.0 && std::signbit(value)) return "-0.0";
  char buffer[32];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  assert(ec == std::errc());
  return std::string(buffer, end);
}

std::string format_report(double value) {
  if (!std::isfinite(value)) return "null";
  char buffer[40];
  int written = std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return std::string(buffer, static_cast<std::size_t>(written));
}

void write_frame_file(const std::string& path, frame_format format,
                      std::size_t dim, std::size_t count,
                      std::span<const double> coords) {
  std::string text;
  if (format == frame_format::json) {
    text += "{\n  \"dim\": " + std::to_string(dim) + ",\n  \"vectors\": [\n";
    for (std::size_t j = 0; j < count; ++j) {
      text += "    [";
      for (std::size_t i = 0; i < dim; ++i) {
        if (i) text += ", ";
        text += format_shortest(coords[j * dim + i]);
      }
      text += j + 1 < count ? "],\n" : "]\n";
    }
    text += "  ]\n}\n";
  } else {
    for (std::size_t j = 0; j < count; ++j) {
      for (std::size_t i = 0; i < dim; ++i) {
        if (i) text += ',';
        text += format_shortest(coords[j * dim + i]);
      }
      text += '\n';
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw io_error(io_errc::io, "cannot open '" + path + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out)
    throw io_error(io_errc::io, "cannot write '" + path + "'");
}

void json_builder::begin_object() {
  prepare_slot();
  raw("{");
  stack_.push_back({false, true});
}

void json_builder::end_object() {
  bool empty = stack_.back().first;
  stack_.pop_back();
  if (empty) {
    raw("}");
  } else {
    raw("\n");
    indent(stack_.size());
    raw("}");
  }
}

void json_builder::begin_array() {
  prepare_slot();
  raw("[");
  stack_.push_back({true, true});
}

void json_builder::end_array() {
  bool empty = stack_.back().first;
  stack_.pop_back();
  if (empty) {
    raw("]");
  } else {
    raw("\n");
    indent(stack_.size());
    raw("]");
  }
}

void json_builder::key(std::string_view name) {
  level& top = stack_.back();
  if (!top.first) raw(",");
  raw("\n");
  indent(stack_.size());
  top.first = false;
  raw("\"");
  raw(name);
  raw("\": ");
  pending_key_ = true;
}

void json_builder::prepare_slot() {
  if (pending_key_) {
    pending_key_ = false;
    return;
  }
  if (stack_.empty()) return;
  level& top = stack_.back();
  if (!top.first) raw(",");
  raw("\n");
  indent(stack_.size());
  top.first = false;
}

void json_builder::indent(std::size_t depth) {
  out_.append(2 * depth, ' ');
}

void json_builder::raw(std::string_view token) { out_ += token; }

void json_builder::value(double number) {
  prepare_slot();
  raw(format_report(number));
}

void json_builder::value(bool flag) {
  prepare_slot();
  raw(flag ? "true" : "false");
}

void json_builder::value(std::size_t number) {
  prepare_slot();
  raw(std::to_string(number));
}

void json_builder::value(std::string_view text) {
  prepare_slot();
  raw("\"");
  for (char c : text) {
    switch (c) {
      case '"': raw("\\\""); break;
      case '\\': raw("\\\\"); break;
      case '\n': raw("\\n"); break;
      case '\r': raw("\\r"); break;
      case '\t': raw("\\t"); break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buffer[8];
          std::snprintf(buffer, sizeof buffer, "\\u%04x", c);
          raw(buffer);
        } else {
          out_ += c;
        }
    }
  }
  raw("\"");
}

void json_builder::value(const char* text) { value(std::string_view(text)); }

void json_builder::value_null() {
  prepare_slot();
  raw("null");
}

void json_builder::numbers(std::span<const double> values) {
  prepare_slot();
  raw("[");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) raw(", ");
    raw(format_report(values[i]));
  }
  raw("]");
}

std::string json_builder::take() {
  out_ += '\n';
  return std::move(out_);
}

} // namespace fio
