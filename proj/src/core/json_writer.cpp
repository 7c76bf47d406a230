#include "core/json_writer.hpp"

#include <cmath>
#include <cstdio>

#include "core/errors.hpp"

namespace sanov {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

void JsonWriter::element_prefix() {
  if (pending_key_) {
    pending_key_ = false;
    return;
  }
  if (!needs_comma_.empty()) {
    if (needs_comma_.back()) buf_ += ',';
    needs_comma_.back() = true;
  }
}

void JsonWriter::append_escaped(std::string_view v) {
  buf_ += '"';
  for (char c : v) {
    switch (c) {
      case '"': buf_ += "\\\""; break;
      case '\\': buf_ += "\\\\"; break;
      case '\n': buf_ += "\\n"; break;
      case '\r': buf_ += "\\r"; break;
      case '\t': buf_ += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char esc[8];
          std::snprintf(esc, sizeof(esc), "\\u%04x", c);
          buf_ += esc;
        } else {
          buf_ += c;
        }
    }
  }
  buf_ += '"';
}

JsonWriter& JsonWriter::obj_begin() {
  element_prefix();
  buf_ += '{';
  needs_comma_.push_back(false);
  return *this;
}

JsonWriter& JsonWriter::obj_end() {
  buf_ += '}';
  needs_comma_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::arr_begin() {
  element_prefix();
  buf_ += '[';
  needs_comma_.push_back(false);
  return *this;
}

JsonWriter& JsonWriter::arr_end() {
  buf_ += ']';
  needs_comma_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::key(std::string_view name) {
  if (!needs_comma_.empty() && needs_comma_.back()) buf_ += ',';
  if (!needs_comma_.empty()) needs_comma_.back() = true;
  append_escaped(name);
  buf_ += ':';
  pending_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::num(double v) {
  if (!std::isfinite(v)) {
    throw Error(ErrorKind::internal, "attempted to serialize a non-finite float");
  }
  element_prefix();
  buf_ += format_double(v);
  return *this;
}

JsonWriter& JsonWriter::num_int(int64_t v) {
  element_prefix();
  buf_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::num_uint(uint64_t v) {
  element_prefix();
  buf_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::str(std::string_view v) {
  element_prefix();
  append_escaped(v);
  return *this;
}

JsonWriter& JsonWriter::boolean(bool v) {
  element_prefix();
  buf_ += v ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::null() {
  element_prefix();
  buf_ += "null";
  return *this;
}

JsonWriter& JsonWriter::num_array(const std::vector<double>& values) {
  arr_begin();
  for (double v : values) num(v);
  return arr_end();
}

std::string JsonWriter::take() { return std::move(buf_); }

}  // namespace sanov
