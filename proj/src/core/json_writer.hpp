#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sanov {

// Deterministic JSON emitter: insertion-ordered keys, floats printed with 17
// significant digits, no locale or shortest-round-trip variability. Reports
// must be byte-stable for fixed inputs, which rules out generic serializers.
class JsonWriter {
 public:
  JsonWriter& obj_begin();
  JsonWriter& obj_end();
  JsonWriter& arr_begin();
  JsonWriter& arr_end();
  JsonWriter& key(std::string_view name);
  JsonWriter& num(double v);
  JsonWriter& num_int(int64_t v);
  JsonWriter& num_uint(uint64_t v);
  JsonWriter& str(std::string_view v);
  JsonWriter& boolean(bool v);
  JsonWriter& null();

  // convenience for numeric arrays
  JsonWriter& num_array(const std::vector<double>& values);

  std::string take();

 private:
  void element_prefix();
  void append_escaped(std::string_view v);

  std::string buf_;
  // true when the next value at this depth needs a comma first
  std::vector<bool> needs_comma_;
  bool pending_key_ = false;
};

// "%.17g" rendering shared with the CSV writer.
std::string format_double(double v);

}  // namespace sanov
