#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "scalar.hpp"

namespace multcert {

// Deterministic JSON emitter. Keys keep insertion order, doubles print with
// %.17g (lossless round trip), no whitespace. Byte-identical output for
// identical inputs is part of the report contract, which is why the vendored
// general-purpose serializer is not used for writing.
class JsonWriter {
 public:
  JsonWriter& begin_obj();
  JsonWriter& end_obj();
  JsonWriter& begin_arr();
  JsonWriter& end_arr();
  JsonWriter& key(std::string_view k);

  JsonWriter& value(double v);
  JsonWriter& value(std::int64_t v);
  JsonWriter& value(std::uint64_t v);
  JsonWriter& value(int v) { return value(std::int64_t(v)); }
  JsonWriter& value(bool v);
  JsonWriter& value(std::string_view v);
  JsonWriter& value(const char* v) { return value(std::string_view(v)); }
  JsonWriter& value_complex(const cdouble& z);  // {"re":..,"im":..}

  // Splices a pre-rendered JSON value verbatim. The caller owns its validity.
  JsonWriter& raw_value(std::string_view json);

  // The finished document. Call exactly once, after all containers closed.
  std::string take();

  static std::string format_double(double v);

 private:
  void separate();
  void append_escaped(std::string_view s);

  std::string out_;
  std::vector<bool> first_;  // per open container
  bool pending_key_ = false;
};

}  // namespace multcert
