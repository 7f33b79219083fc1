#pragma once

// Internal helpers shared by the JSON readers. Not installed.

#include <fstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "mgtd/error.hpp"

namespace mgtd::detail {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

inline Json parse_json(std::string_view text, std::size_t line, std::string_view what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError("malformed " + std::string(what) + ": " + e.what(), line);
  }
}

inline const Json& require(const Json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end()) throw FormatError(std::string("missing field \"") + key + "\"", line);
  return *it;
}

inline double as_real(const Json& v, const char* key, std::size_t line) {
  if (!v.is_number()) throw FormatError(std::string("field \"") + key + "\" must be a number", line);
  return v.get<double>();
}

inline long long as_integer(const Json& v, const char* key, std::size_t line) {
  if (!v.is_number_integer())
    throw FormatError(std::string("field \"") + key + "\" must be an integer", line);
  return v.get<long long>();
}

inline const std::string& as_string(const Json& v, const char* key, std::size_t line) {
  if (!v.is_string()) throw FormatError(std::string("field \"") + key + "\" must be a string", line);
  return v.get_ref<const std::string&>();
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path + " for reading");
  return in;
}

inline std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  return out;
}

inline void check_written(const std::ostream& out, const std::string& what) {
  if (!out) throw IoError("write failed: " + what);
}

}  // namespace mgtd::detail
