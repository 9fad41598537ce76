#pragma once

#include "blowdown/integer.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace blowdown {

/// JSON document tree whose numbers are exact integers of any size and whose objects
/// keep key order. Non-integer numbers are rejected at parse time.
class JsonValue {
 public:
  using Array = std::vector<JsonValue>;
  using Object = std::vector<std::pair<std::string, JsonValue>>;

  JsonValue() = default;
  JsonValue(std::nullptr_t) {}
  JsonValue(bool b) : value_(b) {}
  JsonValue(Integer i) : value_(std::move(i)) {}
  JsonValue(int i) : value_(Integer(i)) {}
  JsonValue(long i) : value_(Integer(i)) {}
  JsonValue(long long i) : value_(Integer(i)) {}
  JsonValue(unsigned long i) : value_(Integer(i)) {}
  JsonValue(std::string s) : value_(std::move(s)) {}
  JsonValue(const char* s) : value_(std::string(s)) {}
  JsonValue(Array a) : value_(std::move(a)) {}
  JsonValue(Object o) : value_(std::move(o)) {}

  bool is_null() const { return std::holds_alternative<std::nullptr_t>(value_); }
  bool is_bool() const { return std::holds_alternative<bool>(value_); }
  bool is_integer() const { return std::holds_alternative<Integer>(value_); }
  bool is_string() const { return std::holds_alternative<std::string>(value_); }
  bool is_array() const { return std::holds_alternative<Array>(value_); }
  bool is_object() const { return std::holds_alternative<Object>(value_); }

  bool as_bool() const { return std::get<bool>(value_); }
  const Integer& as_integer() const { return std::get<Integer>(value_); }
  const std::string& as_string() const { return std::get<std::string>(value_); }
  const Array& as_array() const { return std::get<Array>(value_); }
  Array& as_array() { return std::get<Array>(value_); }
  const Object& as_object() const { return std::get<Object>(value_); }
  Object& as_object() { return std::get<Object>(value_); }

  /// Object lookup; nullptr when absent or when this is not an object.
  const JsonValue* find(std::string_view key) const;

  /// Appends a key to an object value.
  JsonValue& set(std::string key, JsonValue value);

  /// Compact single-line text when indent < 0, otherwise pretty-printed.
  std::string dump(int indent = -1) const;

  const char* type_name() const;

  bool operator==(const JsonValue&) const = default;

 private:
  std::variant<std::nullptr_t, bool, Integer, std::string, Array, Object> value_;
};

/// Parses UTF-8 JSON text; C and C++ style comments are allowed. Throws ParseError
/// carrying line and column, or naming a duplicate key or non-integer number.
JsonValue parse_json(std::string_view text);

}  // namespace blowdown
