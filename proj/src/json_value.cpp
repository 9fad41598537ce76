#include "blowdown/json_value.hpp"

#include "blowdown/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>
#include <sstream>

namespace blowdown {

const JsonValue* JsonValue::find(std::string_view key) const {
  if (!is_object()) return nullptr;
  for (const auto& [k, v] : as_object())
    if (k == key) return &v;
  return nullptr;
}

JsonValue& JsonValue::set(std::string key, JsonValue value) {
  if (is_null()) value_ = Object{};
  auto& obj = as_object();
  obj.emplace_back(std::move(key), std::move(value));
  return obj.back().second;
}

const char* JsonValue::type_name() const {
  switch (value_.index()) {
    case 0:
      return "null";
    case 1:
      return "boolean";
    case 2:
      return "integer";
    case 3:
      return "string";
    case 4:
      return "array";
    default:
      return "object";
  }
}

namespace {

void dump_to(const JsonValue& v, std::ostringstream& os, int indent, int depth) {
  const bool pretty = indent >= 0;
  auto newline = [&](int d) {
    if (!pretty) return;
    os << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
  };
  if (v.is_null()) {
    os << "null";
  } else if (v.is_bool()) {
    os << (v.as_bool() ? "true" : "false");
  } else if (v.is_integer()) {
    os << v.as_integer();
  } else if (v.is_string()) {
    os << nlohmann::json(v.as_string()).dump();
  } else if (v.is_array()) {
    const auto& a = v.as_array();
    // Arrays of scalars stay on one line even when pretty-printing.
    const bool flat = std::none_of(a.begin(), a.end(), [](const JsonValue& e) { return e.is_array() || e.is_object(); });
    os << '[';
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i) os << (pretty && flat ? ", " : ",");
      if (!flat) newline(depth + 1);
      dump_to(a[i], os, indent, depth + 1);
    }
    if (!flat && !a.empty()) newline(depth);
    os << ']';
  } else {
    const auto& o = v.as_object();
    os << '{';
    for (std::size_t i = 0; i < o.size(); ++i) {
      if (i) os << ',';
      newline(depth + 1);
      os << nlohmann::json(o[i].first).dump() << (pretty ? ": " : ":");
      dump_to(o[i].second, os, indent, depth + 1);
    }
    if (!o.empty()) newline(depth);
    os << '}';
  }
}

class TreeBuilder : public nlohmann::json_sax<nlohmann::json> {
 public:
  bool null() override { return put(JsonValue(nullptr)); }
  bool boolean(bool val) override { return put(JsonValue(val)); }
  bool number_integer(number_integer_t val) override { return put(JsonValue(Integer(val))); }
  bool number_unsigned(number_unsigned_t val) override { return put(JsonValue(Integer(val))); }
  bool number_float(number_float_t, const string_t& s) override {
    // Integer literals too wide for 64 bits arrive here with their exact text.
    const bool integral = !s.empty() && s.find_first_not_of("-0123456789") == std::string::npos;
    if (!integral) {
      error_ = "non-integer number " + s + " (fixture numbers must be integers)";
      return false;
    }
    return put(JsonValue(parse_integer(s)));
  }
  bool string(string_t& val) override { return put(JsonValue(std::move(val))); }
  bool binary(binary_t&) override {
    error_ = "binary values are not supported";
    return false;
  }
  bool start_object(std::size_t) override {
    if (!put(JsonValue(JsonValue::Object{}))) return false;
    keys_.emplace_back();
    return true;
  }
  bool key(string_t& val) override {
    if (!keys_.back().insert(val).second) {
      error_ = "duplicate key '" + val + "'";
      return false;
    }
    pending_key_ = std::move(val);
    return true;
  }
  bool end_object() override {
    keys_.pop_back();
    stack_.pop_back();
    return true;
  }
  bool start_array(std::size_t) override { return put(JsonValue(JsonValue::Array{})); }
  bool end_array() override {
    stack_.pop_back();
    return true;
  }
  bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception& ex) override {
    error_ = ex.what();
    return false;
  }

  JsonValue& root() { return root_; }
  const std::string& error() const { return error_; }

 private:
  bool put(JsonValue v) {
    const bool container = v.is_array() || v.is_object();
    JsonValue* slot = nullptr;
    if (stack_.empty()) {
      root_ = std::move(v);
      slot = &root_;
    } else if (stack_.back()->is_array()) {
      auto& arr = stack_.back()->as_array();
      arr.push_back(std::move(v));
      slot = &arr.back();
    } else {
      slot = &stack_.back()->set(std::move(pending_key_), std::move(v));
    }
    if (container) stack_.push_back(slot);
    return true;
  }

  JsonValue root_;
  std::vector<JsonValue*> stack_;
  std::vector<std::set<std::string>> keys_;
  std::string pending_key_;
  std::string error_;
};

}  // namespace

std::string JsonValue::dump(int indent) const {
  std::ostringstream os;
  dump_to(*this, os, indent, 0);
  return os.str();
}

JsonValue parse_json(std::string_view text) {
  TreeBuilder builder;
  const bool ok = nlohmann::json::sax_parse(text.begin(), text.end(), &builder, nlohmann::json::input_format_t::json,
                                            /*strict=*/true, /*ignore_comments=*/true);
  if (!ok) throw ParseError(builder.error().empty() ? std::string("malformed JSON") : builder.error());
  return std::move(builder.root());
}

}  // namespace blowdown
