#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fragcheck {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Syntax error with a source position (1-based line/column).
class ParseError : public Error {
public:
  ParseError(const std::string& msg, int line, int column)
      : Error(msg + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

/// Ill-sorted expression (wrong sorts, unknown symbol, arity mismatch).
class SortError : public Error {
public:
  using Error::Error;
};

/// Semantic problem in a loaded specification (bad composition, missing
/// types, ...). Carries a JSON-pointer-ish location when available.
class ValidationError : public Error {
public:
  explicit ValidationError(const std::string& msg, std::string where = "")
      : Error(where.empty() ? msg : msg + " (at " + where + ")"),
        where_(std::move(where)) {}

  const std::string& where() const { return where_; }

private:
  std::string where_;
};

/// Runtime failure while executing a script on a concrete database.
class ScriptRuntimeError : public Error {
public:
  using Error::Error;
};

/// Raised when ground evaluation cannot decide a formula (unbounded
/// quantifier, symbolic constant, ...). Never a silent default.
class ConcreteEvalError : public Error {
public:
  using Error::Error;
};

/// A JSON value: null, boolean, 64-bit integer, string, array or object.
/// Object fields are kept sorted by name, which normalizes equality and
/// serialization. Values are immutable in spirit: the model checker always
/// builds new values instead of mutating shared ones.
class JsonValue {
public:
  enum class Kind { Null, Bool, Int, String, Array, Object };

  using Array = std::vector<JsonValue>;
  using Object = std::map<std::string, JsonValue>;

  JsonValue() : kind_(Kind::Null) {}
  JsonValue(bool b) : kind_(Kind::Bool), bool_(b) {}
  JsonValue(std::int64_t i) : kind_(Kind::Int), int_(i) {}
  JsonValue(int i) : kind_(Kind::Int), int_(i) {}
  JsonValue(std::string s) : kind_(Kind::String), str_(std::move(s)) {}
  JsonValue(const char* s) : kind_(Kind::String), str_(s) {}
  JsonValue(Array a) : kind_(Kind::Array), arr_(std::move(a)) {}
  JsonValue(Object o) : kind_(Kind::Object), obj_(std::move(o)) {}

  static JsonValue null() { return JsonValue(); }

  Kind kind() const { return kind_; }
  bool is_null() const { return kind_ == Kind::Null; }
  bool is_bool() const { return kind_ == Kind::Bool; }
  bool is_int() const { return kind_ == Kind::Int; }
  bool is_string() const { return kind_ == Kind::String; }
  bool is_array() const { return kind_ == Kind::Array; }
  bool is_object() const { return kind_ == Kind::Object; }

  bool as_bool() const { expect(Kind::Bool); return bool_; }
  std::int64_t as_int() const { expect(Kind::Int); return int_; }
  const std::string& as_string() const { expect(Kind::String); return str_; }
  const Array& as_array() const { expect(Kind::Array); return arr_; }
  Array& as_array() { expect(Kind::Array); return arr_; }
  const Object& as_object() const { expect(Kind::Object); return obj_; }
  Object& as_object() { expect(Kind::Object); return obj_; }

  /// Object field lookup; nullptr when absent or not an object.
  const JsonValue* find(const std::string& field) const {
    if (kind_ != Kind::Object) return nullptr;
    auto it = obj_.find(field);
    return it == obj_.end() ? nullptr : &it->second;
  }

  bool operator==(const JsonValue& other) const;
  bool operator!=(const JsonValue& other) const { return !(*this == other); }

  /// Serialize. indent < 0 gives the compact form; otherwise pretty-print
  /// with the given indent width. Fields come out in sorted order.
  std::string dump(int indent = -1) const;

  const char* kind_name() const;

private:
  void expect(Kind k) const {
    if (kind_ != k)
      throw Error(std::string("json value is ") + kind_name() + ", not " +
                  kind_name_of(k));
  }
  static const char* kind_name_of(Kind k);

  Kind kind_;
  bool bool_ = false;
  std::int64_t int_ = 0;
  std::string str_;
  Array arr_;
  Object obj_;
};

/// Parse RFC-conformant JSON text. Restrictions on top of the RFC: numbers
/// must be integers (no fraction or exponent part) fitting in int64, and
/// sibling field names must be unique. Throws ParseError.
JsonValue parse_value(std::string_view text);

}  // namespace fragcheck
