#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fragcheck/json_value.hpp"

namespace fragcheck {

class JsonType;
using JsonTypePtr = std::shared_ptr<const JsonType>;

/// A JSON type: Integer | Bool | String | List[t] | Option[t]
/// | ObjTy{field: t, ...} | EnumTy["a","b",...] | a type name.
/// Named definitions always denote object types; the other constructors
/// occur in field positions.
class JsonType {
public:
  enum class Kind { Integer, Bool, String, List, Option, Object, Enum, Name };

  using FieldMap = std::map<std::string, JsonTypePtr>;

  static JsonTypePtr integer();
  static JsonTypePtr boolean();
  static JsonTypePtr string();
  static JsonTypePtr list(JsonTypePtr elem);
  static JsonTypePtr option(JsonTypePtr elem);  // rejects Option[Option[t]]
  static JsonTypePtr object(FieldMap fields);
  static JsonTypePtr enumeration(std::vector<std::string> values);
  static JsonTypePtr name(std::string n);

  Kind kind() const { return kind_; }
  const JsonTypePtr& elem() const { return elem_; }          // List/Option
  const FieldMap& fields() const { return fields_; }          // Object
  const std::vector<std::string>& enum_values() const { return enum_; }
  const std::string& type_name() const { return name_; }      // Name

  bool operator==(const JsonType& other) const;
  std::string to_string() const;

private:
  JsonType() = default;

  Kind kind_ = Kind::Integer;
  JsonTypePtr elem_;
  FieldMap fields_;
  std::vector<std::string> enum_;
  std::string name_;
};

/// Where a value failed to check against a type.
struct TypeMismatch {
  std::string path;     // JSON-pointer-ish, "" for the root, "/status/paid"
  std::string message;  // what was expected vs found
};

/// Named type definitions. The root type is always called DB; name
/// references resolve and are acyclic.
class TypeEnv {
public:
  static constexpr const char* kRoot = "DB";

  TypeEnv() = default;
  explicit TypeEnv(std::map<std::string, JsonTypePtr> named);

  const std::map<std::string, JsonTypePtr>& named_types() const {
    return named_;
  }
  const JsonTypePtr& root() const { return lookup(kRoot); }

  bool has(const std::string& name) const { return named_.count(name) > 0; }
  const JsonTypePtr& lookup(const std::string& name) const;

  /// Resolve one level of Name indirection (identity on other kinds).
  JsonTypePtr resolve(const JsonTypePtr& t) const;

  /// Names of the named types in definition-resolving order (DB first,
  /// then the rest sorted).
  std::vector<std::string> ordered_names() const;

private:
  void validate() const;
  std::map<std::string, JsonTypePtr> named_;
};

/// Parse Fig-style type definitions:
///   DB = { order: List[Integer], gold: Bool, ... }
///   Stock = { ident: String, ... }
/// Validates: DB present, references resolve, no cycles, no Option[Option],
/// enums non-empty and duplicate-free.
TypeEnv parse_type_defs(std::string_view text);

/// The typing relation v : t. Total; true iff derivable.
bool check_type(const JsonValue& v, const JsonTypePtr& t, const TypeEnv& env);

/// Structural explanation for a failed check; nullopt when v : t holds.
std::optional<TypeMismatch> type_error(const JsonValue& v, const JsonTypePtr& t,
                                       const TypeEnv& env);

}  // namespace fragcheck
