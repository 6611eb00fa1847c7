#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fragcheck/json_type.hpp"

namespace fragcheck {

/// A sort of the derived first-order signature: Z, Bool, String, one sort
/// per named object type, and List/Option sorts over element sorts.
class Sort {
public:
  enum class Kind { Int, Bool, String, Object, List, Option };

  static Sort integer() { return Sort(Kind::Int); }
  static Sort boolean() { return Sort(Kind::Bool); }
  static Sort string() { return Sort(Kind::String); }
  static Sort object(std::string name) {
    Sort s(Kind::Object);
    s.name_ = std::move(name);
    return s;
  }
  static Sort list(Sort elem) {
    Sort s(Kind::List);
    s.elem_ = std::make_shared<Sort>(std::move(elem));
    return s;
  }
  static Sort option(Sort elem) {
    Sort s(Kind::Option);
    s.elem_ = std::make_shared<Sort>(std::move(elem));
    return s;
  }

  Kind kind() const { return kind_; }
  const std::string& object_name() const { return name_; }
  const Sort& elem() const { return *elem_; }

  bool operator==(const Sort& other) const;
  bool operator!=(const Sort& other) const { return !(*this == other); }
  bool operator<(const Sort& other) const { return mangled() < other.mangled(); }

  /// Display name, e.g. "Z", "Bool", "Status", "List[Stock]".
  std::string to_string() const;
  /// Lowercase identifier-safe name, e.g. "int", "status", "list_stock".
  std::string mangled() const;

private:
  explicit Sort(Kind k) : kind_(k) {}
  Kind kind_;
  std::string name_;
  std::shared_ptr<Sort> elem_;
};

/// Sort of a field type inside the signature: Integer -> Z, Bool -> Bool,
/// String/EnumTy -> String, names -> object sorts, List/Option lifted.
Sort sort_of_type(const JsonTypePtr& t, const TypeEnv& env);

struct FuncDecl {
  std::string name;  // surface name: "paid", "upd_paid", "index", "length"
  std::string uid;   // unique internal name: "status_paid", "index_int"
  std::vector<Sort> args;
  Sort result;
  // set for object accessors/updators
  std::string owner_type;  // "Status"
  std::string field;       // "paid"
};

struct PredDecl {
  std::string name;  // "mem", "isEmpty", ">", "completed"
  std::string uid;
  std::vector<Sort> args;
  bool defined = false;  // predicate introduced by a definition
};

using FuncDeclPtr = std::shared_ptr<const FuncDecl>;
using PredDeclPtr = std::shared_ptr<const PredDecl>;

/// Symbol table derived from a TypeEnv: accessors and updators per object
/// field, list operations per list sort, option embedding per option sort,
/// integer arithmetic, and the dedicated variable db of sort DB.
/// Definition predicates are registered on top during spec loading.
class Signature {
public:
  Signature() = default;

  const Sort& db_sort() const { return *db_sort_; }

  /// All sorts mentioned by the signature, mangled-name ordered.
  std::vector<Sort> sorts() const;

  const std::vector<FuncDeclPtr>& functions() const { return functions_; }
  const std::vector<PredDeclPtr>& predicates() const { return predicates_; }

  FuncDeclPtr find_function(const std::string& uid) const;
  PredDeclPtr find_predicate(const std::string& uid) const;

  /// Overload resolution by surface name and argument sorts.
  FuncDeclPtr resolve_function(const std::string& name,
                               const std::vector<Sort>& args) const;
  PredDeclPtr resolve_predicate(const std::string& name,
                                const std::vector<Sort>& args) const;

  /// Object field accessor/updator for sort `owner` (an object sort).
  FuncDeclPtr accessor(const Sort& owner, const std::string& field) const;
  FuncDeclPtr updator(const Sort& owner, const std::string& field) const;

  /// List operations for a given list sort.
  FuncDeclPtr list_index(const Sort& list) const;
  FuncDeclPtr list_update(const Sort& list) const;
  FuncDeclPtr list_append(const Sort& list) const;
  FuncDeclPtr list_length(const Sort& list) const;
  PredDeclPtr list_is_empty(const Sort& list) const;
  PredDeclPtr list_mem(const Sort& list) const;

  /// Option embedding for a given option sort.
  FuncDeclPtr option_some(const Sort& option) const;
  FuncDeclPtr option_none(const Sort& option) const;
  FuncDeclPtr option_the(const Sort& option) const;

  /// Arithmetic symbols over Z.
  FuncDeclPtr arith_add() const { return find_function("add"); }
  FuncDeclPtr arith_sub() const { return find_function("sub"); }
  PredDeclPtr cmp(const std::string& op) const;  // ">", ">=", "<", "<="

  /// Registers a defined predicate (from a Definition). Fails on redefinition.
  PredDeclPtr add_defined_predicate(const std::string& name,
                                    std::vector<Sort> args);

  /// Field type (as declared) behind an accessor, for null handling.
  const TypeEnv& type_env() const { return env_; }

  friend Signature derive_signature(const TypeEnv& env);

private:
  FuncDeclPtr add_function(FuncDecl d);
  PredDeclPtr add_predicate(PredDecl d);
  void add_structural(const Sort& s);

  TypeEnv env_;
  std::shared_ptr<Sort> db_sort_;
  std::vector<FuncDeclPtr> functions_;
  std::vector<PredDeclPtr> predicates_;
  std::map<std::string, FuncDeclPtr> functions_by_uid_;
  std::map<std::string, PredDeclPtr> predicates_by_uid_;
  std::vector<Sort> structural_sorts_;  // list/option sorts in use
};

/// Build the signature for a type environment (the env must be valid).
Signature derive_signature(const TypeEnv& env);

}  // namespace fragcheck
