#include "fragcheck/json_type.hpp"

#include <algorithm>
#include <set>

#include "fragcheck/lexer.hpp"

namespace fragcheck {

namespace {
JsonTypePtr make(JsonType&& t) {
  return std::make_shared<JsonType>(std::move(t));
}
}  // namespace

JsonTypePtr JsonType::integer() {
  JsonType t;
  t.kind_ = Kind::Integer;
  return make(std::move(t));
}
JsonTypePtr JsonType::boolean() {
  JsonType t;
  t.kind_ = Kind::Bool;
  return make(std::move(t));
}
JsonTypePtr JsonType::string() {
  JsonType t;
  t.kind_ = Kind::String;
  return make(std::move(t));
}
JsonTypePtr JsonType::list(JsonTypePtr elem) {
  JsonType t;
  t.kind_ = Kind::List;
  t.elem_ = std::move(elem);
  return make(std::move(t));
}
JsonTypePtr JsonType::option(JsonTypePtr elem) {
  if (elem->kind() == Kind::Option)
    throw ValidationError("Option must not be directly nested");
  JsonType t;
  t.kind_ = Kind::Option;
  t.elem_ = std::move(elem);
  return make(std::move(t));
}
JsonTypePtr JsonType::object(FieldMap fields) {
  JsonType t;
  t.kind_ = Kind::Object;
  t.fields_ = std::move(fields);
  return make(std::move(t));
}
JsonTypePtr JsonType::enumeration(std::vector<std::string> values) {
  if (values.empty()) throw ValidationError("EnumTy must be non-empty");
  std::set<std::string> seen(values.begin(), values.end());
  if (seen.size() != values.size())
    throw ValidationError("EnumTy values must be duplicate-free");
  JsonType t;
  t.kind_ = Kind::Enum;
  t.enum_ = std::move(values);
  return make(std::move(t));
}
JsonTypePtr JsonType::name(std::string n) {
  JsonType t;
  t.kind_ = Kind::Name;
  t.name_ = std::move(n);
  return make(std::move(t));
}

bool JsonType::operator==(const JsonType& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case Kind::Integer:
    case Kind::Bool:
    case Kind::String: return true;
    case Kind::List:
    case Kind::Option: return *elem_ == *other.elem_;
    case Kind::Enum: return enum_ == other.enum_;
    case Kind::Name: return name_ == other.name_;
    case Kind::Object: {
      if (fields_.size() != other.fields_.size()) return false;
      auto it = other.fields_.begin();
      for (const auto& [k, v] : fields_) {
        if (it->first != k || !(*it->second == *v)) return false;
        ++it;
      }
      return true;
    }
  }
  return false;
}

std::string JsonType::to_string() const {
  switch (kind_) {
    case Kind::Integer: return "Integer";
    case Kind::Bool: return "Bool";
    case Kind::String: return "String";
    case Kind::List: return "List[" + elem_->to_string() + "]";
    case Kind::Option: return "Option[" + elem_->to_string() + "]";
    case Kind::Name: return name_;
    case Kind::Enum: {
      std::string out = "EnumTy[";
      for (size_t i = 0; i < enum_.size(); ++i) {
        if (i) out += ",";
        out += '"' + enum_[i] + '"';
      }
      return out + "]";
    }
    case Kind::Object: {
      std::string out = "{ ";
      bool first = true;
      for (const auto& [k, v] : fields_) {
        if (!first) out += ", ";
        first = false;
        out += k + ": " + v->to_string();
      }
      return out + " }";
    }
  }
  return "?";
}

TypeEnv::TypeEnv(std::map<std::string, JsonTypePtr> named)
    : named_(std::move(named)) {
  validate();
}

const JsonTypePtr& TypeEnv::lookup(const std::string& name) const {
  auto it = named_.find(name);
  if (it == named_.end())
    throw ValidationError("unknown type name '" + name + "'");
  return it->second;
}

JsonTypePtr TypeEnv::resolve(const JsonTypePtr& t) const {
  if (t->kind() == JsonType::Kind::Name) return lookup(t->type_name());
  return t;
}

std::vector<std::string> TypeEnv::ordered_names() const {
  std::vector<std::string> out;
  if (has(kRoot)) out.push_back(kRoot);
  for (const auto& [k, _] : named_)
    if (k != kRoot) out.push_back(k);
  return out;
}

namespace {

void collect_refs(const JsonTypePtr& t, std::vector<std::string>& refs) {
  switch (t->kind()) {
    case JsonType::Kind::Name: refs.push_back(t->type_name()); break;
    case JsonType::Kind::List:
    case JsonType::Kind::Option: collect_refs(t->elem(), refs); break;
    case JsonType::Kind::Object:
      for (const auto& [_, f] : t->fields()) collect_refs(f, refs);
      break;
    default: break;
  }
}

}  // namespace

void TypeEnv::validate() const {
  if (!has(kRoot))
    throw ValidationError("missing top-level type DB");
  // references resolve
  for (const auto& [name, def] : named_) {
    std::vector<std::string> refs;
    collect_refs(def, refs);
    for (const auto& r : refs)
      if (!has(r))
        throw ValidationError("type '" + name + "' references unknown type '" +
                              r + "'");
  }
  // no cycles
  std::map<std::string, int> state;  // 0 unvisited, 1 in progress, 2 done
  std::vector<std::string> stack;
  auto dfs = [&](auto&& self, const std::string& n) -> void {
    int& st = state[n];
    if (st == 2) return;
    if (st == 1)
      throw ValidationError("cyclic type definition involving '" + n + "'");
    st = 1;
    std::vector<std::string> refs;
    collect_refs(named_.at(n), refs);
    for (const auto& r : refs) self(self, r);
    st = 2;
  };
  for (const auto& [name, _] : named_) dfs(dfs, name);
}

namespace {

JsonTypePtr parse_type(Lexer& lex);

JsonTypePtr parse_bracketed(Lexer& lex) {
  lex.expect_punct("[");
  JsonTypePtr inner = parse_type(lex);
  lex.expect_punct("]");
  return inner;
}

JsonTypePtr parse_type(Lexer& lex) {
  const Token& t = lex.peek();
  if (!t.is(Token::Kind::Ident)) lex.fail("expected a type");
  std::string word = lex.next().text;
  if (word == "Integer") return JsonType::integer();
  if (word == "Bool") return JsonType::boolean();
  if (word == "String") return JsonType::string();
  if (word == "List") return JsonType::list(parse_bracketed(lex));
  if (word == "Option") {
    JsonTypePtr inner = parse_bracketed(lex);
    if (inner->kind() == JsonType::Kind::Option)
      lex.fail("Option must not be directly nested");
    return JsonType::option(inner);
  }
  if (word == "EnumTy") {
    lex.expect_punct("[");
    std::vector<std::string> values;
    for (;;) {
      if (!lex.peek().is(Token::Kind::String))
        lex.fail("expected string literal in EnumTy");
      values.push_back(lex.next().text);
      if (lex.accept_punct(",")) continue;
      lex.expect_punct("]");
      break;
    }
    std::set<std::string> seen(values.begin(), values.end());
    if (seen.size() != values.size()) lex.fail("duplicate EnumTy value");
    return JsonType::enumeration(std::move(values));
  }
  return JsonType::name(word);
}

}  // namespace

TypeEnv parse_type_defs(std::string_view text) {
  Lexer lex(text);
  std::map<std::string, JsonTypePtr> named;
  while (!lex.at_end()) {
    std::string name = lex.expect_ident("a type name");
    if (named.count(name))
      lex.fail("type '" + name + "' defined twice");
    lex.expect_punct("=");
    lex.expect_punct("{");
    JsonType::FieldMap fields;
    if (!lex.accept_punct("}")) {
      for (;;) {
        std::string field = lex.expect_ident("a field name");
        if (fields.count(field)) lex.fail("duplicate field '" + field + "'");
        lex.expect_punct(":");
        fields.emplace(std::move(field), parse_type(lex));
        if (lex.accept_punct(",")) continue;
        lex.expect_punct("}");
        break;
      }
    }
    named.emplace(std::move(name), JsonType::object(std::move(fields)));
  }
  return TypeEnv(std::move(named));
}

namespace {

std::optional<TypeMismatch> check_rec(const JsonValue& v, const JsonTypePtr& t,
                                      const TypeEnv& env,
                                      const std::string& path) {
  auto mismatch = [&](const std::string& msg) {
    return TypeMismatch{path, msg};
  };
  switch (t->kind()) {
    case JsonType::Kind::Integer:
      if (v.is_int()) return std::nullopt;
      return mismatch(std::string("expected Integer, found ") + v.kind_name());
    case JsonType::Kind::Bool:
      if (v.is_bool()) return std::nullopt;
      return mismatch(std::string("expected Bool, found ") + v.kind_name());
    case JsonType::Kind::String:
      if (v.is_string()) return std::nullopt;
      return mismatch(std::string("expected String, found ") + v.kind_name());
    case JsonType::Kind::Enum: {
      if (!v.is_string())
        return mismatch(std::string("expected enum string, found ") +
                        v.kind_name());
      const auto& vals = t->enum_values();
      if (std::find(vals.begin(), vals.end(), v.as_string()) != vals.end())
        return std::nullopt;
      return mismatch("\"" + v.as_string() + "\" is not in " + t->to_string());
    }
    case JsonType::Kind::Option:
      if (v.is_null()) return std::nullopt;
      return check_rec(v, t->elem(), env, path);
    case JsonType::Kind::List: {
      if (!v.is_array())
        return mismatch(std::string("expected ") + t->to_string() +
                        ", found " + v.kind_name());
      const auto& arr = v.as_array();
      for (size_t i = 0; i < arr.size(); ++i) {
        auto err = check_rec(arr[i], t->elem(), env,
                             path + "/" + std::to_string(i));
        if (err) return err;
      }
      return std::nullopt;
    }
    case JsonType::Kind::Name:
      return check_rec(v, env.lookup(t->type_name()), env, path);
    case JsonType::Kind::Object: {
      if (!v.is_object())
        return mismatch(std::string("expected object, found ") +
                        v.kind_name());
      const auto& obj = v.as_object();
      const auto& tf = t->fields();
      for (const auto& [f, ft] : tf)
        if (!obj.count(f)) return mismatch("missing field '" + f + "'");
      for (const auto& [f, _] : obj)
        if (!tf.count(f)) return mismatch("unexpected field '" + f + "'");
      for (const auto& [f, ft] : tf) {
        auto err = check_rec(obj.at(f), ft, env, path + "/" + f);
        if (err) return err;
      }
      return std::nullopt;
    }
  }
  return mismatch("unhandled type kind");
}

}  // namespace

bool check_type(const JsonValue& v, const JsonTypePtr& t, const TypeEnv& env) {
  return !check_rec(v, t, env, "").has_value();
}

std::optional<TypeMismatch> type_error(const JsonValue& v, const JsonTypePtr& t,
                                       const TypeEnv& env) {
  return check_rec(v, t, env, "");
}

}  // namespace fragcheck
