#include "fragcheck/signature.hpp"

#include <algorithm>
#include <set>

namespace fragcheck {

bool Sort::operator==(const Sort& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case Kind::Int:
    case Kind::Bool:
    case Kind::String: return true;
    case Kind::Object: return name_ == other.name_;
    case Kind::List:
    case Kind::Option: return *elem_ == *other.elem_;
  }
  return false;
}

std::string Sort::to_string() const {
  switch (kind_) {
    case Kind::Int: return "Z";
    case Kind::Bool: return "Bool";
    case Kind::String: return "String";
    case Kind::Object: return name_;
    case Kind::List: return "List[" + elem_->to_string() + "]";
    case Kind::Option: return "Option[" + elem_->to_string() + "]";
  }
  return "?";
}

std::string Sort::mangled() const {
  switch (kind_) {
    case Kind::Int: return "int";
    case Kind::Bool: return "jbool";
    case Kind::String: return "jstring";
    case Kind::Object: {
      std::string out;
      for (char c : name_) out += static_cast<char>(std::tolower(c));
      return out;
    }
    case Kind::List: return "list_" + elem_->mangled();
    case Kind::Option: return "option_" + elem_->mangled();
  }
  return "?";
}

Sort sort_of_type(const JsonTypePtr& t, const TypeEnv& env) {
  switch (t->kind()) {
    case JsonType::Kind::Integer: return Sort::integer();
    case JsonType::Kind::Bool: return Sort::boolean();
    case JsonType::Kind::String:
    case JsonType::Kind::Enum: return Sort::string();
    case JsonType::Kind::List:
      return Sort::list(sort_of_type(t->elem(), env));
    case JsonType::Kind::Option:
      return Sort::option(sort_of_type(t->elem(), env));
    case JsonType::Kind::Name: {
      // named definitions are object types; the name is the sort
      env.lookup(t->type_name());
      return Sort::object(t->type_name());
    }
    case JsonType::Kind::Object:
      throw SortError("anonymous object types have no sort");
  }
  throw SortError("unhandled type kind");
}

FuncDeclPtr Signature::add_function(FuncDecl d) {
  auto p = std::make_shared<const FuncDecl>(std::move(d));
  if (functions_by_uid_.count(p->uid))
    throw SortError("duplicate function symbol '" + p->uid + "'");
  functions_.push_back(p);
  functions_by_uid_[p->uid] = p;
  return p;
}

PredDeclPtr Signature::add_predicate(PredDecl d) {
  auto p = std::make_shared<const PredDecl>(std::move(d));
  if (predicates_by_uid_.count(p->uid))
    throw SortError("duplicate predicate symbol '" + p->uid + "'");
  predicates_.push_back(p);
  predicates_by_uid_[p->uid] = p;
  return p;
}

FuncDeclPtr Signature::find_function(const std::string& uid) const {
  auto it = functions_by_uid_.find(uid);
  return it == functions_by_uid_.end() ? nullptr : it->second;
}

PredDeclPtr Signature::find_predicate(const std::string& uid) const {
  auto it = predicates_by_uid_.find(uid);
  return it == predicates_by_uid_.end() ? nullptr : it->second;
}

FuncDeclPtr Signature::resolve_function(const std::string& name,
                                        const std::vector<Sort>& args) const {
  for (const auto& f : functions_)
    if (f->name == name && f->args == args) return f;
  return nullptr;
}

PredDeclPtr Signature::resolve_predicate(const std::string& name,
                                         const std::vector<Sort>& args) const {
  for (const auto& p : predicates_)
    if (p->name == name && p->args == args) return p;
  return nullptr;
}

FuncDeclPtr Signature::accessor(const Sort& owner,
                                const std::string& field) const {
  if (owner.kind() != Sort::Kind::Object) return nullptr;
  return find_function(owner.mangled() + "_" + field);
}

FuncDeclPtr Signature::updator(const Sort& owner,
                               const std::string& field) const {
  if (owner.kind() != Sort::Kind::Object) return nullptr;
  return find_function("upd_" + owner.mangled() + "_" + field);
}

FuncDeclPtr Signature::list_index(const Sort& list) const {
  return find_function("index_" + list.elem().mangled());
}
FuncDeclPtr Signature::list_update(const Sort& list) const {
  return find_function("update_" + list.elem().mangled());
}
FuncDeclPtr Signature::list_append(const Sort& list) const {
  return find_function("append_" + list.elem().mangled());
}
FuncDeclPtr Signature::list_length(const Sort& list) const {
  return find_function("length_" + list.elem().mangled());
}
PredDeclPtr Signature::list_is_empty(const Sort& list) const {
  return find_predicate("isempty_" + list.elem().mangled());
}
PredDeclPtr Signature::list_mem(const Sort& list) const {
  return find_predicate("mem_" + list.elem().mangled());
}

FuncDeclPtr Signature::option_some(const Sort& option) const {
  return find_function("some_" + option.elem().mangled());
}
FuncDeclPtr Signature::option_none(const Sort& option) const {
  return find_function("none_" + option.elem().mangled());
}
FuncDeclPtr Signature::option_the(const Sort& option) const {
  return find_function("the_" + option.elem().mangled());
}

PredDeclPtr Signature::cmp(const std::string& op) const {
  if (op == ">") return find_predicate("gt");
  if (op == ">=") return find_predicate("ge");
  if (op == "<") return find_predicate("lt");
  if (op == "<=") return find_predicate("le");
  return nullptr;
}

PredDeclPtr Signature::add_defined_predicate(const std::string& name,
                                             std::vector<Sort> args) {
  if (find_predicate(name))
    throw ValidationError("predicate '" + name + "' defined twice");
  PredDecl d;
  d.name = name;
  d.uid = name;
  d.args = std::move(args);
  d.defined = true;
  return add_predicate(d);
}

std::vector<Sort> Signature::sorts() const {
  std::vector<Sort> out;
  out.push_back(Sort::integer());
  out.push_back(Sort::boolean());
  out.push_back(Sort::string());
  for (const auto& name : env_.ordered_names())
    out.push_back(Sort::object(name));
  for (const auto& s : structural_sorts_) out.push_back(s);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void Signature::add_structural(const Sort& s) {
  if (s.kind() == Sort::Kind::List) {
    const Sort elem = s.elem();
    if (!list_index(s)) {
      structural_sorts_.push_back(s);
      std::string m = elem.mangled();
      add_function({"index", "index_" + m, {s, Sort::integer()}, elem, "", ""});
      add_function(
          {"update", "update_" + m, {s, Sort::integer(), elem}, s, "", ""});
      add_function({"append", "append_" + m, {s, elem}, s, "", ""});
      add_function({"length", "length_" + m, {s}, Sort::integer(), "", ""});
      add_function({"nil", "nil_" + m, {}, s, "", ""});
      add_predicate({"isEmpty", "isempty_" + m, {s}});
      add_predicate({"mem", "mem_" + m, {elem, s}});
    }
    add_structural(elem);
  } else if (s.kind() == Sort::Kind::Option) {
    const Sort elem = s.elem();
    if (!option_some(s)) {
      structural_sorts_.push_back(s);
      std::string m = elem.mangled();
      add_function({"some", "some_" + m, {elem}, s, "", ""});
      add_function({"none", "none_" + m, {}, s, "", ""});
      add_function({"the", "the_" + m, {s}, elem, "", ""});
    }
    add_structural(elem);
  }
}

Signature derive_signature(const TypeEnv& env) {
  Signature sig;
  sig.env_ = env;
  sig.db_sort_ = std::make_shared<Sort>(Sort::object(TypeEnv::kRoot));

  // arithmetic over Z
  Sort z = Sort::integer();
  sig.add_function({"+", "add", {z, z}, z, "", ""});
  sig.add_function({"-", "sub", {z, z}, z, "", ""});
  sig.add_predicate({">", "gt", {z, z}});
  sig.add_predicate({">=", "ge", {z, z}});
  sig.add_predicate({"<", "lt", {z, z}});
  sig.add_predicate({"<=", "le", {z, z}});

  // per-field accessors and updators, structural sorts as encountered
  for (const auto& name : env.ordered_names()) {
    const JsonTypePtr& def = env.lookup(name);
    Sort owner = Sort::object(name);
    std::string om = owner.mangled();
    sig.add_function({"base", "base_" + om, {}, owner, name, ""});
    for (const auto& [field, ftype] : def->fields()) {
      Sort fsort = sort_of_type(ftype, env);
      sig.add_function(
          {field, om + "_" + field, {owner}, fsort, name, field});
      sig.add_function({"upd_" + field, "upd_" + om + "_" + field,
                        {owner, fsort}, owner, name, field});
      sig.add_structural(fsort);
    }
  }
  return sig;
}

}  // namespace fragcheck
