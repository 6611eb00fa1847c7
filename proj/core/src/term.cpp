#include "fragcheck/term.hpp"

namespace fragcheck {

Sort Term::sort() const {
  if (auto* v = get<Var>()) return v->sort;
  if (auto* a = get<App>()) return a->fn->result;
  if (get<IntLit>()) return Sort::integer();
  if (get<BoolLit>()) return Sort::boolean();
  return Sort::string();
}

namespace {

bool is_accessor(const FuncDecl& fn) {
  return !fn.owner_type.empty() && !fn.field.empty() &&
         fn.name == fn.field;
}

}  // namespace

std::string Term::to_string() const {
  if (auto* v = get<Var>()) return v->name;
  if (auto* i = get<IntLit>()) return std::to_string(i->value);
  if (auto* b = get<BoolLit>()) return b->value ? "true" : "false";
  if (auto* s = get<StrLit>()) return "\"" + s->value + "\"";
  const App& a = *get<App>();
  // accessor applications print as postfix field selection
  if (is_accessor(*a.fn) && a.args.size() == 1)
    return a.args[0]->to_string() + "." + a.fn->field;
  if (a.fn->name == "index" && a.args.size() == 2)
    return a.args[0]->to_string() + "[" + a.args[1]->to_string() + "]";
  if ((a.fn->name == "+" || a.fn->name == "-") && a.args.size() == 2)
    return "(" + a.args[0]->to_string() + " " + a.fn->name + " " +
           a.args[1]->to_string() + ")";
  std::string out = a.fn->name;
  if (a.args.empty()) return out;
  out += "(";
  for (size_t i = 0; i < a.args.size(); ++i) {
    if (i) out += ", ";
    out += a.args[i]->to_string();
  }
  return out + ")";
}

TermPtr mk_var(std::string name, Sort sort) {
  return std::make_shared<Term>(Term::Var{std::move(name), std::move(sort)});
}

TermPtr mk_app(FuncDeclPtr fn, std::vector<TermPtr> args) {
  if (!fn) throw SortError("application of unknown function symbol");
  if (fn->args.size() != args.size())
    throw SortError("function '" + fn->name + "' expects " +
                    std::to_string(fn->args.size()) + " arguments, got " +
                    std::to_string(args.size()));
  for (size_t i = 0; i < args.size(); ++i)
    if (args[i]->sort() != fn->args[i])
      throw SortError("argument " + std::to_string(i + 1) + " of '" +
                      fn->name + "' has sort " + args[i]->sort().to_string() +
                      ", expected " + fn->args[i].to_string());
  return std::make_shared<Term>(Term::App{std::move(fn), std::move(args)});
}

TermPtr mk_int(std::int64_t v) {
  return std::make_shared<Term>(Term::IntLit{v});
}
TermPtr mk_bool(bool v) { return std::make_shared<Term>(Term::BoolLit{v}); }
TermPtr mk_str(std::string v) {
  return std::make_shared<Term>(Term::StrLit{std::move(v)});
}

TermPtr db_var(const Signature& sig) { return mk_var("db", sig.db_sort()); }

bool equal(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->node().index() != b->node().index()) return false;
  if (auto* v = a->get<Term::Var>())
    return v->name == b->get<Term::Var>()->name &&
           v->sort == b->get<Term::Var>()->sort;
  if (auto* i = a->get<Term::IntLit>())
    return i->value == b->get<Term::IntLit>()->value;
  if (auto* x = a->get<Term::BoolLit>())
    return x->value == b->get<Term::BoolLit>()->value;
  if (auto* s = a->get<Term::StrLit>())
    return s->value == b->get<Term::StrLit>()->value;
  const auto& fa = *a->get<Term::App>();
  const auto& fb = *b->get<Term::App>();
  if (fa.fn->uid != fb.fn->uid || fa.args.size() != fb.args.size())
    return false;
  for (size_t i = 0; i < fa.args.size(); ++i)
    if (!equal(fa.args[i], fb.args[i])) return false;
  return true;
}

void collect_free_vars(const TermPtr& t, std::set<std::string>& out) {
  if (auto* v = t->get<Term::Var>()) {
    out.insert(v->name);
  } else if (auto* a = t->get<Term::App>()) {
    for (const auto& arg : a->args) collect_free_vars(arg, out);
  }
}

TermPtr substitute(const TermPtr& t, const std::string& var,
                   const TermPtr& replacement) {
  if (auto* v = t->get<Term::Var>()) {
    if (v->name == var) return replacement;
    return t;
  }
  if (auto* a = t->get<Term::App>()) {
    bool changed = false;
    std::vector<TermPtr> args;
    args.reserve(a->args.size());
    for (const auto& arg : a->args) {
      TermPtr s = substitute(arg, var, replacement);
      changed |= s.get() != arg.get();
      args.push_back(std::move(s));
    }
    if (!changed) return t;
    return std::make_shared<Term>(Term::App{a->fn, std::move(args)});
  }
  return t;
}

TermPtr value_to_term(const JsonValue& v, const Sort& sort,
                      const Signature& sig) {
  switch (sort.kind()) {
    case Sort::Kind::Int: return mk_int(v.as_int());
    case Sort::Kind::Bool: return mk_bool(v.as_bool());
    case Sort::Kind::String: return mk_str(v.as_string());
    case Sort::Kind::Option: {
      if (v.is_null()) return mk_app(sig.option_none(sort), {});
      return mk_app(sig.option_some(sort),
                    {value_to_term(v, sort.elem(), sig)});
    }
    case Sort::Kind::List: {
      TermPtr t = mk_app(sig.find_function("nil_" + sort.elem().mangled()), {});
      for (const auto& e : v.as_array())
        t = mk_app(sig.list_append(sort),
                   {t, value_to_term(e, sort.elem(), sig)});
      return t;
    }
    case Sort::Kind::Object: {
      const JsonTypePtr& def = sig.type_env().lookup(sort.object_name());
      TermPtr t = mk_app(sig.find_function("base_" + sort.mangled()), {});
      for (const auto& [field, ftype] : def->fields()) {
        const JsonValue* fv = v.find(field);
        if (!fv) throw Error("value lacks field '" + field + "'");
        t = mk_app(sig.updator(sort, field),
                   {t, value_to_term(*fv, sort_of_type(ftype, sig.type_env()),
                                     sig)});
      }
      return t;
    }
  }
  throw Error("unhandled sort");
}

}  // namespace fragcheck
