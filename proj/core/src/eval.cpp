#include "fragcheck/eval.hpp"

#include <algorithm>

namespace fragcheck {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw ScriptRuntimeError("integer overflow in " + std::to_string(a) +
                             " + " + std::to_string(b));
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r))
    throw ScriptRuntimeError("integer overflow in " + std::to_string(a) +
                             " - " + std::to_string(b));
  return r;
}

std::int64_t index_check(const JsonValue& list, std::int64_t i,
                         const char* what) {
  const auto& arr = list.as_array();
  if (i < 0 || static_cast<size_t>(i) >= arr.size())
    throw ScriptRuntimeError(std::string("index ") + std::to_string(i) +
                             " out of bounds for " + what + " of length " +
                             std::to_string(arr.size()));
  return i;
}

}  // namespace

JsonValue eval_term(const TermPtr& t, const GroundBinding& b,
                    const Signature& sig) {
  if (auto* v = t->get<Term::Var>()) {
    auto it = b.vars.find(v->name);
    if (it == b.vars.end())
      throw ConcreteEvalError("unbound variable '" + v->name + "'");
    return it->second;
  }
  if (auto* i = t->get<Term::IntLit>()) return JsonValue(i->value);
  if (auto* x = t->get<Term::BoolLit>()) return JsonValue(x->value);
  if (auto* s = t->get<Term::StrLit>()) return JsonValue(s->value);

  const auto& app = *t->get<Term::App>();
  const FuncDecl& fn = *app.fn;
  if (fn.args.empty()) {
    auto it = b.consts.find(fn.uid);
    if (it != b.consts.end()) return it->second;
    if (fn.name == "nil") return JsonValue(JsonValue::Array{});
    if (fn.name == "none") return JsonValue::null();
    throw ConcreteEvalError("constant '" + fn.uid +
                            "' has no concrete value");
  }
  std::vector<JsonValue> args;
  args.reserve(app.args.size());
  for (const auto& a : app.args) args.push_back(eval_term(a, b, sig));

  // object accessors and updators
  if (!fn.owner_type.empty() && !fn.field.empty()) {
    if (fn.name == fn.field) {
      const JsonValue* f = args[0].find(fn.field);
      if (!f)
        throw ScriptRuntimeError("object lacks field '" + fn.field + "'");
      return *f;
    }
    // updator
    JsonValue obj = args[0];
    obj.as_object()[fn.field] = args[1];
    return obj;
  }
  if (fn.name == "index") {
    index_check(args[0], args[1].as_int(), "list");
    return args[0].as_array()[static_cast<size_t>(args[1].as_int())];
  }
  if (fn.name == "update") {
    JsonValue list = args[0];
    index_check(list, args[1].as_int(), "list");
    list.as_array()[static_cast<size_t>(args[1].as_int())] = args[2];
    return list;
  }
  if (fn.name == "append") {
    JsonValue list = args[0];
    list.as_array().push_back(args[1]);
    return list;
  }
  if (fn.name == "length")
    return JsonValue(static_cast<std::int64_t>(args[0].as_array().size()));
  if (fn.name == "some") return args[0];
  if (fn.name == "the") {
    if (args[0].is_null())
      throw ScriptRuntimeError("null dereference through an unset Option");
    return args[0];
  }
  if (fn.name == "+") return JsonValue(checked_add(args[0].as_int(), args[1].as_int()));
  if (fn.name == "-") return JsonValue(checked_sub(args[0].as_int(), args[1].as_int()));
  throw ConcreteEvalError("no concrete interpretation for '" + fn.uid + "'");
}

namespace {

bool eval_rec(const FormulaPtr& f, GroundBinding& b, const Signature& sig);

/// Range restriction extracted from a quantifier body.
struct Range {
  enum class Kind { Members, Ints, Bools } kind;
  std::vector<JsonValue> values;
};

bool is_var(const TermPtr& t, const std::string& name) {
  auto* v = t->get<Term::Var>();
  return v && v->name == name;
}

bool mentions_var(const TermPtr& t, const std::string& name) {
  std::set<std::string> vars;
  collect_free_vars(t, vars);
  return vars.count(name) > 0;
}

/// Find `x in l` (or, for universals, `~(x in l)` / implication guards
/// handled by the caller via NNF-ish inspection) and integer bounds of the
/// forms x >= c, c <= x, x > c, x < c, c > x, x <= c over ground terms.
/// Returns nullopt when no finite range can be established.
std::optional<Range> find_range(const Formula::Quant& q,
                                GroundBinding& b, const Signature& sig) {
  if (q.sort.kind() == Sort::Kind::Bool)
    return Range{Range::Kind::Bools, {JsonValue(false), JsonValue(true)}};

  // collect top-level conjuncts (existential) or disjuncts (universal);
  // for the universal case literals appear negated: forall x. ~(x in l) || p
  std::vector<FormulaPtr> lits;
  auto add_parts = [&](const FormulaPtr& g, auto&& self) -> void {
    if (!q.universal) {
      if (auto* a = g->get<Formula::And>()) {
        for (const auto& p : a->parts) self(p, self);
        return;
      }
    } else {
      if (auto* o = g->get<Formula::Or>()) {
        for (const auto& p : o->parts) self(p, self);
        return;
      }
      if (auto* im = g->get<Formula::Implies>()) {
        // forall x . x in l => p: the guard is the restriction
        self(mk_not(im->lhs), self);
        return;
      }
    }
    lits.push_back(g);
  };
  add_parts(q.body, add_parts);

  // restrictions are positive in the existential reading; in the universal
  // reading they occur negated among the disjuncts
  std::vector<FormulaPtr> restrictions;
  auto add_restriction = [&](const FormulaPtr& g, auto&& self) -> void {
    if (auto* a = g->get<Formula::And>()) {
      for (const auto& p : a->parts) self(p, self);
      return;
    }
    restrictions.push_back(g);
  };
  for (const auto& lit : lits) {
    if (q.universal) {
      if (auto* n = lit->get<Formula::Not>())
        add_restriction(n->body, add_restriction);
    } else {
      add_restriction(lit, add_restriction);
    }
  }

  for (const auto& g : restrictions) {
    if (auto* p = g->get<Formula::Pred>()) {
      if (p->pred->name == "mem" && is_var(p->args[0], q.var) &&
          !mentions_var(p->args[1], q.var)) {
        JsonValue list = eval_term(p->args[1], b, sig);
        return Range{Range::Kind::Members, list.as_array()};
      }
    }
  }

  // integer ranges: gather lower and upper bounds
  if (q.sort.kind() == Sort::Kind::Int) {
    std::optional<std::int64_t> lo, hi;
    auto probe = [&](const FormulaPtr& g) {
      auto* p = g->get<Formula::Pred>();
      if (!p) return;
      const std::string& op = p->pred->name;
      if (op != ">" && op != ">=" && op != "<" && op != "<=") return;
      const TermPtr& a = p->args[0];
      const TermPtr& c = p->args[1];
      bool var_left = is_var(a, q.var) && !mentions_var(c, q.var);
      bool var_right = is_var(c, q.var) && !mentions_var(a, q.var);
      if (!var_left && !var_right) return;
      std::int64_t bound = eval_term(var_left ? c : a, b, sig).as_int();
      // normalize to x OP bound
      std::string norm = op;
      if (var_right) {
        if (op == ">") norm = "<";
        else if (op == ">=") norm = "<=";
        else if (op == "<") norm = ">";
        else norm = ">=";
      }
      if (norm == ">") { if (!lo || bound + 1 > *lo) lo = bound + 1; }
      else if (norm == ">=") { if (!lo || bound > *lo) lo = bound; }
      else if (norm == "<") { if (!hi || bound - 1 < *hi) hi = bound - 1; }
      else { if (!hi || bound < *hi) hi = bound; }
    };
    for (const auto& g : restrictions) probe(g);
    if (lo && hi) {
      Range r{Range::Kind::Ints, {}};
      for (std::int64_t v = *lo; v <= *hi; ++v)
        r.values.push_back(JsonValue(v));
      return r;
    }
    if (lo && !hi) return std::nullopt;
  }
  return std::nullopt;
}

bool eval_rec(const FormulaPtr& f, GroundBinding& b, const Signature& sig) {
  if (auto* t = f->get<Formula::Truth>()) return t->value;
  if (auto* e = f->get<Formula::Eq>())
    return eval_term(e->lhs, b, sig) == eval_term(e->rhs, b, sig);
  if (auto* p = f->get<Formula::Pred>()) {
    const std::string& name = p->pred->name;
    if (p->pred->defined)
      throw ConcreteEvalError("defined predicate '" + name +
                              "' must be expanded before evaluation");
    if (name == ">" || name == ">=" || name == "<" || name == "<=") {
      std::int64_t a = eval_term(p->args[0], b, sig).as_int();
      std::int64_t c = eval_term(p->args[1], b, sig).as_int();
      if (name == ">") return a > c;
      if (name == ">=") return a >= c;
      if (name == "<") return a < c;
      return a <= c;
    }
    if (name == "isEmpty")
      return eval_term(p->args[0], b, sig).as_array().empty();
    if (name == "mem") {
      JsonValue e = eval_term(p->args[0], b, sig);
      JsonValue l = eval_term(p->args[1], b, sig);
      const auto& arr = l.as_array();
      return std::find(arr.begin(), arr.end(), e) != arr.end();
    }
    throw ConcreteEvalError("no concrete interpretation for predicate '" +
                            name + "'");
  }
  if (auto* n = f->get<Formula::Not>()) return !eval_rec(n->body, b, sig);
  if (auto* a = f->get<Formula::And>()) {
    for (const auto& p : a->parts)
      if (!eval_rec(p, b, sig)) return false;
    return true;
  }
  if (auto* o = f->get<Formula::Or>()) {
    for (const auto& p : o->parts)
      if (eval_rec(p, b, sig)) return true;
    return false;
  }
  if (auto* im = f->get<Formula::Implies>())
    return !eval_rec(im->lhs, b, sig) || eval_rec(im->rhs, b, sig);
  if (auto* iff = f->get<Formula::Iff>())
    return eval_rec(iff->lhs, b, sig) == eval_rec(iff->rhs, b, sig);

  const auto& q = *f->get<Formula::Quant>();
  std::optional<Range> range = find_range(q, b, sig);
  if (!range)
    throw ConcreteEvalError(
        "quantifier over " + q.sort.to_string() +
        " is not concretely evaluable (no finite range restriction for '" +
        q.var + "')");
  bool had = b.vars.count(q.var) > 0;
  JsonValue saved = had ? b.vars[q.var] : JsonValue();
  bool result = q.universal;
  for (const auto& v : range->values) {
    b.vars[q.var] = v;
    bool r = eval_rec(q.body, b, sig);
    if (q.universal && !r) { result = false; break; }
    if (!q.universal && r) { result = true; break; }
  }
  if (had) b.vars[q.var] = saved; else b.vars.erase(q.var);
  return result;
}

}  // namespace

bool eval_formula(const FormulaPtr& f, const GroundBinding& b,
                  const Signature& sig) {
  GroundBinding mutable_b = b;
  return eval_rec(f, mutable_b, sig);
}

bool eval_classical(const FormulaPtr& zeta, const JsonValue& v,
                    const std::vector<Definition>& defs,
                    const Signature& sig) {
  FormulaPtr expanded = expand_definitions(zeta, defs);
  GroundBinding b;
  b.vars["db"] = v;
  return eval_formula(expanded, b, sig);
}

}  // namespace fragcheck
