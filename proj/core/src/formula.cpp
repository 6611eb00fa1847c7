#include "fragcheck/formula.hpp"

#include <algorithm>

namespace fragcheck {

namespace {
FormulaPtr make(Formula::Node&& n) {
  return std::make_shared<Formula>(std::move(n));
}
}  // namespace

FormulaPtr mk_pred(PredDeclPtr pred, std::vector<TermPtr> args) {
  if (!pred) throw SortError("application of unknown predicate symbol");
  if (pred->args.size() != args.size())
    throw SortError("predicate '" + pred->name + "' expects " +
                    std::to_string(pred->args.size()) + " arguments, got " +
                    std::to_string(args.size()));
  for (size_t i = 0; i < args.size(); ++i)
    if (args[i]->sort() != pred->args[i])
      throw SortError("argument " + std::to_string(i + 1) + " of '" +
                      pred->name + "' has sort " +
                      args[i]->sort().to_string() + ", expected " +
                      pred->args[i].to_string());
  return make(Formula::Pred{std::move(pred), std::move(args)});
}

FormulaPtr mk_eq(TermPtr lhs, TermPtr rhs) {
  if (lhs->sort() != rhs->sort())
    throw SortError("equation between sorts " + lhs->sort().to_string() +
                    " and " + rhs->sort().to_string());
  return make(Formula::Eq{std::move(lhs), std::move(rhs)});
}

FormulaPtr mk_truth(bool v) { return make(Formula::Truth{v}); }
FormulaPtr mk_not(FormulaPtr f) { return make(Formula::Not{std::move(f)}); }
FormulaPtr mk_and(std::vector<FormulaPtr> parts) {
  if (parts.size() == 1) return parts[0];
  return make(Formula::And{std::move(parts)});
}
FormulaPtr mk_or(std::vector<FormulaPtr> parts) {
  if (parts.size() == 1) return parts[0];
  return make(Formula::Or{std::move(parts)});
}
FormulaPtr mk_implies(FormulaPtr lhs, FormulaPtr rhs) {
  return make(Formula::Implies{std::move(lhs), std::move(rhs)});
}
FormulaPtr mk_iff(FormulaPtr lhs, FormulaPtr rhs) {
  return make(Formula::Iff{std::move(lhs), std::move(rhs)});
}
FormulaPtr mk_forall(std::string var, Sort sort, FormulaPtr body) {
  return make(Formula::Quant{true, std::move(var), std::move(sort),
                             std::move(body)});
}
FormulaPtr mk_exists(std::string var, Sort sort, FormulaPtr body) {
  return make(Formula::Quant{false, std::move(var), std::move(sort),
                             std::move(body)});
}

namespace {

int precedence_of(const Formula& f) {
  if (f.get<Formula::Iff>()) return 0;
  if (f.get<Formula::Implies>()) return 1;
  if (f.get<Formula::Or>()) return 2;
  if (f.get<Formula::And>()) return 3;
  if (f.get<Formula::Not>()) return 4;
  if (f.get<Formula::Quant>()) return 0;
  return 5;
}

std::string print(const FormulaPtr& f, int parent_prec) {
  int prec = precedence_of(*f);
  std::string out;
  if (auto* t = f->get<Formula::Truth>()) {
    out = t->value ? "true" : "false";
  } else if (auto* p = f->get<Formula::Pred>()) {
    if (p->pred->name == ">" || p->pred->name == ">=" ||
        p->pred->name == "<" || p->pred->name == "<=") {
      out = p->args[0]->to_string() + " " + p->pred->name + " " +
            p->args[1]->to_string();
    } else if (p->pred->name == "mem") {
      out = p->args[0]->to_string() + " in " + p->args[1]->to_string();
    } else {
      out = p->pred->name;
      out += "(";
      for (size_t i = 0; i < p->args.size(); ++i) {
        if (i) out += ", ";
        out += p->args[i]->to_string();
      }
      out += ")";
    }
  } else if (auto* e = f->get<Formula::Eq>()) {
    out = e->lhs->to_string() + " = " + e->rhs->to_string();
  } else if (auto* n = f->get<Formula::Not>()) {
    // negated equations print as <>
    if (auto* e = n->body->get<Formula::Eq>())
      out = e->lhs->to_string() + " <> " + e->rhs->to_string();
    else
      out = "~" + print(n->body, 4);
  } else if (auto* a = f->get<Formula::And>()) {
    if (a->parts.empty()) return "true";
    for (size_t i = 0; i < a->parts.size(); ++i) {
      if (i) out += " && ";
      out += print(a->parts[i], 3);
    }
  } else if (auto* o = f->get<Formula::Or>()) {
    if (o->parts.empty()) return "false";
    for (size_t i = 0; i < o->parts.size(); ++i) {
      if (i) out += " || ";
      out += print(o->parts[i], 2);
    }
  } else if (auto* im = f->get<Formula::Implies>()) {
    out = print(im->lhs, 2) + " => " + print(im->rhs, 1);
  } else if (auto* iff = f->get<Formula::Iff>()) {
    out = print(iff->lhs, 1) + " <=> " + print(iff->rhs, 1);
  } else if (auto* q = f->get<Formula::Quant>()) {
    out = std::string(q->universal ? "forall " : "exists ") + q->var + ":" +
          q->sort.to_string() + " . " + print(q->body, 0);
  }
  // comparisons and equations always parenthesize inside tighter contexts
  bool atomic = prec == 5 && !f->get<Formula::Eq>() && !f->get<Formula::Pred>();
  if (f->get<Formula::Truth>()) atomic = true;
  if (prec < parent_prec && !atomic) out = "(" + out + ")";
  return out;
}

}  // namespace

std::string Formula::to_string() const {
  FormulaPtr self = std::make_shared<Formula>(*this);
  return print(self, 0);
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->node().index() != b->node().index()) return false;
  if (auto* p = a->get<Formula::Pred>()) {
    const auto& q = *b->get<Formula::Pred>();
    if (p->pred->uid != q.pred->uid || p->args.size() != q.args.size())
      return false;
    for (size_t i = 0; i < p->args.size(); ++i)
      if (!equal(p->args[i], q.args[i])) return false;
    return true;
  }
  if (auto* e = a->get<Formula::Eq>()) {
    const auto& f = *b->get<Formula::Eq>();
    return equal(e->lhs, f.lhs) && equal(e->rhs, f.rhs);
  }
  if (auto* t = a->get<Formula::Truth>())
    return t->value == b->get<Formula::Truth>()->value;
  if (auto* n = a->get<Formula::Not>())
    return equal(n->body, b->get<Formula::Not>()->body);
  if (auto* c = a->get<Formula::And>()) {
    const auto& d = *b->get<Formula::And>();
    if (c->parts.size() != d.parts.size()) return false;
    for (size_t i = 0; i < c->parts.size(); ++i)
      if (!equal(c->parts[i], d.parts[i])) return false;
    return true;
  }
  if (auto* c = a->get<Formula::Or>()) {
    const auto& d = *b->get<Formula::Or>();
    if (c->parts.size() != d.parts.size()) return false;
    for (size_t i = 0; i < c->parts.size(); ++i)
      if (!equal(c->parts[i], d.parts[i])) return false;
    return true;
  }
  if (auto* im = a->get<Formula::Implies>()) {
    const auto& jm = *b->get<Formula::Implies>();
    return equal(im->lhs, jm.lhs) && equal(im->rhs, jm.rhs);
  }
  if (auto* iff = a->get<Formula::Iff>()) {
    const auto& jff = *b->get<Formula::Iff>();
    return equal(iff->lhs, jff.lhs) && equal(iff->rhs, jff.rhs);
  }
  const auto& qa = *a->get<Formula::Quant>();
  const auto& qb = *b->get<Formula::Quant>();
  return qa.universal == qb.universal && qa.var == qb.var &&
         qa.sort == qb.sort && equal(qa.body, qb.body);
}

namespace {

void free_vars_rec(const FormulaPtr& f, std::set<std::string>& bound,
                   std::set<std::string>& out) {
  auto term_vars = [&](const TermPtr& t) {
    std::set<std::string> vars;
    collect_free_vars(t, vars);
    for (const auto& v : vars)
      if (!bound.count(v)) out.insert(v);
  };
  if (auto* p = f->get<Formula::Pred>()) {
    for (const auto& arg : p->args) term_vars(arg);
  } else if (auto* e = f->get<Formula::Eq>()) {
    term_vars(e->lhs);
    term_vars(e->rhs);
  } else if (auto* n = f->get<Formula::Not>()) {
    free_vars_rec(n->body, bound, out);
  } else if (auto* c = f->get<Formula::And>()) {
    for (const auto& part : c->parts) free_vars_rec(part, bound, out);
  } else if (auto* o = f->get<Formula::Or>()) {
    for (const auto& part : o->parts) free_vars_rec(part, bound, out);
  } else if (auto* im = f->get<Formula::Implies>()) {
    free_vars_rec(im->lhs, bound, out);
    free_vars_rec(im->rhs, bound, out);
  } else if (auto* iff = f->get<Formula::Iff>()) {
    free_vars_rec(iff->lhs, bound, out);
    free_vars_rec(iff->rhs, bound, out);
  } else if (auto* q = f->get<Formula::Quant>()) {
    bool fresh = bound.insert(q->var).second;
    free_vars_rec(q->body, bound, out);
    if (fresh) bound.erase(q->var);
  }
}

}  // namespace

std::set<std::string> free_vars(const FormulaPtr& f) {
  std::set<std::string> bound, out;
  free_vars_rec(f, bound, out);
  return out;
}

FormulaPtr substitute(const FormulaPtr& f, const std::string& var,
                      const TermPtr& t) {
  if (auto* p = f->get<Formula::Pred>()) {
    std::vector<TermPtr> args;
    args.reserve(p->args.size());
    bool changed = false;
    for (const auto& arg : p->args) {
      TermPtr s = substitute(arg, var, t);
      changed |= s.get() != arg.get();
      args.push_back(std::move(s));
    }
    if (!changed) return f;
    return std::make_shared<Formula>(Formula::Pred{p->pred, std::move(args)});
  }
  if (auto* e = f->get<Formula::Eq>()) {
    TermPtr l = substitute(e->lhs, var, t);
    TermPtr r = substitute(e->rhs, var, t);
    if (l.get() == e->lhs.get() && r.get() == e->rhs.get()) return f;
    return std::make_shared<Formula>(Formula::Eq{std::move(l), std::move(r)});
  }
  if (f->get<Formula::Truth>()) return f;
  if (auto* n = f->get<Formula::Not>()) {
    FormulaPtr b = substitute(n->body, var, t);
    return b.get() == n->body.get() ? f : mk_not(std::move(b));
  }
  if (auto* c = f->get<Formula::And>()) {
    std::vector<FormulaPtr> parts;
    bool changed = false;
    for (const auto& part : c->parts) {
      FormulaPtr s = substitute(part, var, t);
      changed |= s.get() != part.get();
      parts.push_back(std::move(s));
    }
    if (!changed) return f;
    return std::make_shared<Formula>(Formula::And{std::move(parts)});
  }
  if (auto* o = f->get<Formula::Or>()) {
    std::vector<FormulaPtr> parts;
    bool changed = false;
    for (const auto& part : o->parts) {
      FormulaPtr s = substitute(part, var, t);
      changed |= s.get() != part.get();
      parts.push_back(std::move(s));
    }
    if (!changed) return f;
    return std::make_shared<Formula>(Formula::Or{std::move(parts)});
  }
  if (auto* im = f->get<Formula::Implies>())
    return mk_implies(substitute(im->lhs, var, t), substitute(im->rhs, var, t));
  if (auto* iff = f->get<Formula::Iff>())
    return mk_iff(substitute(iff->lhs, var, t), substitute(iff->rhs, var, t));
  const auto& q = *f->get<Formula::Quant>();
  if (q.var == var) return f;  // shadowed
  // capture check: t must not contain the bound variable free
  std::set<std::string> tvars;
  collect_free_vars(t, tvars);
  if (tvars.count(q.var))
    throw SortError("substitution would capture variable '" + q.var + "'");
  FormulaPtr b = substitute(q.body, var, t);
  if (b.get() == q.body.get()) return f;
  return std::make_shared<Formula>(
      Formula::Quant{q.universal, q.var, q.sort, std::move(b)});
}

std::string Definition::to_string() const {
  std::string out;
  for (const auto& p : params)
    out += "forall " + p.name + ":" + p.sort.to_string() + " . ";
  std::vector<TermPtr> args;
  for (const auto& p : params) args.push_back(mk_var(p.name, p.sort));
  out += "(" + mk_pred(pred, args)->to_string() + " <=> " + body->to_string() +
         ")";
  return out;
}

namespace {

FormulaPtr expand_rec(const FormulaPtr& f, const std::vector<Definition>& defs);

FormulaPtr expand_pred(const Formula::Pred& p,
                       const std::vector<Definition>& defs) {
  for (const auto& d : defs) {
    if (d.pred->uid != p.pred->uid) continue;
    if (d.params.size() != p.args.size())
      throw SortError("defined predicate '" + d.pred->name +
                      "' applied with wrong arity");
    // simultaneous substitution via fresh placeholders ('$' cannot occur
    // in user identifiers)
    FormulaPtr body = d.body;
    for (size_t i = 0; i < d.params.size(); ++i)
      body = substitute(body, d.params[i].name,
                        mk_var("$" + std::to_string(i), d.params[i].sort));
    for (size_t i = 0; i < d.params.size(); ++i)
      body = substitute(body, "$" + std::to_string(i), p.args[i]);
    // bodies may mention other defined predicates
    return expand_rec(body, defs);
  }
  return nullptr;
}

FormulaPtr expand_rec(const FormulaPtr& f,
                      const std::vector<Definition>& defs) {
  if (auto* p = f->get<Formula::Pred>()) {
    if (FormulaPtr e = expand_pred(*p, defs)) return e;
    return f;
  }
  if (f->get<Formula::Eq>() || f->get<Formula::Truth>()) return f;
  if (auto* n = f->get<Formula::Not>()) {
    FormulaPtr b = expand_rec(n->body, defs);
    return b.get() == n->body.get() ? f : mk_not(std::move(b));
  }
  if (auto* c = f->get<Formula::And>()) {
    std::vector<FormulaPtr> parts;
    bool changed = false;
    for (const auto& part : c->parts) {
      FormulaPtr s = expand_rec(part, defs);
      changed |= s.get() != part.get();
      parts.push_back(std::move(s));
    }
    if (!changed) return f;
    return std::make_shared<Formula>(Formula::And{std::move(parts)});
  }
  if (auto* o = f->get<Formula::Or>()) {
    std::vector<FormulaPtr> parts;
    bool changed = false;
    for (const auto& part : o->parts) {
      FormulaPtr s = expand_rec(part, defs);
      changed |= s.get() != part.get();
      parts.push_back(std::move(s));
    }
    if (!changed) return f;
    return std::make_shared<Formula>(Formula::Or{std::move(parts)});
  }
  if (auto* im = f->get<Formula::Implies>()) {
    FormulaPtr l = expand_rec(im->lhs, defs);
    FormulaPtr r = expand_rec(im->rhs, defs);
    if (l.get() == im->lhs.get() && r.get() == im->rhs.get()) return f;
    return mk_implies(std::move(l), std::move(r));
  }
  if (auto* iff = f->get<Formula::Iff>()) {
    FormulaPtr l = expand_rec(iff->lhs, defs);
    FormulaPtr r = expand_rec(iff->rhs, defs);
    if (l.get() == iff->lhs.get() && r.get() == iff->rhs.get()) return f;
    return mk_iff(std::move(l), std::move(r));
  }
  const auto& q = *f->get<Formula::Quant>();
  FormulaPtr b = expand_rec(q.body, defs);
  if (b.get() == q.body.get()) return f;
  return std::make_shared<Formula>(
      Formula::Quant{q.universal, q.var, q.sort, std::move(b)});
}

}  // namespace

FormulaPtr expand_definitions(const FormulaPtr& f,
                              const std::vector<Definition>& defs) {
  return expand_rec(f, defs);
}

}  // namespace fragcheck
