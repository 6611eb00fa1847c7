#include "fragcheck/ctlstar.hpp"

namespace fragcheck {

namespace {
PathPtr make(PathFormula::Node&& n) {
  return std::make_shared<PathFormula>(std::move(n));
}
}  // namespace

PathPtr mk_classical(FormulaPtr f) {
  return make(PathFormula::Classical{std::move(f)});
}
PathPtr mk_pnot(PathPtr f) { return make(PathFormula::Not{std::move(f)}); }
PathPtr mk_pand(std::vector<PathPtr> parts) {
  if (parts.size() == 1) return parts[0];
  return make(PathFormula::And{std::move(parts)});
}
PathPtr mk_por(std::vector<PathPtr> parts) {
  if (parts.size() == 1) return parts[0];
  return make(PathFormula::Or{std::move(parts)});
}
PathPtr mk_pimplies(PathPtr lhs, PathPtr rhs) {
  return make(PathFormula::Implies{std::move(lhs), std::move(rhs)});
}
PathPtr mk_piff(PathPtr lhs, PathPtr rhs) {
  return make(PathFormula::Iff{std::move(lhs), std::move(rhs)});
}
PathPtr mk_all(PathPtr body) {
  return make(PathFormula::Quant{true, std::move(body)});
}
PathPtr mk_exists_path(PathPtr body) {
  return make(PathFormula::Quant{false, std::move(body)});
}
PathPtr mk_next(PathPtr body) {
  return make(PathFormula::Next{false, std::move(body)});
}
PathPtr mk_wnext(PathPtr body) {
  return make(PathFormula::Next{true, std::move(body)});
}
PathPtr mk_until(PathPtr lhs, PathPtr rhs) {
  return make(PathFormula::Until{std::move(lhs), std::move(rhs)});
}
PathPtr mk_release(PathPtr lhs, PathPtr rhs) {
  return make(PathFormula::Release{std::move(lhs), std::move(rhs)});
}
PathPtr mk_globally(PathPtr body) {
  return make(PathFormula::Globally{std::move(body)});
}
PathPtr mk_finally(PathPtr body) {
  return make(PathFormula::Finally{std::move(body)});
}
PathPtr mk_weak_until(PathPtr lhs, PathPtr rhs) {
  return make(PathFormula::WeakUntil{std::move(lhs), std::move(rhs)});
}

bool PathFormula::is_classical() const {
  if (get<Classical>()) return true;
  if (auto* n = get<Not>()) return n->body->is_classical();
  if (auto* a = get<And>()) {
    for (const auto& p : a->parts)
      if (!p->is_classical()) return false;
    return true;
  }
  if (auto* o = get<Or>()) {
    for (const auto& p : o->parts)
      if (!p->is_classical()) return false;
    return true;
  }
  if (auto* im = get<Implies>())
    return im->lhs->is_classical() && im->rhs->is_classical();
  if (auto* iff = get<Iff>())
    return iff->lhs->is_classical() && iff->rhs->is_classical();
  return false;
}

bool PathFormula::is_modal_atom() const {
  return get<Quant>() || get<Next>() || get<Until>() || get<Release>() ||
         get<Globally>() || get<Finally>() || get<WeakUntil>();
}

bool PathFormula::is_state_formula() const {
  if (get<Classical>() || get<Quant>()) return true;
  if (auto* n = get<Not>()) return n->body->is_state_formula();
  if (auto* a = get<And>()) {
    for (const auto& p : a->parts)
      if (!p->is_state_formula()) return false;
    return true;
  }
  if (auto* o = get<Or>()) {
    for (const auto& p : o->parts)
      if (!p->is_state_formula()) return false;
    return true;
  }
  if (auto* im = get<Implies>())
    return im->lhs->is_state_formula() && im->rhs->is_state_formula();
  if (auto* iff = get<Iff>())
    return iff->lhs->is_state_formula() && iff->rhs->is_state_formula();
  return false;
}

namespace {

int prec_of(const PathFormula& f) {
  if (f.get<PathFormula::Iff>()) return 0;
  if (f.get<PathFormula::Implies>()) return 1;
  if (f.get<PathFormula::Or>()) return 2;
  if (f.get<PathFormula::And>()) return 3;
  if (f.get<PathFormula::Until>() || f.get<PathFormula::Release>() ||
      f.get<PathFormula::WeakUntil>())
    return 4;
  return 5;  // unary and leaves
}

std::string print(const PathPtr& f, int parent) {
  int prec = prec_of(*f);
  std::string out;
  bool leaf = false;
  if (auto* c = f->get<PathFormula::Classical>()) {
    out = c->formula->to_string();
    // classical leaves manage their own parentheses
    bool simple = c->formula->get<Formula::Pred>() ||
                  c->formula->get<Formula::Eq>() ||
                  c->formula->get<Formula::Truth>();
    if (!simple) out = "(" + out + ")";
    leaf = true;
  } else if (auto* n = f->get<PathFormula::Not>()) {
    out = "~" + print(n->body, 5);
  } else if (auto* a = f->get<PathFormula::And>()) {
    if (a->parts.empty()) return "true";
    for (size_t i = 0; i < a->parts.size(); ++i) {
      if (i) out += " && ";
      out += print(a->parts[i], 4);
    }
  } else if (auto* o = f->get<PathFormula::Or>()) {
    if (o->parts.empty()) return "false";
    for (size_t i = 0; i < o->parts.size(); ++i) {
      if (i) out += " || ";
      out += print(o->parts[i], 3);
    }
  } else if (auto* im = f->get<PathFormula::Implies>()) {
    out = print(im->lhs, 2) + " => " + print(im->rhs, 1);
  } else if (auto* iff = f->get<PathFormula::Iff>()) {
    out = print(iff->lhs, 1) + " <=> " + print(iff->rhs, 1);
  } else if (auto* q = f->get<PathFormula::Quant>()) {
    out = std::string(q->universal ? "A " : "E ") + print(q->body, 5);
  } else if (auto* x = f->get<PathFormula::Next>()) {
    out = std::string(x->weak ? "WX " : "X ") + print(x->body, 5);
  } else if (auto* u = f->get<PathFormula::Until>()) {
    out = print(u->lhs, 5) + " U " + print(u->rhs, 4);
  } else if (auto* r = f->get<PathFormula::Release>()) {
    out = print(r->lhs, 5) + " R " + print(r->rhs, 4);
  } else if (auto* w = f->get<PathFormula::WeakUntil>()) {
    out = print(w->lhs, 5) + " W " + print(w->rhs, 4);
  } else if (auto* g = f->get<PathFormula::Globally>()) {
    out = "G " + print(g->body, 5);
  } else if (auto* fi = f->get<PathFormula::Finally>()) {
    out = "F " + print(fi->body, 5);
  }
  if (prec < parent && !leaf) out = "(" + out + ")";
  return out;
}

}  // namespace

std::string PathFormula::to_string() const {
  PathPtr self = std::make_shared<PathFormula>(*this);
  return print(self, 0);
}

bool equal(const PathPtr& a, const PathPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->node().index() != b->node().index()) return false;
  if (auto* c = a->get<PathFormula::Classical>())
    return equal(c->formula, b->get<PathFormula::Classical>()->formula);
  if (auto* n = a->get<PathFormula::Not>())
    return equal(n->body, b->get<PathFormula::Not>()->body);
  if (auto* x = a->get<PathFormula::And>()) {
    const auto& y = *b->get<PathFormula::And>();
    if (x->parts.size() != y.parts.size()) return false;
    for (size_t i = 0; i < x->parts.size(); ++i)
      if (!equal(x->parts[i], y.parts[i])) return false;
    return true;
  }
  if (auto* x = a->get<PathFormula::Or>()) {
    const auto& y = *b->get<PathFormula::Or>();
    if (x->parts.size() != y.parts.size()) return false;
    for (size_t i = 0; i < x->parts.size(); ++i)
      if (!equal(x->parts[i], y.parts[i])) return false;
    return true;
  }
  if (auto* x = a->get<PathFormula::Implies>()) {
    const auto& y = *b->get<PathFormula::Implies>();
    return equal(x->lhs, y.lhs) && equal(x->rhs, y.rhs);
  }
  if (auto* x = a->get<PathFormula::Iff>()) {
    const auto& y = *b->get<PathFormula::Iff>();
    return equal(x->lhs, y.lhs) && equal(x->rhs, y.rhs);
  }
  if (auto* x = a->get<PathFormula::Quant>()) {
    const auto& y = *b->get<PathFormula::Quant>();
    return x->universal == y.universal && equal(x->body, y.body);
  }
  if (auto* x = a->get<PathFormula::Next>()) {
    const auto& y = *b->get<PathFormula::Next>();
    return x->weak == y.weak && equal(x->body, y.body);
  }
  if (auto* x = a->get<PathFormula::Until>()) {
    const auto& y = *b->get<PathFormula::Until>();
    return equal(x->lhs, y.lhs) && equal(x->rhs, y.rhs);
  }
  if (auto* x = a->get<PathFormula::Release>()) {
    const auto& y = *b->get<PathFormula::Release>();
    return equal(x->lhs, y.lhs) && equal(x->rhs, y.rhs);
  }
  if (auto* x = a->get<PathFormula::WeakUntil>()) {
    const auto& y = *b->get<PathFormula::WeakUntil>();
    return equal(x->lhs, y.lhs) && equal(x->rhs, y.rhs);
  }
  if (auto* x = a->get<PathFormula::Globally>())
    return equal(x->body, b->get<PathFormula::Globally>()->body);
  if (auto* x = a->get<PathFormula::Finally>())
    return equal(x->body, b->get<PathFormula::Finally>()->body);
  return false;
}

namespace {

PathPtr truth(bool v) { return mk_classical(mk_truth(v)); }

PathPtr nnf_rec(const PathPtr& f, bool negated) {
  if (auto* c = f->get<PathFormula::Classical>()) {
    if (!negated) return f;
    // fold negation into the classical leaf, simplifying ~~ and truth
    if (auto* t = c->formula->get<Formula::Truth>())
      return truth(!t->value);
    if (auto* n = c->formula->get<Formula::Not>())
      return mk_classical(n->body);
    return mk_classical(mk_not(c->formula));
  }
  if (auto* n = f->get<PathFormula::Not>()) return nnf_rec(n->body, !negated);
  if (auto* a = f->get<PathFormula::And>()) {
    std::vector<PathPtr> parts;
    for (const auto& p : a->parts) parts.push_back(nnf_rec(p, negated));
    return negated ? mk_por(std::move(parts)) : mk_pand(std::move(parts));
  }
  if (auto* o = f->get<PathFormula::Or>()) {
    std::vector<PathPtr> parts;
    for (const auto& p : o->parts) parts.push_back(nnf_rec(p, negated));
    return negated ? mk_pand(std::move(parts)) : mk_por(std::move(parts));
  }
  if (auto* im = f->get<PathFormula::Implies>()) {
    // p => q  ~>  ~p || q
    PathPtr desugared = mk_por({mk_pnot(im->lhs), im->rhs});
    return nnf_rec(desugared, negated);
  }
  if (auto* iff = f->get<PathFormula::Iff>()) {
    PathPtr desugared = mk_pand({mk_por({mk_pnot(iff->lhs), iff->rhs}),
                                 mk_por({mk_pnot(iff->rhs), iff->lhs})});
    return nnf_rec(desugared, negated);
  }
  if (auto* q = f->get<PathFormula::Quant>()) {
    PathPtr body = nnf_rec(q->body, negated);
    bool universal = negated ? !q->universal : q->universal;
    return universal ? mk_all(body) : mk_exists_path(body);
  }
  if (auto* x = f->get<PathFormula::Next>()) {
    PathPtr body = nnf_rec(x->body, negated);
    bool weak = negated ? !x->weak : x->weak;
    return weak ? mk_wnext(body) : mk_next(body);
  }
  if (auto* u = f->get<PathFormula::Until>()) {
    PathPtr l = nnf_rec(u->lhs, negated);
    PathPtr r = nnf_rec(u->rhs, negated);
    return negated ? mk_release(l, r) : mk_until(l, r);
  }
  if (auto* r = f->get<PathFormula::Release>()) {
    PathPtr l = nnf_rec(r->lhs, negated);
    PathPtr rr = nnf_rec(r->rhs, negated);
    return negated ? mk_until(l, rr) : mk_release(l, rr);
  }
  // sugar: F p = true U p, G p = false R p, p W q = q R (p || q)
  if (auto* fi = f->get<PathFormula::Finally>())
    return nnf_rec(mk_until(truth(true), fi->body), negated);
  if (auto* g = f->get<PathFormula::Globally>())
    return nnf_rec(mk_release(truth(false), g->body), negated);
  auto* w = f->get<PathFormula::WeakUntil>();
  return nnf_rec(mk_release(w->rhs, mk_por({w->lhs, w->rhs})), negated);
}

}  // namespace

PathPtr nnf(const PathPtr& f) { return nnf_rec(f, false); }

namespace {

/// Temporal-layer parser; delegates classical leaves to ExprParser and
/// backtracks between the two interpretations of '('.
class PathParser {
public:
  explicit PathParser(const Signature& sig) : expr_(sig) {}

  PathPtr parse(Lexer& lex) {
    PathPtr f = iff_level(lex);
    if (!lex.at_end()) lex.fail("trailing input after formula");
    return f;
  }

private:
  PathPtr iff_level(Lexer& lex) {
    PathPtr f = implies_level(lex);
    while (lex.accept_punct("<=>")) f = mk_piff(f, implies_level(lex));
    return f;
  }

  PathPtr implies_level(Lexer& lex) {
    PathPtr f = or_level(lex);
    if (lex.accept_punct("=>")) return mk_pimplies(f, implies_level(lex));
    return f;
  }

  PathPtr or_level(Lexer& lex) {
    std::vector<PathPtr> parts{and_level(lex)};
    while (lex.accept_punct("||")) parts.push_back(and_level(lex));
    return parts.size() == 1 ? parts[0] : mk_por(std::move(parts));
  }

  PathPtr and_level(Lexer& lex) {
    std::vector<PathPtr> parts{until_level(lex)};
    while (lex.accept_punct("&&")) parts.push_back(until_level(lex));
    return parts.size() == 1 ? parts[0] : mk_pand(std::move(parts));
  }

  PathPtr until_level(Lexer& lex) {
    PathPtr f = unary_level(lex);
    if (lex.peek().is_ident("U")) {
      lex.next();
      return mk_until(f, until_level(lex));
    }
    if (lex.peek().is_ident("R")) {
      lex.next();
      return mk_release(f, until_level(lex));
    }
    if (lex.peek().is_ident("W")) {
      lex.next();
      return mk_weak_until(f, until_level(lex));
    }
    return f;
  }

  PathPtr unary_level(Lexer& lex) {
    const Token& t = lex.peek();
    if (t.is_punct("~")) {
      lex.next();
      return mk_pnot(unary_level(lex));
    }
    if (t.is_ident("A")) { lex.next(); return mk_all(unary_level(lex)); }
    if (t.is_ident("E")) {
      lex.next();
      return mk_exists_path(unary_level(lex));
    }
    if (t.is_ident("X")) { lex.next(); return mk_next(unary_level(lex)); }
    if (t.is_ident("WX")) { lex.next(); return mk_wnext(unary_level(lex)); }
    if (t.is_ident("G")) { lex.next(); return mk_globally(unary_level(lex)); }
    if (t.is_ident("F")) { lex.next(); return mk_finally(unary_level(lex)); }
    return atom(lex);
  }

  PathPtr atom(Lexer& lex) {
    if (lex.peek().is_punct("(")) {
      // try a classical leaf first; fall back to a parenthesized path formula
      size_t start = lex.mark();
      try {
        FormulaPtr f = classical_leaf(lex);
        return mk_classical(f);
      } catch (const Error&) {
        lex.rewind(start);
      }
      lex.expect_punct("(");
      PathPtr f = iff_level(lex);
      lex.expect_punct(")");
      return f;
    }
    return mk_classical(classical_leaf(lex));
  }

  /// Boolean connectives above the leaf level belong to the path grammar;
  /// classical operands group the same either way.
  FormulaPtr classical_leaf(Lexer& lex) { return expr_.classical_unit(lex); }

  ExprParser expr_;
};

}  // namespace

PathPtr parse_path_formula(std::string_view text, const Signature& sig) {
  Lexer lex(text);
  PathParser p(sig);
  return p.parse(lex);
}

FormulaPtr lower_classical(const PathPtr& f) {
  if (auto* c = f->get<PathFormula::Classical>()) return c->formula;
  if (auto* n = f->get<PathFormula::Not>())
    return mk_not(lower_classical(n->body));
  if (auto* a = f->get<PathFormula::And>()) {
    std::vector<FormulaPtr> parts;
    for (const auto& p : a->parts) parts.push_back(lower_classical(p));
    return mk_and(std::move(parts));
  }
  if (auto* o = f->get<PathFormula::Or>()) {
    std::vector<FormulaPtr> parts;
    for (const auto& p : o->parts) parts.push_back(lower_classical(p));
    return mk_or(std::move(parts));
  }
  if (auto* im = f->get<PathFormula::Implies>())
    return mk_implies(lower_classical(im->lhs), lower_classical(im->rhs));
  if (auto* iff = f->get<PathFormula::Iff>())
    return mk_iff(lower_classical(iff->lhs), lower_classical(iff->rhs));
  throw Error("formula is not classical: " + f->to_string());
}

Query make_query(const PathPtr& parsed) {
  PathPtr n = nnf(parsed);
  Query q;
  if (auto* quant = n->get<PathFormula::Quant>()) {
    (void)quant;
    q.formula = n;
    return q;
  }
  q.formula = mk_all(n);
  q.auto_wrapped = true;
  return q;
}

Query expand_query(const Query& q, const std::vector<PathPtr>& constraints) {
  if (constraints.empty()) return q;
  const auto* quant = q.formula->get<PathFormula::Quant>();
  if (!quant)
    throw ValidationError("query must start with a path quantifier");
  PathPtr conj = constraints.size() == 1 ? constraints[0]
                                         : mk_pand(constraints);
  PathPtr expanded = quant->universal
                         ? mk_all(mk_pimplies(conj, quant->body))
                         : mk_exists_path(mk_pand({conj, quant->body}));
  Query out;
  out.formula = nnf(expanded);
  out.auto_wrapped = q.auto_wrapped;
  return out;
}

}  // namespace fragcheck
