#include "fragcheck/parser.hpp"

#include <algorithm>

namespace fragcheck {

bool is_temporal_keyword(const std::string& word) {
  static const char* kws[] = {"A", "E", "X", "WX", "U", "R", "W", "G", "F"};
  return std::find_if(std::begin(kws), std::end(kws), [&](const char* k) {
           return word == k;
         }) != std::end(kws);
}

namespace {
bool is_reserved(const std::string& word) {
  return word == "forall" || word == "exists" || word == "true" ||
         word == "false" || word == "null" || word == "in" ||
         is_temporal_keyword(word);
}
}  // namespace

ExprParser::ExprParser(const Signature& sig) : sig_(sig) {
  push_var("db", sig.db_sort());
}

void ExprParser::push_var(const std::string& name, const Sort& sort) {
  scope_[name].push_back(sort);
}

void ExprParser::pop_var(const std::string& name) {
  auto it = scope_.find(name);
  if (it != scope_.end() && !it->second.empty()) {
    it->second.pop_back();
    if (it->second.empty()) scope_.erase(it);
  }
}

std::optional<Sort> ExprParser::lookup_var(const std::string& name) const {
  auto it = scope_.find(name);
  if (it == scope_.end() || it->second.empty()) return std::nullopt;
  return it->second.back();
}

Sort ExprParser::sort(Lexer& lex) {
  std::string word = lex.expect_ident("a sort");
  if (word == "Z" || word == "Integer") return Sort::integer();
  if (word == "Bool") return Sort::boolean();
  if (word == "String") return Sort::string();
  if (word == "List") {
    lex.expect_punct("[");
    Sort elem = sort(lex);
    lex.expect_punct("]");
    return Sort::list(elem);
  }
  if (word == "Option") {
    lex.expect_punct("[");
    Sort elem = sort(lex);
    lex.expect_punct("]");
    if (elem.kind() == Sort::Kind::Option)
      lex.fail("Option sorts do not nest");
    return Sort::option(elem);
  }
  if (!sig_.type_env().has(word)) lex.fail("unknown sort '" + word + "'");
  return Sort::object(word);
}

FormulaPtr ExprParser::formula(Lexer& lex) { return iff_level(lex); }

FormulaPtr ExprParser::iff_level(Lexer& lex) {
  FormulaPtr f = implies_level(lex);
  while (lex.accept_punct("<=>")) f = mk_iff(f, implies_level(lex));
  return f;
}

FormulaPtr ExprParser::implies_level(Lexer& lex) {
  FormulaPtr f = or_level(lex);
  if (lex.accept_punct("=>")) return mk_implies(f, implies_level(lex));
  return f;
}

FormulaPtr ExprParser::or_level(Lexer& lex) {
  std::vector<FormulaPtr> parts{and_level(lex)};
  while (lex.accept_punct("||")) parts.push_back(and_level(lex));
  return parts.size() == 1 ? parts[0] : mk_or(std::move(parts));
}

FormulaPtr ExprParser::and_level(Lexer& lex) {
  std::vector<FormulaPtr> parts{unary_level(lex)};
  while (lex.accept_punct("&&")) parts.push_back(unary_level(lex));
  return parts.size() == 1 ? parts[0] : mk_and(std::move(parts));
}

FormulaPtr ExprParser::unary_level(Lexer& lex) {
  if (lex.accept_punct("~")) return mk_not(unary_level(lex));
  return classical_unit(lex);
}

FormulaPtr ExprParser::classical_unit(Lexer& lex) {
  if (lex.peek().is_ident("forall") || lex.peek().is_ident("exists")) {
    bool universal = lex.next().text == "forall";
    std::string var = lex.expect_ident("a variable name");
    if (is_reserved(var)) lex.fail("reserved word used as variable");
    lex.expect_punct(":");
    Sort s = sort(lex);
    lex.expect_punct(".");
    push_var(var, s);
    FormulaPtr body;
    try {
      body = iff_level(lex);  // body extends as far right as possible
    } catch (...) {
      pop_var(var);
      throw;
    }
    pop_var(var);
    return universal ? mk_forall(var, s, body) : mk_exists(var, s, body);
  }
  return comparison(lex);
}

FormulaPtr ExprParser::comparison(Lexer& lex) {
  size_t start = lex.mark();
  TermPtr lhs;
  try {
    lhs = additive(lex, std::nullopt);
  } catch (const Error&) {
    lex.rewind(start);
    if (lex.peek().is_punct("(")) {
      lex.next();
      FormulaPtr f = iff_level(lex);
      lex.expect_punct(")");
      return f;
    }
    if (lex.peek().is(Token::Kind::Ident) && lex.peek(1).is_punct("("))
      return predicate_atom(lex);
    throw;
  }
  if (lex.accept_punct("=") || lex.peek().is_punct("<>")) {
    bool negated = lex.peek().is_punct("<>");
    if (negated) lex.next();
    TermPtr rhs = additive(lex, lhs->sort());
    // option lifting on either side
    if (lhs->sort() != rhs->sort()) {
      if (lhs->sort().kind() == Sort::Kind::Option &&
          lhs->sort().elem() == rhs->sort())
        rhs = coerce(rhs, lhs->sort());
      else if (rhs->sort().kind() == Sort::Kind::Option &&
               rhs->sort().elem() == lhs->sort())
        lhs = coerce(lhs, rhs->sort());
    }
    FormulaPtr eq = mk_eq(lhs, rhs);
    return negated ? mk_not(eq) : eq;
  }
  for (const char* op : {"<=", ">=", "<", ">"}) {
    if (lex.peek().is_punct(op)) {
      lex.next();
      TermPtr rhs = additive(lex, Sort::integer());
      return mk_pred(sig_.cmp(op), {lhs, rhs});
    }
  }
  if (lex.peek().is_ident("in")) {
    lex.next();
    TermPtr rhs = additive(lex, std::nullopt);
    if (rhs->sort().kind() != Sort::Kind::List)
      lex.fail("right-hand side of 'in' must be a list");
    if (rhs->sort().elem() != lhs->sort())
      lex.fail("'in' element sort " + lhs->sort().to_string() +
               " does not match list " + rhs->sort().to_string());
    return mk_pred(sig_.list_mem(rhs->sort()), {lhs, rhs});
  }
  // a bare term is a formula only when it is a boolean literal
  if (auto* b = lhs->get<Term::BoolLit>()) return mk_truth(b->value);
  lex.fail("expected a comparison after term");
}

FormulaPtr ExprParser::predicate_atom(Lexer& lex) {
  std::string name = lex.expect_ident("a predicate name");
  if (is_reserved(name)) lex.fail("reserved word used as predicate");
  lex.expect_punct("(");
  std::vector<TermPtr> args;
  if (!lex.accept_punct(")")) {
    for (;;) {
      args.push_back(additive(lex, std::nullopt));
      if (lex.accept_punct(",")) continue;
      lex.expect_punct(")");
      break;
    }
  }
  std::vector<Sort> sorts;
  for (const auto& a : args) sorts.push_back(a->sort());
  PredDeclPtr p = sig_.resolve_predicate(name, sorts);
  if (!p) {
    std::string sig_str;
    for (size_t i = 0; i < sorts.size(); ++i) {
      if (i) sig_str += ", ";
      sig_str += sorts[i].to_string();
    }
    lex.fail("unknown predicate '" + name + "(" + sig_str + ")'");
  }
  return mk_pred(p, std::move(args));
}

TermPtr ExprParser::coerce(TermPtr t, const Sort& want) const {
  if (t->sort() == want) return t;
  if (want.kind() == Sort::Kind::Option && want.elem() == t->sort())
    return mk_app(sig_.option_some(want), {t});
  throw SortError("expected sort " + want.to_string() + ", found " +
                  t->sort().to_string());
}

TermPtr ExprParser::term(Lexer& lex, const std::optional<Sort>& expected) {
  return additive(lex, expected);
}

TermPtr ExprParser::additive(Lexer& lex, const std::optional<Sort>& expected) {
  TermPtr t = postfix(lex, expected);
  for (;;) {
    bool add = lex.peek().is_punct("+");
    bool sub = lex.peek().is_punct("-");
    if (!add && !sub) break;
    lex.next();
    TermPtr rhs = postfix(lex, Sort::integer());
    t = mk_app(add ? sig_.arith_add() : sig_.arith_sub(), {t, rhs});
  }
  return t;
}

TermPtr ExprParser::field_access(Lexer& lex, TermPtr base,
                                 const std::string& field) {
  Sort s = base->sort();
  // access through an unset Option is a runtime error in concrete mode
  if (s.kind() == Sort::Kind::Option) {
    base = mk_app(sig_.option_the(s), {base});
    s = base->sort();
  }
  FuncDeclPtr acc = sig_.accessor(s, field);
  if (!acc)
    lex.fail("sort " + s.to_string() + " has no field '" + field + "'");
  return mk_app(acc, {base});
}

TermPtr ExprParser::postfix(Lexer& lex, const std::optional<Sort>& expected) {
  TermPtr t = primary(lex, expected);
  for (;;) {
    if (lex.peek().is_punct(".") && lex.peek(1).is(Token::Kind::Ident)) {
      lex.next();
      std::string field = lex.next().text;
      t = field_access(lex, t, field);
    } else if (lex.peek().is_punct("[")) {
      lex.next();
      TermPtr idx = additive(lex, Sort::integer());
      lex.expect_punct("]");
      Sort s = t->sort();
      if (s.kind() == Sort::Kind::Option) {
        t = mk_app(sig_.option_the(s), {t});
        s = t->sort();
      }
      if (s.kind() != Sort::Kind::List)
        lex.fail("indexing a non-list of sort " + s.to_string());
      t = mk_app(sig_.list_index(s), {t, idx});
    } else {
      break;
    }
  }
  return t;
}

TermPtr ExprParser::primary(Lexer& lex, const std::optional<Sort>& expected) {
  const Token& tok = lex.peek();
  if (tok.is(Token::Kind::Int)) return mk_int(lex.next().int_value);
  if (tok.is(Token::Kind::String)) return mk_str(lex.next().text);
  if (tok.is_punct("-")) {
    lex.next();
    if (lex.peek().is(Token::Kind::Int)) return mk_int(-lex.next().int_value);
    TermPtr t = postfix(lex, Sort::integer());
    return mk_app(sig_.arith_sub(), {mk_int(0), t});
  }
  if (tok.is_punct("(")) {
    lex.next();
    TermPtr t = additive(lex, expected);
    lex.expect_punct(")");
    return t;
  }
  if (tok.is_punct("[")) {
    lex.next();
    std::vector<TermPtr> elems;
    if (!lex.accept_punct("]")) {
      for (;;) {
        std::optional<Sort> elem_expected;
        if (expected && expected->kind() == Sort::Kind::List)
          elem_expected = expected->elem();
        else if (!elems.empty())
          elem_expected = elems[0]->sort();
        elems.push_back(additive(lex, elem_expected));
        if (lex.accept_punct(",")) continue;
        lex.expect_punct("]");
        break;
      }
    }
    Sort elem_sort = Sort::integer();
    if (!elems.empty()) {
      elem_sort = elems[0]->sort();
    } else if (expected && expected->kind() == Sort::Kind::List) {
      elem_sort = expected->elem();
    } else {
      lex.fail("cannot infer the element sort of an empty list here");
    }
    Sort list_sort = Sort::list(elem_sort);
    FuncDeclPtr nil = sig_.find_function("nil_" + elem_sort.mangled());
    if (!nil)
      lex.fail("list sort " + list_sort.to_string() +
               " does not occur in the type model");
    TermPtr t = mk_app(nil, {});
    for (auto& e : elems)
      t = mk_app(sig_.list_append(list_sort), {t, coerce(e, elem_sort)});
    return t;
  }
  if (tok.is(Token::Kind::Ident)) {
    std::string word = tok.text;
    if (word == "true" || word == "false") {
      lex.next();
      return mk_bool(word == "true");
    }
    if (word == "null") {
      lex.next();
      if (!expected || expected->kind() != Sort::Kind::Option)
        lex.fail("null needs an Option-sorted context");
      return mk_app(sig_.option_none(*expected), {});
    }
    if (is_reserved(word)) lex.fail("reserved word '" + word + "' in term");
    // function application
    if (lex.peek(1).is_punct("(")) {
      lex.next();
      lex.next();
      std::vector<TermPtr> args;
      if (!lex.accept_punct(")")) {
        for (;;) {
          args.push_back(additive(lex, std::nullopt));
          if (lex.accept_punct(",")) continue;
          lex.expect_punct(")");
          break;
        }
      }
      std::vector<Sort> sorts;
      for (const auto& a : args) sorts.push_back(a->sort());
      FuncDeclPtr fn = sig_.resolve_function(word, sorts);
      if (!fn) lex.fail("unknown function '" + word + "' for these sorts");
      return mk_app(fn, std::move(args));
    }
    if (auto s = lookup_var(word)) {
      lex.next();
      return mk_var(word, *s);
    }
    lex.fail("unknown variable '" + word + "'");
  }
  lex.fail("expected a term");
}

FormulaPtr parse_formula(std::string_view text, const Signature& sig) {
  Lexer lex(text);
  ExprParser p(sig);
  FormulaPtr f = p.formula(lex);
  if (!lex.at_end()) lex.fail("trailing input after formula");
  return f;
}

TermPtr parse_term(std::string_view text, const Signature& sig) {
  Lexer lex(text);
  ExprParser p(sig);
  TermPtr t = p.term(lex);
  if (!lex.at_end()) lex.fail("trailing input after term");
  return t;
}

DefinitionHead scan_definition_head(std::string_view text,
                                    const Signature& sig) {
  Lexer lex(text);
  ExprParser p(sig);
  DefinitionHead head;
  while (lex.accept_ident("forall")) {
    std::string var = lex.expect_ident("a variable name");
    lex.expect_punct(":");
    Sort s = p.sort(lex);
    lex.expect_punct(".");
    head.params.push_back({var, s});
  }
  lex.accept_punct("(");
  head.pred_name = lex.expect_ident("a predicate name");
  if (head.pred_name.empty())
    lex.fail("definition head must name a predicate");
  return head;
}

Definition parse_definition(std::string_view text, const Signature& sig) {
  DefinitionHead head = scan_definition_head(text, sig);
  FormulaPtr f = parse_formula(text, sig);
  // peel the quantifier prefix
  FormulaPtr cur = f;
  for (const auto& param : head.params) {
    auto* q = cur->get<Formula::Quant>();
    if (!q || !q->universal || q->var != param.name)
      throw ValidationError("definition must be a forall-prefixed equivalence");
    cur = q->body;
  }
  auto* iff = cur->get<Formula::Iff>();
  if (!iff)
    throw ValidationError(
        "definition body must be an equivalence p(x) <=> phi");
  auto* head_pred = iff->lhs->get<Formula::Pred>();
  if (!head_pred || head_pred->pred->name != head.pred_name)
    throw ValidationError("definition head must apply the defined predicate");
  if (head_pred->args.size() != head.params.size())
    throw ValidationError("definition head arity mismatch");
  for (size_t i = 0; i < head.params.size(); ++i) {
    auto* v = head_pred->args[i]->get<Term::Var>();
    if (!v || v->name != head.params[i].name)
      throw ValidationError(
          "definition head arguments must be the quantified variables");
  }
  // body may only mention the parameters
  std::set<std::string> fv = free_vars(iff->rhs);
  for (const auto& v : fv) {
    bool is_param = false;
    for (const auto& param : head.params)
      if (param.name == v) is_param = true;
    if (!is_param)
      throw ValidationError("definition body has free variable '" + v + "'");
  }
  Definition d;
  d.pred = head_pred->pred;
  d.params = head.params;
  d.body = iff->rhs;
  return d;
}

}  // namespace fragcheck
