#include "fragcheck/script.hpp"

#include "fragcheck/eval.hpp"

namespace fragcheck {

std::string LValue::to_string() const {
  std::string out = "db";
  for (const auto& s : steps) {
    if (s.is_field()) out += "." + s.field();
    else out += "[" + s.index()->to_string() + "]";
  }
  return out;
}

std::string Statement::to_string() const {
  if (kind == Kind::Append)
    return target.to_string() + ".append(" + expr->to_string() + ")";
  return target.to_string() + " = " + expr->to_string();
}

std::string Script::to_string() const {
  std::string out;
  for (size_t i = 0; i < statements.size(); ++i) {
    if (i) out += "; ";
    out += statements[i].to_string();
  }
  return out;
}

namespace {

/// Sort of the value a path step leads to, unwrapping Options on the way
/// (a step through an Option reads/writes the wrapped value).
Sort step_sort(const Sort& base, const PathStep& step, const Signature& sig,
               Lexer& lex) {
  Sort s = base;
  if (s.kind() == Sort::Kind::Option) s = s.elem();
  if (step.is_field()) {
    FuncDeclPtr acc = sig.accessor(s, step.field());
    if (!acc)
      lex.fail("sort " + s.to_string() + " has no field '" + step.field() +
               "'");
    return acc->result;
  }
  if (s.kind() != Sort::Kind::List)
    lex.fail("indexing a non-list of sort " + s.to_string());
  return s.elem();
}

Statement parse_statement(Lexer& lex, ExprParser& expr, const Signature& sig) {
  if (!lex.accept_ident("db")) lex.fail("script paths must start at db");
  Statement st;
  st.kind = Statement::Kind::Assign;
  Sort cur = sig.db_sort();
  for (;;) {
    if (lex.peek().is_punct(".") && lex.peek(1).is(Token::Kind::Ident)) {
      // `.append(e)` terminates an append statement
      if (lex.peek(1).is_ident("append") && lex.peek(2).is_punct("(")) {
        lex.next();
        lex.next();
        lex.next();
        Sort s = cur.kind() == Sort::Kind::Option ? cur.elem() : cur;
        if (s.kind() != Sort::Kind::List)
          lex.fail("append target must be a list, found " + s.to_string());
        st.kind = Statement::Kind::Append;
        st.expr = expr.coerce(expr.term(lex, s.elem()), s.elem());
        lex.expect_punct(")");
        return st;
      }
      lex.next();
      std::string field = lex.next().text;
      PathStep step{field};
      Sort next_sort = step_sort(cur, step, sig, lex);
      st.target.steps.push_back(std::move(step));
      cur = next_sort;
      continue;
    }
    if (lex.peek().is_punct("[")) {
      lex.next();
      TermPtr idx = expr.term(lex, Sort::integer());
      lex.expect_punct("]");
      PathStep step{idx};
      Sort next_sort = step_sort(cur, step, sig, lex);
      st.target.steps.push_back(std::move(step));
      cur = next_sort;
      continue;
    }
    break;
  }
  lex.expect_punct("=");
  st.expr = expr.coerce(expr.term(lex, cur), cur);
  return st;
}

}  // namespace

Script parse_script(std::string_view text, const Signature& sig) {
  Lexer lex(text);
  ExprParser expr(sig);
  Script script;
  while (!lex.at_end()) {
    script.statements.push_back(parse_statement(lex, expr, sig));
    if (lex.accept_punct(";")) continue;
    break;
  }
  if (!lex.at_end()) lex.fail("trailing input after script");
  return script;
}

namespace {

JsonValue set_at(const JsonValue& cur, const std::vector<PathStep>& steps,
                 const std::vector<std::optional<std::int64_t>>& indices,
                 size_t depth, const JsonValue& new_value, bool append) {
  if (depth == steps.size()) {
    if (!append) return new_value;
    JsonValue list = cur;
    if (list.is_null())
      throw ScriptRuntimeError("null dereference through an unset Option");
    list.as_array().push_back(new_value);
    return list;
  }
  JsonValue node = cur;
  if (node.is_null())
    throw ScriptRuntimeError("null dereference through an unset Option");
  const PathStep& step = steps[depth];
  if (step.is_field()) {
    JsonValue* slot = node.is_object() ? &node.as_object()[step.field()]
                                       : nullptr;
    if (!slot || cur.find(step.field()) == nullptr)
      throw ScriptRuntimeError("object lacks field '" + step.field() + "'");
    *slot = set_at(*slot, steps, indices, depth + 1, new_value, append);
    return node;
  }
  std::int64_t i = *indices[depth];
  auto& arr = node.as_array();
  if (i < 0 || static_cast<size_t>(i) >= arr.size())
    throw ScriptRuntimeError("index " + std::to_string(i) +
                             " out of bounds for list of length " +
                             std::to_string(arr.size()));
  arr[static_cast<size_t>(i)] =
      set_at(arr[static_cast<size_t>(i)], steps, indices, depth + 1,
             new_value, append);
  return node;
}

}  // namespace

JsonValue exec(const Script& s, const JsonValue& db, const Signature& sig) {
  JsonValue cur = db;
  for (const auto& st : s.statements) {
    GroundBinding b;
    b.vars["db"] = cur;  // indices and rhs see the pre-statement database
    std::vector<std::optional<std::int64_t>> indices;
    for (const auto& step : st.target.steps) {
      if (step.is_field()) indices.emplace_back(std::nullopt);
      else indices.emplace_back(eval_term(step.index(), b, sig).as_int());
    }
    JsonValue value = eval_term(st.expr, b, sig);
    cur = set_at(cur, st.target.steps, indices, 0, value,
                 st.kind == Statement::Kind::Append);
  }
  return cur;
}

namespace {

/// Read-modify-write compilation of one statement over `base`, the term
/// denoting the database before the statement.
TermPtr compile_path(const TermPtr& cur, const std::vector<PathStep>& steps,
                     size_t depth, const TermPtr& leaf_value, bool append,
                     const Signature& sig) {
  // a final assignment replaces the slot wholesale, Option slots included
  if (depth == steps.size() && !append) return leaf_value;
  Sort s = cur->sort();
  if (s.kind() == Sort::Kind::Option) {
    TermPtr inner = mk_app(sig.option_the(s), {cur});
    TermPtr new_inner =
        compile_path(inner, steps, depth, leaf_value, append, sig);
    return mk_app(sig.option_some(s), {new_inner});
  }
  if (depth == steps.size()) {
    return mk_app(sig.list_append(s), {cur, leaf_value});
  }
  const PathStep& step = steps[depth];
  if (step.is_field()) {
    TermPtr read = mk_app(sig.accessor(s, step.field()), {cur});
    TermPtr new_field =
        compile_path(read, steps, depth + 1, leaf_value, append, sig);
    return mk_app(sig.updator(s, step.field()), {cur, new_field});
  }
  TermPtr read = mk_app(sig.list_index(s), {cur, step.index()});
  TermPtr new_elem =
      compile_path(read, steps, depth + 1, leaf_value, append, sig);
  return mk_app(sig.list_update(s), {cur, step.index(), new_elem});
}

}  // namespace

TermPtr to_update_term(const Script& s, const Signature& sig) {
  TermPtr acc = db_var(sig);
  for (const auto& st : s.statements) {
    // bind the statement's free db (in indices and rhs) to the database
    // produced by the previous statements
    std::vector<PathStep> steps;
    for (const auto& step : st.target.steps) {
      if (step.is_field()) steps.push_back(step);
      else steps.push_back(PathStep{substitute(step.index(), "db", acc)});
    }
    TermPtr value = substitute(st.expr, "db", acc);
    acc = compile_path(acc, steps, 0, value,
                       st.kind == Statement::Kind::Append, sig);
  }
  return acc;
}

}  // namespace fragcheck
