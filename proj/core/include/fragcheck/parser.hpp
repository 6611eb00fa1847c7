#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fragcheck/formula.hpp"
#include "fragcheck/lexer.hpp"

namespace fragcheck {

/// Keywords of the temporal layer; rejected as identifiers everywhere.
bool is_temporal_keyword(const std::string& word);

/// Recursive-descent parser for the classical expression language shared by
/// guards, definitions, scripts and query leaves.
///
/// Precedence, loosest to tightest:
///   <=>  =>  ||  &&  ~  (comparisons: = <> < <= > >= in)  + -  postfix .f [i]
/// Quantifier bodies extend as far right as possible.
class ExprParser {
public:
  explicit ExprParser(const Signature& sig);

  /// Brings a variable into scope (shadowing allowed, stack-like).
  void push_var(const std::string& name, const Sort& sort);
  void pop_var(const std::string& name);
  std::optional<Sort> lookup_var(const std::string& name) const;

  const Signature& signature() const { return sig_; }

  FormulaPtr formula(Lexer& lex);
  /// A maximal boolean-connective-free classical unit: a quantified
  /// formula, a comparison, a predicate atom or a parenthesized classical
  /// formula. The temporal parser builds its leaves from these.
  FormulaPtr classical_unit(Lexer& lex);
  TermPtr term(Lexer& lex, const std::optional<Sort>& expected = {});
  Sort sort(Lexer& lex);

  /// Lift for mixed Option/base equations and assignments: wraps `t` in
  /// `some` when `want` is Option over t's sort. Throws on other mismatches.
  TermPtr coerce(TermPtr t, const Sort& want) const;

private:
  FormulaPtr iff_level(Lexer& lex);
  FormulaPtr implies_level(Lexer& lex);
  FormulaPtr or_level(Lexer& lex);
  FormulaPtr and_level(Lexer& lex);
  FormulaPtr unary_level(Lexer& lex);
  FormulaPtr comparison(Lexer& lex);
  FormulaPtr predicate_atom(Lexer& lex);

  TermPtr additive(Lexer& lex, const std::optional<Sort>& expected);
  TermPtr postfix(Lexer& lex, const std::optional<Sort>& expected);
  TermPtr primary(Lexer& lex, const std::optional<Sort>& expected);
  TermPtr field_access(Lexer& lex, TermPtr base, const std::string& field);

  const Signature& sig_;
  std::map<std::string, std::vector<Sort>> scope_;
};

/// Parse a complete classical formula with `db` (sort DB) in scope.
FormulaPtr parse_formula(std::string_view text, const Signature& sig);

/// Parse a complete term with `db` in scope.
TermPtr parse_term(std::string_view text, const Signature& sig);

/// The quantifier prefix and head of a definition,
///   forall x:s . (p(x) <=> body),
/// scanned without resolving the body. Used to register defined predicates
/// before parsing definition bodies.
struct DefinitionHead {
  std::string pred_name;
  std::vector<Term::Var> params;
};
DefinitionHead scan_definition_head(std::string_view text,
                                    const Signature& sig);

/// Parse a full definition once its predicate is registered. Validates the
/// forall x:s . p(x) <=> body shape.
Definition parse_definition(std::string_view text, const Signature& sig);

}  // namespace fragcheck
