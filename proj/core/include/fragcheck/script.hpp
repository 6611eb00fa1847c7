#pragma once

#include <string>
#include <variant>
#include <vector>

#include "fragcheck/parser.hpp"

namespace fragcheck {

/// One step of an lvalue path rooted at db: a field selector or an index
/// expression (a term of sort Z over db, evaluated against the database as
/// it was before the statement).
struct PathStep {
  std::variant<std::string, TermPtr> step;
  bool is_field() const { return step.index() == 0; }
  const std::string& field() const { return std::get<0>(step); }
  const TermPtr& index() const { return std::get<1>(step); }
};

struct LValue {
  std::vector<PathStep> steps;  // empty means db itself
  std::string to_string() const;
};

/// assign: path = expr;  append: path.append(expr)
struct Statement {
  enum class Kind { Assign, Append };
  Kind kind;
  LValue target;
  TermPtr expr;
  std::string to_string() const;
};

/// A deterministic database-update script. The empty script is the
/// identity program.
struct Script {
  std::vector<Statement> statements;
  bool empty() const { return statements.empty(); }
  std::string to_string() const;
};

/// Parse `stmt (';' stmt)*` where stmt is `path = expr` or
/// `path.append(expr)`. Paths start at db; the expression grammar is the
/// term grammar. Trailing semicolons are tolerated.
Script parse_script(std::string_view text, const Signature& sig);

/// Run the script on a database value conforming to DB. Statements apply
/// in order. Throws ScriptRuntimeError for out-of-bounds indexing, integer
/// overflow and null dereference.
JsonValue exec(const Script& s, const JsonValue& db, const Signature& sig);

/// Compile the script to a single update term with free variables at most
/// {db}; ground evaluation of the result at db=v equals exec(s, v).
/// Nested assignments become read-modify-write updator chains.
TermPtr to_update_term(const Script& s, const Signature& sig);

}  // namespace fragcheck
