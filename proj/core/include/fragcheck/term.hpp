#pragma once

#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "fragcheck/signature.hpp"

namespace fragcheck {

class Term;
using TermPtr = std::shared_ptr<const Term>;

/// A well-sorted first-order term. Immutable and freely shared.
class Term {
public:
  struct Var {
    std::string name;
    Sort sort;
  };
  struct App {
    FuncDeclPtr fn;
    std::vector<TermPtr> args;
  };
  struct IntLit {
    std::int64_t value;
  };
  struct BoolLit {
    bool value;
  };
  struct StrLit {
    std::string value;
  };

  using Node = std::variant<Var, App, IntLit, BoolLit, StrLit>;

  explicit Term(Node n) : node_(std::move(n)) {}

  const Node& node() const { return node_; }

  template <typename T>
  const T* get() const {
    return std::get_if<T>(&node_);
  }

  Sort sort() const;
  std::string to_string() const;

private:
  Node node_;
};

TermPtr mk_var(std::string name, Sort sort);
TermPtr mk_app(FuncDeclPtr fn, std::vector<TermPtr> args);  // checks arity/sorts
TermPtr mk_int(std::int64_t v);
TermPtr mk_bool(bool v);
TermPtr mk_str(std::string v);

/// The dedicated variable db of sort DB.
TermPtr db_var(const Signature& sig);

bool equal(const TermPtr& a, const TermPtr& b);

void collect_free_vars(const TermPtr& t, std::set<std::string>& out);

/// Capture-free replacement of the free variable `var` by `replacement`.
/// Terms have no binders, so this is plain structural substitution.
TermPtr substitute(const TermPtr& t, const std::string& var,
                   const TermPtr& replacement);

/// Encode a concrete JSON value of the given sort as a ground term
/// ("database as a term"): objects become updator chains over a per-sort
/// base constant, arrays become append chains over the empty list.
/// `base` supplies named base constants (e.g. the initial constant for DB).
TermPtr value_to_term(const JsonValue& v, const Sort& sort,
                      const Signature& sig);

}  // namespace fragcheck
