#pragma once

#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "fragcheck/term.hpp"

namespace fragcheck {

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// A well-sorted classical first-order formula. And/Or are n-ary; the empty
/// conjunction is true and the empty disjunction is false.
class Formula {
public:
  struct Pred {
    PredDeclPtr pred;
    std::vector<TermPtr> args;
  };
  struct Eq {
    TermPtr lhs, rhs;
  };
  struct Truth {
    bool value;
  };
  struct Not {
    FormulaPtr body;
  };
  struct And {
    std::vector<FormulaPtr> parts;
  };
  struct Or {
    std::vector<FormulaPtr> parts;
  };
  struct Implies {
    FormulaPtr lhs, rhs;
  };
  struct Iff {
    FormulaPtr lhs, rhs;
  };
  struct Quant {
    bool universal;
    std::string var;
    Sort sort;
    FormulaPtr body;
  };

  using Node =
      std::variant<Pred, Eq, Truth, Not, And, Or, Implies, Iff, Quant>;

  explicit Formula(Node n) : node_(std::move(n)) {}

  const Node& node() const { return node_; }

  template <typename T>
  const T* get() const {
    return std::get_if<T>(&node_);
  }

  std::string to_string() const;

private:
  Node node_;
};

FormulaPtr mk_pred(PredDeclPtr pred, std::vector<TermPtr> args);
FormulaPtr mk_eq(TermPtr lhs, TermPtr rhs);  // sorts must agree
FormulaPtr mk_truth(bool v);
FormulaPtr mk_not(FormulaPtr f);
FormulaPtr mk_and(std::vector<FormulaPtr> parts);
FormulaPtr mk_or(std::vector<FormulaPtr> parts);
FormulaPtr mk_implies(FormulaPtr lhs, FormulaPtr rhs);
FormulaPtr mk_iff(FormulaPtr lhs, FormulaPtr rhs);
FormulaPtr mk_forall(std::string var, Sort sort, FormulaPtr body);
FormulaPtr mk_exists(std::string var, Sort sort, FormulaPtr body);

bool equal(const FormulaPtr& a, const FormulaPtr& b);

std::set<std::string> free_vars(const FormulaPtr& f);

/// Capture-avoiding substitution of the free variable `var` by `t`.
FormulaPtr substitute(const FormulaPtr& f, const std::string& var,
                      const TermPtr& t);

/// A definition for p: forall x:s . p(x) <=> body.
struct Definition {
  PredDeclPtr pred;
  std::vector<Term::Var> params;
  FormulaPtr body;

  std::string to_string() const;
};

/// Replace every application of a defined predicate by its instantiated
/// body. Definitions must be acyclic and at most one per symbol; the result
/// contains no defined predicates.
FormulaPtr expand_definitions(const FormulaPtr& f,
                              const std::vector<Definition>& defs);

}  // namespace fragcheck
