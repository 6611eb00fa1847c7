#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "fragcheck/parser.hpp"

namespace fragcheck {

class PathFormula;
using PathPtr = std::shared_ptr<const PathFormula>;

/// CTL*(FO) formulas. One AST covers state and path formulas; state
/// formulas are the subset built from classical leaves, boolean connectives
/// and path quantifiers. After nnf() only Classical, And, Or, A/E, X, WX,
/// U and R remain, with negation folded into classical leaves.
class PathFormula {
public:
  struct Classical {
    FormulaPtr formula;
  };
  struct Not {
    PathPtr body;
  };
  struct And {
    std::vector<PathPtr> parts;
  };
  struct Or {
    std::vector<PathPtr> parts;
  };
  struct Implies {
    PathPtr lhs, rhs;
  };
  struct Iff {
    PathPtr lhs, rhs;
  };
  struct Quant {  // A (universal) / E (existential) path quantifier
    bool universal;
    PathPtr body;
  };
  struct Next {  // X (strong) / WX (weak)
    bool weak;
    PathPtr body;
  };
  struct Until {
    PathPtr lhs, rhs;
  };
  struct Release {
    PathPtr lhs, rhs;
  };
  struct Globally {
    PathPtr body;
  };
  struct Finally {
    PathPtr body;
  };
  struct WeakUntil {
    PathPtr lhs, rhs;
  };

  using Node = std::variant<Classical, Not, And, Or, Implies, Iff, Quant,
                            Next, Until, Release, Globally, Finally,
                            WeakUntil>;

  explicit PathFormula(Node n) : node_(std::move(n)) {}

  const Node& node() const { return node_; }

  template <typename T>
  const T* get() const {
    return std::get_if<T>(&node_);
  }

  /// No temporal operator and no path quantifier anywhere.
  bool is_classical() const;
  /// Top-level operator is a path quantifier or temporal operator.
  bool is_modal_atom() const;
  /// State formula: classical leaves, booleans, path quantifiers.
  bool is_state_formula() const;

  std::string to_string() const;
};

PathPtr mk_classical(FormulaPtr f);
PathPtr mk_pnot(PathPtr f);
PathPtr mk_pand(std::vector<PathPtr> parts);
PathPtr mk_por(std::vector<PathPtr> parts);
PathPtr mk_pimplies(PathPtr lhs, PathPtr rhs);
PathPtr mk_piff(PathPtr lhs, PathPtr rhs);
PathPtr mk_all(PathPtr body);     // A
PathPtr mk_exists_path(PathPtr body);  // E
PathPtr mk_next(PathPtr body);    // X
PathPtr mk_wnext(PathPtr body);   // WX
PathPtr mk_until(PathPtr lhs, PathPtr rhs);
PathPtr mk_release(PathPtr lhs, PathPtr rhs);
PathPtr mk_globally(PathPtr body);
PathPtr mk_finally(PathPtr body);
PathPtr mk_weak_until(PathPtr lhs, PathPtr rhs);

bool equal(const PathPtr& a, const PathPtr& b);

/// Negation normal form. Eliminates sugar (F, G, W, =>, <=>), pushes
/// negation to classical leaves via the dualities
///   ~X p = WX ~p, ~WX p = X ~p, ~(p U q) = ~p R ~q, ~(p R q) = ~p U ~q,
///   ~A p = E ~p, ~E p = A ~p,
/// and is idempotent.
PathPtr nnf(const PathPtr& f);

/// Parse a CTL*(FO) formula. Surface keywords: A E X WX U R W G F;
/// classical leaves use the ExprParser grammar.
PathPtr parse_path_formula(std::string_view text, const Signature& sig);

/// Lower a classical path formula (is_classical() true) to the FO layer.
FormulaPtr lower_classical(const PathPtr& f);

/// A query is an NNF state formula starting with a path quantifier.
struct Query {
  PathPtr formula;
  bool auto_wrapped = false;  // CLI wrapped a quantifier-free query in A
};

/// Normalize a parsed formula into a Query; wraps in A when the NNF does
/// not start with a path quantifier.
Query make_query(const PathPtr& parsed);

/// Fold constraints into the query: A(C => psi) or E(C && psi), C read as
/// the conjunction of its elements. Returns a re-normalized NNF query.
Query expand_query(const Query& q, const std::vector<PathPtr>& constraints);

}  // namespace fragcheck
