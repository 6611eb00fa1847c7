#pragma once

#include <map>
#include <string>

#include "fragcheck/formula.hpp"

namespace fragcheck {

/// Ground interpretation: values for free variables and for 0-ary
/// constants (by uid), e.g. the symbolic initial constant in concrete mode.
struct GroundBinding {
  std::map<std::string, JsonValue> vars;
  std::map<std::string, JsonValue> consts;
};

/// Evaluate a ground term to a JSON value. Accessors, updators, list and
/// option operations get their JSON semantics; arithmetic is checked
/// 64-bit. Throws ScriptRuntimeError for out-of-bounds / overflow / null
/// dereference and ConcreteEvalError for unbound symbols.
JsonValue eval_term(const TermPtr& t, const GroundBinding& b,
                    const Signature& sig);

/// Evaluate a formula under a ground binding. Quantifiers must be bounded:
/// Bool sorts, variables restricted by a membership literal `x in l`, or
/// integer variables range-restricted by comparisons. Anything else raises
/// ConcreteEvalError (never a silent default).
bool eval_formula(const FormulaPtr& f, const GroundBinding& b,
                  const Signature& sig);

/// Decide |= D => zeta[v] for a classical formula with free vars in {db}:
/// expand definitions, bind db to v, evaluate.
bool eval_classical(const FormulaPtr& zeta, const JsonValue& v,
                    const std::vector<Definition>& defs, const Signature& sig);

}  // namespace fragcheck
