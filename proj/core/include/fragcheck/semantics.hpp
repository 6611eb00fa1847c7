#pragma once

#include <functional>

#include "fragcheck/process.hpp"

namespace fragcheck {

struct Verdict {
  bool holds = false;
  std::optional<Run> witness;  // satisfying run for E, refuting run for A
  std::vector<std::string> diagnostics;
};

/// Enumerate the maximal runs from the instance's initial state with at
/// most `bound` transitions; a run ends at a state with no enabled
/// transitions ("stuck") or at the bound ("bound"). The visitor returns
/// false to stop the enumeration. Ill-formed continuations (script runtime
/// errors) are discarded and reported through `diagnostics` when given.
void for_each_run(const Instance& inst, int bound,
                  const std::function<bool(const Run&)>& visit,
                  std::vector<std::string>* diagnostics = nullptr);

std::vector<Run> enumerate_runs(const Instance& inst, int bound,
                                std::vector<std::string>* diagnostics = nullptr);

/// Satisfaction of a path formula on a finite run, starting at `pos`.
/// `base_budget` is the transition budget the run was enumerated with (at
/// position 0); nested path quantifiers at position i use base_budget - i.
bool eval_path_on(const Instance& inst, const Run& run, size_t pos,
                  const PathPtr& psi, int base_budget);

/// Satisfaction of a state formula at an arbitrary state.
bool eval_state_at(const Instance& inst, const State& st, const PathPtr& phi,
                   int budget);

/// Decide an expanded query by explicit run enumeration. The verdict
/// carries a witness run for a true E-query or a false A-query.
Verdict eval_query(const Instance& inst, const Query& q, int bound);

}  // namespace fragcheck
