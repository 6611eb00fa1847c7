#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fragcheck/ctlstar.hpp"
#include "fragcheck/script.hpp"

namespace fragcheck {

struct NodeLabel {
  bool init = false;
  bool entry = false;
  bool exit = false;
  std::optional<FormulaPtr> guard;  // required on entry nodes
  std::map<std::string, JsonValue> meta;  // inert annotations ("final", ...)
};

struct FragmentNode {
  std::string id;
  NodeLabel label;
};

struct Edge {
  std::string name;  // "e1" or a generated name for composed edges
  std::string from;
  std::string to;
  FormulaPtr guard;   // free vars at most {db}
  Script script;
  TermPtr update;     // to_update_term(script), kept alongside
  bool composed = false;  // true for exit->entry edges added by compose
};

struct Fragment {
  std::string name;
  std::vector<FragmentNode> nodes;
  std::vector<Edge> edges;
};

/// The composed process: all fragment nodes, all fragment edges, plus one
/// edge per (exit node, entry node) pair labeled with the entry guard, the
/// empty script and the identity update.
struct ProcessModel {
  std::vector<FragmentNode> nodes;
  std::string initial;
  std::vector<Edge> edges;  // multiset; explicit and composed edges coexist

  const FragmentNode* find_node(const std::string& id) const;
  /// Outgoing edges of a node, ordered by (target id, edge name).
  std::vector<const Edge*> outgoing(const std::string& node) const;
};

/// Compose fragments. Node identifiers must be globally unique, exactly
/// one node anywhere carries the init label, and every entry node carries
/// a guard. Composition is insensitive to fragment order.
ProcessModel compose(const std::vector<Fragment>& fragments,
                     const Signature& sig);

struct Specification {
  TypeEnv types;
  Signature signature;
  ProcessModel process;
  std::vector<Definition> definitions;
  std::vector<PathPtr> constraints;
  std::string name = "spec";
};

struct Instance {
  JsonValue initial_db;  // must conform to DB
  const Specification* spec = nullptr;
};

/// A concrete process state and run.
struct State {
  std::string node;
  JsonValue db;
  bool operator==(const State& o) const {
    return node == o.node && db == o.db;
  }
};

struct Run {
  std::vector<State> states;
  std::vector<std::string> edges;  // edge names, size = states.size() - 1
  std::vector<std::string> notes;  // diagnostics ("stuck", errors)

  size_t length() const { return states.size(); }
  std::string render(const Signature& sig) const;  // node0 --e--> node1 ...
};

/// Concrete enabled transitions from a state: each outgoing edge whose
/// instantiated guard follows from the definitions, paired with the
/// successor state. Throws ScriptRuntimeError from guard or script
/// evaluation to the caller.
std::vector<std::pair<const Edge*, State>> enabled_transitions(
    const State& st, const Specification& spec);

/// Check the run conditions: consecutive states connected by an edge whose
/// guard held and whose script produced the next database. Returns an
/// explanation for the first violated condition, nullopt when valid.
std::optional<std::string> validate_run(const Run& r,
                                        const Specification& spec);

}  // namespace fragcheck
