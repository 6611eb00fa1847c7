#include "fragcheck/process.hpp"

#include <algorithm>
#include <set>

#include "fragcheck/eval.hpp"

namespace fragcheck {

const FragmentNode* ProcessModel::find_node(const std::string& id) const {
  for (const auto& n : nodes)
    if (n.id == id) return &n;
  return nullptr;
}

std::vector<const Edge*> ProcessModel::outgoing(const std::string& node) const {
  std::vector<const Edge*> out;
  for (const auto& e : edges)
    if (e.from == node) out.push_back(&e);
  std::sort(out.begin(), out.end(), [](const Edge* a, const Edge* b) {
    if (a->to != b->to) return a->to < b->to;
    return a->name < b->name;
  });
  return out;
}

ProcessModel compose(const std::vector<Fragment>& fragments,
                     const Signature& sig) {
  ProcessModel model;
  std::set<std::string> seen;
  std::vector<const FragmentNode*> exits;
  std::vector<const FragmentNode*> entries;
  std::vector<std::string> inits;

  for (const auto& frag : fragments) {
    for (const auto& node : frag.nodes) {
      if (!seen.insert(node.id).second)
        throw ValidationError("node id '" + node.id +
                              "' occurs in more than one place");
      if (node.label.entry && !node.label.guard)
        throw ValidationError("entry node '" + node.id +
                              "' is missing a guard");
      model.nodes.push_back(node);
      if (node.label.init) inits.push_back(node.id);
    }
    for (const auto& edge : frag.edges) model.edges.push_back(edge);
  }
  for (const auto& node : model.nodes) {
    if (node.label.exit) exits.push_back(&node);
    if (node.label.entry) entries.push_back(&node);
  }
  if (inits.size() != 1)
    throw ValidationError(inits.empty()
                              ? "no node is labeled init"
                              : "more than one node is labeled init");
  model.initial = inits[0];

  for (const auto& e : model.edges) {
    if (!seen.count(e.from))
      throw ValidationError("edge '" + e.name + "' leaves unknown node '" +
                            e.from + "'");
    if (!seen.count(e.to))
      throw ValidationError("edge '" + e.name + "' enters unknown node '" +
                            e.to + "'");
  }

  // exit->entry pairs, self-pairs included; labels: entry guard, empty
  // script, identity update
  Script empty_script;
  TermPtr identity = db_var(sig);
  for (const auto* m : exits) {
    for (const auto* n : entries) {
      Edge e;
      e.name = "compose:" + m->id + "->" + n->id;
      e.from = m->id;
      e.to = n->id;
      e.guard = *n->label.guard;
      e.script = empty_script;
      e.update = identity;
      e.composed = true;
      model.edges.push_back(std::move(e));
    }
  }
  return model;
}

std::string Run::render(const Signature& sig) const {
  (void)sig;
  std::string out;
  for (size_t i = 0; i < states.size(); ++i) {
    if (i) out += " --" + edges[i - 1] + "--> ";
    out += states[i].node;
  }
  if (!states.empty()) out += "  " + states.back().db.dump();
  return out;
}

std::vector<std::pair<const Edge*, State>> enabled_transitions(
    const State& st, const Specification& spec) {
  std::vector<std::pair<const Edge*, State>> out;
  for (const Edge* e : spec.process.outgoing(st.node)) {
    if (!eval_classical(e->guard, st.db, spec.definitions, spec.signature))
      continue;
    State succ;
    succ.node = e->to;
    succ.db = exec(e->script, st.db, spec.signature);
    out.emplace_back(e, std::move(succ));
  }
  return out;
}

std::optional<std::string> validate_run(const Run& r,
                                        const Specification& spec) {
  if (r.states.empty()) return "a run has at least the initial state";
  if (r.states[0].node != spec.process.initial)
    return "run does not start at the initial node";
  if (r.edges.size() + 1 != r.states.size())
    return "edge/state count mismatch";
  for (size_t i = 0; i < r.edges.size(); ++i) {
    const Edge* edge = nullptr;
    for (const auto& e : spec.process.edges)
      if (e.name == r.edges[i] && e.from == r.states[i].node &&
          e.to == r.states[i + 1].node) {
        edge = &e;
        break;
      }
    if (!edge)
      return "no edge '" + r.edges[i] + "' from " + r.states[i].node +
             " to " + r.states[i + 1].node;
    if (!eval_classical(edge->guard, r.states[i].db, spec.definitions,
                        spec.signature))
      return "guard of '" + edge->name + "' does not hold at step " +
             std::to_string(i);
    JsonValue next = exec(edge->script, r.states[i].db, spec.signature);
    if (next != r.states[i + 1].db)
      return "script of '" + edge->name + "' does not produce state " +
             std::to_string(i + 1);
  }
  return std::nullopt;
}

}  // namespace fragcheck
