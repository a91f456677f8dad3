#include "etext/reasoner.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

#include "etext/error.hpp"

namespace etext::reasoner {

namespace {

using Relation = std::map<NodeRef, std::set<NodeRef>>;

Relation subclass_relation(const KnowledgeGraph& g) {
  Relation parents;
  for (const auto& [key, prov] : g.triple_map()) {
    if (key.predicate == EdgeLabel::kSubClassOf) parents[key.subject].insert(key.object);
  }
  return parents;
}

// Strict ancestors of `start` under an acyclic relation.
std::set<NodeRef> ancestors(const Relation& parents, const NodeRef& start) {
  std::set<NodeRef> seen;
  std::vector<NodeRef> work{start};
  while (!work.empty()) {
    NodeRef node = std::move(work.back());
    work.pop_back();
    auto it = parents.find(node);
    if (it == parents.end()) continue;
    for (const auto& p : it->second) {
      if (seen.insert(p).second) work.push_back(p);
    }
  }
  return seen;
}

void check_acyclic(const Relation& parents) {
  if (auto cycle = find_cycle(parents)) {
    std::string text;
    std::vector<std::string> members;
    for (const auto& n : *cycle) {
      text += n.str() + " -> ";
      members.push_back(n.str());
    }
    text += cycle->front().str();
    throw CycleError("subClassOf cycle: " + text, std::move(members));
  }
}

}  // namespace

std::size_t subclass_closure(KnowledgeGraph& g) {
  const Relation parents = subclass_relation(g);
  check_acyclic(parents);
  std::vector<Triple> derived;
  for (const auto& [node, direct] : parents) {
    for (const auto& ancestor : ancestors(parents, node)) {
      if (!direct.contains(ancestor)) {
        derived.push_back({node, EdgeLabel::kSubClassOf, ancestor, Provenance::kInferred});
      }
    }
  }
  std::size_t added = 0;
  for (const auto& t : derived) added += g.add_triple(t) ? 1 : 0;
  return added;
}

std::size_t type_propagation(KnowledgeGraph& g) {
  const Relation parents = subclass_relation(g);
  check_acyclic(parents);
  std::map<NodeRef, std::set<NodeRef>> closure_cache;
  std::vector<Triple> derived;
  for (const auto& [key, prov] : g.triple_map()) {
    if (key.predicate != EdgeLabel::kTypeOf) continue;
    auto it = closure_cache.find(key.object);
    if (it == closure_cache.end()) {
      it = closure_cache.emplace(key.object, ancestors(parents, key.object)).first;
    }
    for (const auto& cls : it->second) {
      if (cls == key.subject) continue;
      if (!g.contains(key.subject, EdgeLabel::kTypeOf, cls)) {
        derived.push_back({key.subject, EdgeLabel::kTypeOf, cls, Provenance::kInferred});
      }
    }
  }
  std::size_t added = 0;
  for (const auto& t : derived) added += g.add_triple(t) ? 1 : 0;
  return added;
}

std::size_t materialize_inverses(KnowledgeGraph& g) {
  std::vector<Triple> derived;
  for (const auto& [key, prov] : g.triple_map()) {
    const auto inv = inverse(key.predicate);
    if (!g.contains(key.object, inv, key.subject)) {
      derived.push_back({key.object, inv, key.subject, Provenance::kInferred});
    }
  }
  std::size_t added = 0;
  for (const auto& t : derived) added += g.add_triple(t) ? 1 : 0;
  return added;
}

std::size_t saturate(KnowledgeGraph& g) {
  std::size_t total = 0;
  while (true) {
    std::size_t round = subclass_closure(g);
    round += type_propagation(g);
    round += materialize_inverses(g);
    total += round;
    if (round == 0) return total;
  }
}

}  // namespace etext::reasoner
