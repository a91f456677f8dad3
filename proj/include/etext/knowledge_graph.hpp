#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "etext/edge_label.hpp"
#include "etext/error.hpp"
#include "etext/node_ref.hpp"

namespace etext {

struct Triple {
  NodeRef subject;
  EdgeLabel predicate;
  NodeRef object;
  Provenance provenance = Provenance::kAuthored;

  friend bool operator==(const Triple&, const Triple&) = default;
};

// Identity of a triple in the store; provenance is an attribute, not a key.
struct TripleKey {
  NodeRef subject;
  EdgeLabel predicate;
  NodeRef object;

  friend bool operator==(const TripleKey&, const TripleKey&) = default;
  friend std::strong_ordering operator<=>(const TripleKey&,
                                          const TripleKey&) = default;
};

// Labeled directed multigraph over NodeRefs with per-triple provenance.
//
// Built by a single writer, then shared read-only: const member functions do
// not mutate any state, so a graph that is no longer modified may be read
// from any number of threads. All iteration is in canonical NodeRef order.
class KnowledgeGraph {
 public:
  using NodeSet = std::set<NodeRef>;
  using LabelMap = std::map<EdgeLabel, NodeSet>;

  // Returns true if the triple was new. Duplicates keep the provenance they
  // were first inserted with. Throws Error on a reflexive subClassOf or
  // superClassOf triple.
  bool add_triple(const Triple& t);
  bool add_triple(const NodeRef& s, EdgeLabel p, const NodeRef& o,
                  Provenance prov = Provenance::kAuthored) {
    return add_triple(Triple{s, p, o, prov});
  }
  void add_node(const NodeRef& node);

  bool has_node(const NodeRef& node) const { return nodes_.contains(node); }
  bool contains(const NodeRef& s, EdgeLabel p, const NodeRef& o) const;
  std::optional<Provenance> provenance(const NodeRef& s, EdgeLabel p,
                                       const NodeRef& o) const;

  const NodeSet& nodes() const { return nodes_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t triple_count() const { return triples_.size(); }
  std::size_t count(Provenance p) const;

  // All triples in (subject, predicate, object) order.
  std::vector<Triple> triples() const;
  const std::map<TripleKey, Provenance>& triple_map() const { return triples_; }

  // L(x): labels with at least one outgoing edge from x. Unknown nodes yield
  // an empty set.
  std::set<EdgeLabel> out_labels(const NodeRef& x) const;
  // Y(x, label) in canonical order; empty for unknown nodes.
  const NodeSet& neighbors(const NodeRef& x, EdgeLabel label) const;
  const NodeSet& in_neighbors(const NodeRef& x, EdgeLabel label) const;
  const LabelMap& out_edges(const NodeRef& x) const;
  const LabelMap& in_edges(const NodeRef& x) const;

  // Copy holding only triples whose provenance satisfies `keep`. Nodes that
  // were isolated in this graph stay present.
  KnowledgeGraph filter(const std::function<bool(Provenance)>& keep) const;

  friend bool operator==(const KnowledgeGraph& a, const KnowledgeGraph& b) {
    return a.nodes_ == b.nodes_ && a.triples_ == b.triples_;
  }

 private:
  NodeSet nodes_;
  std::map<TripleKey, Provenance> triples_;
  std::map<NodeRef, LabelMap> out_;
  std::map<NodeRef, LabelMap> in_;
};

// Finds a directed cycle in `edges` (node -> successors). Returns the cycle
// members in traversal order, or nullopt when the relation is acyclic.
std::optional<std::vector<NodeRef>> find_cycle(
    const std::map<NodeRef, std::set<NodeRef>>& edges);

}  // namespace etext
