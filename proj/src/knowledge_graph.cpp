#include "etext/knowledge_graph.hpp"

#include <algorithm>

#include "etext/error.hpp"

namespace etext {

namespace {

const KnowledgeGraph::NodeSet kEmptyNodes;
const KnowledgeGraph::LabelMap kEmptyLabels;

}  // namespace

bool KnowledgeGraph::add_triple(const Triple& t) {
  if ((t.predicate == EdgeLabel::kSubClassOf ||
       t.predicate == EdgeLabel::kSuperClassOf) &&
      t.subject == t.object) {
    throw Error("reflexive " + std::string(label_name(t.predicate)) +
                " triple on " + t.subject.str());
  }
  auto [it, inserted] =
      triples_.emplace(TripleKey{t.subject, t.predicate, t.object}, t.provenance);
  if (!inserted) return false;
  nodes_.insert(t.subject);
  nodes_.insert(t.object);
  out_[t.subject][t.predicate].insert(t.object);
  in_[t.object][t.predicate].insert(t.subject);
  return true;
}

void KnowledgeGraph::add_node(const NodeRef& node) { nodes_.insert(node); }

bool KnowledgeGraph::contains(const NodeRef& s, EdgeLabel p,
                              const NodeRef& o) const {
  return triples_.contains(TripleKey{s, p, o});
}

std::optional<Provenance> KnowledgeGraph::provenance(const NodeRef& s,
                                                     EdgeLabel p,
                                                     const NodeRef& o) const {
  auto it = triples_.find(TripleKey{s, p, o});
  if (it == triples_.end()) return std::nullopt;
  return it->second;
}

std::size_t KnowledgeGraph::count(Provenance p) const {
  return static_cast<std::size_t>(
      std::count_if(triples_.begin(), triples_.end(),
                    [p](const auto& entry) { return entry.second == p; }));
}

std::vector<Triple> KnowledgeGraph::triples() const {
  std::vector<Triple> out;
  out.reserve(triples_.size());
  for (const auto& [key, prov] : triples_) {
    out.push_back(Triple{key.subject, key.predicate, key.object, prov});
  }
  return out;
}

std::set<EdgeLabel> KnowledgeGraph::out_labels(const NodeRef& x) const {
  std::set<EdgeLabel> labels;
  for (const auto& [label, targets] : out_edges(x)) labels.insert(label);
  return labels;
}

const KnowledgeGraph::NodeSet& KnowledgeGraph::neighbors(const NodeRef& x,
                                                         EdgeLabel label) const {
  const auto& labels = out_edges(x);
  auto it = labels.find(label);
  return it == labels.end() ? kEmptyNodes : it->second;
}

const KnowledgeGraph::NodeSet& KnowledgeGraph::in_neighbors(
    const NodeRef& x, EdgeLabel label) const {
  const auto& labels = in_edges(x);
  auto it = labels.find(label);
  return it == labels.end() ? kEmptyNodes : it->second;
}

const KnowledgeGraph::LabelMap& KnowledgeGraph::out_edges(const NodeRef& x) const {
  auto it = out_.find(x);
  return it == out_.end() ? kEmptyLabels : it->second;
}

const KnowledgeGraph::LabelMap& KnowledgeGraph::in_edges(const NodeRef& x) const {
  auto it = in_.find(x);
  return it == in_.end() ? kEmptyLabels : it->second;
}

KnowledgeGraph KnowledgeGraph::filter(
    const std::function<bool(Provenance)>& keep) const {
  KnowledgeGraph out;
  for (const auto& [key, prov] : triples_) {
    if (keep(prov)) out.add_triple(key.subject, key.predicate, key.object, prov);
  }
  for (const auto& node : nodes_) {
    if (!out_.contains(node) && !in_.contains(node)) out.add_node(node);
  }
  return out;
}

std::optional<std::vector<NodeRef>> find_cycle(
    const std::map<NodeRef, std::set<NodeRef>>& edges) {
  enum class Mark { kUnseen, kActive, kDone };
  std::map<NodeRef, Mark> marks;
  std::vector<NodeRef> path;

  // Iterative DFS keeps deep topic chains off the call stack.
  struct Frame {
    NodeRef node;
    std::set<NodeRef>::const_iterator next;
    std::set<NodeRef>::const_iterator end;
  };
  static const std::set<NodeRef> kNone;

  auto successors = [&](const NodeRef& n) -> const std::set<NodeRef>& {
    auto it = edges.find(n);
    return it == edges.end() ? kNone : it->second;
  };

  for (const auto& [root, unused] : edges) {
    if (marks[root] != Mark::kUnseen) continue;
    std::vector<Frame> stack;
    const auto& root_succ = successors(root);
    stack.push_back({root, root_succ.begin(), root_succ.end()});
    marks[root] = Mark::kActive;
    path.push_back(root);
    while (!stack.empty()) {
      auto& frame = stack.back();
      if (frame.next == frame.end) {
        marks[frame.node] = Mark::kDone;
        path.pop_back();
        stack.pop_back();
        continue;
      }
      const NodeRef child = *frame.next++;
      auto& mark = marks[child];
      if (mark == Mark::kActive) {
        auto start = std::find(path.begin(), path.end(), child);
        return std::vector<NodeRef>(start, path.end());
      }
      if (mark == Mark::kDone) continue;
      mark = Mark::kActive;
      path.push_back(child);
      const auto& succ = successors(child);
      stack.push_back({child, succ.begin(), succ.end()});
    }
  }
  return std::nullopt;
}

}  // namespace etext
