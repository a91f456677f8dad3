#pragma once

// Independent reference implementations used only by tests. None of these
// call into the reasoner or walk modules; they work from raw triple lists.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "etext/knowledge_graph.hpp"

namespace etext::testing {

using RawTriple = std::tuple<std::string, int, std::string>;

inline std::set<RawTriple> raw_triples(const KnowledgeGraph& g) {
  std::set<RawTriple> out;
  for (const auto& t : g.triples()) {
    out.emplace(t.subject.str(), static_cast<int>(t.predicate), t.object.str());
  }
  return out;
}

struct NaiveSaturation {
  std::set<RawTriple> triples;
  bool cycle = false;
};

// Applies any rule anywhere until nothing changes. A derivable reflexive
// subClassOf means the hierarchy is cyclic.
inline NaiveSaturation naive_saturate(std::set<RawTriple> facts) {
  const int sub = static_cast<int>(EdgeLabel::kSubClassOf);
  const int type = static_cast<int>(EdgeLabel::kTypeOf);
  NaiveSaturation out;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<RawTriple> snapshot(facts.begin(), facts.end());
    for (const auto& [a, p1, b] : snapshot) {
      const int inv = static_cast<int>(inverse(static_cast<EdgeLabel>(p1)));
      changed |= facts.emplace(b, inv, a).second;
      if (p1 != sub && p1 != type) continue;
      for (const auto& [b2, p2, c] : snapshot) {
        if (p2 != sub || b2 != b) continue;
        if (a == c) {
          if (p1 == sub) {
            out.cycle = true;
            out.triples = facts;
            return out;
          }
          continue;
        }
        changed |= facts.emplace(a, p1, c).second;
      }
    }
  }
  out.triples = std::move(facts);
  return out;
}

// Q(z) by enumerating every labeled path of length 1..d_max from each seed.
// A node without outgoing edges keeps the walker in place.
inline std::map<std::string, double> enumerate_paths(
    const std::vector<Triple>& triples, const std::map<std::string, double>& seed,
    double gamma, int d_max) {
  std::map<std::string, std::map<int, std::set<std::string>>> out;
  for (const auto& t : triples) {
    out[t.subject.str()][static_cast<int>(t.predicate)].insert(t.object.str());
  }
  std::map<std::string, double> q;
  struct Walker {
    const std::map<std::string, std::map<int, std::set<std::string>>>& out;
    std::map<std::string, double>& q;
    double gamma;
    int d_max;
    void go(const std::string& x, int depth, double prob) {
      if (depth == d_max) return;
      const int d = depth + 1;
      const double stop = gamma * std::pow(1.0 - gamma, d);
      auto it = out.find(x);
      if (it == out.end() || it->second.empty()) {
        q[x] += stop * prob;
        go(x, d, prob);
        return;
      }
      const double p_label = 1.0 / static_cast<double>(it->second.size());
      for (const auto& [label, ys] : it->second) {
        const double p = prob * p_label / static_cast<double>(ys.size());
        for (const auto& y : ys) {
          q[y] += stop * p;
          go(y, d, p);
        }
      }
    }
  };
  Walker w{out, q, gamma, d_max};
  for (const auto& [node, weight] : seed) w.go(node, 0, weight);
  return q;
}

// Random labeled graph with at most `max_nodes` nodes drawn from mixed
// namespaces and at most `max_labels` distinct labels.
inline KnowledgeGraph random_graph(std::mt19937& rng, int max_nodes, int max_labels,
                                   int max_edges) {
  static const Namespace kSpaces[] = {Namespace::kTopic, Namespace::kDescription,
                                      Namespace::kQuestion, Namespace::kTerm,
                                      Namespace::kName, Namespace::kConcept};
  std::uniform_int_distribution<int> n_dist(2, max_nodes);
  const int n = n_dist(rng);
  std::vector<NodeRef> nodes;
  for (int i = 0; i < n; ++i) {
    nodes.emplace_back(kSpaces[std::uniform_int_distribution<int>(0, 5)(rng)],
                       "n" + std::to_string(i));
  }
  std::vector<EdgeLabel> all(kAllEdgeLabels.begin(), kAllEdgeLabels.end());
  std::shuffle(all.begin(), all.end(), rng);
  const int label_count = std::uniform_int_distribution<int>(1, max_labels)(rng);
  std::vector<EdgeLabel> labels(all.begin(), all.begin() + label_count);

  KnowledgeGraph g;
  for (const auto& node : nodes) g.add_node(node);
  const int edges = std::uniform_int_distribution<int>(1, max_edges)(rng);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_int_distribution<int> pick_label(0, label_count - 1);
  for (int e = 0; e < edges; ++e) {
    const auto& s = nodes[pick(rng)];
    const auto& o = nodes[pick(rng)];
    const auto label = labels[pick_label(rng)];
    if (s == o && (label == EdgeLabel::kSubClassOf || label == EdgeLabel::kSuperClassOf)) {
      continue;
    }
    g.add_triple(s, label, o);
  }
  return g;
}

// Random small graph over the reasoning vocabulary: topics linked by
// subClassOf (kept acyclic unless `allow_cycles`), descriptions typed at
// topics, plus a sprinkling of other labels and inverse-direction facts.
inline KnowledgeGraph random_reasoning_graph(std::mt19937& rng, int max_triples,
                                             bool allow_cycles) {
  const int topics = std::uniform_int_distribution<int>(2, 7)(rng);
  const int descs = std::uniform_int_distribution<int>(1, 5)(rng);
  auto topic = [](int i) { return NodeRef(Namespace::kTopic, "t" + std::to_string(i)); };
  auto desc = [](int i) { return NodeRef(Namespace::kDescription, "d" + std::to_string(i)); };
  KnowledgeGraph g;
  const int count = std::uniform_int_distribution<int>(1, max_triples)(rng);
  std::uniform_int_distribution<int> kind(0, 9);
  std::uniform_int_distribution<int> t_pick(0, topics - 1);
  std::uniform_int_distribution<int> d_pick(0, descs - 1);
  // Small vocabularies may not admit `count` distinct triples; attempts are capped.
  for (int attempt = 0; attempt < 20 * max_triples && static_cast<int>(g.triple_count()) < count;
       ++attempt) {
    switch (kind(rng)) {
      case 0:
      case 1:
      case 2: {
        int a = t_pick(rng);
        int b = t_pick(rng);
        if (a == b) break;
        if (!allow_cycles && a < b) std::swap(a, b);  // edges point to lower ids
        g.add_triple(topic(a), EdgeLabel::kSubClassOf, topic(b));
        break;
      }
      case 3: {
        int a = t_pick(rng);
        int b = t_pick(rng);
        if (a == b) break;
        if (!allow_cycles && a > b) std::swap(a, b);
        g.add_triple(topic(a), EdgeLabel::kSuperClassOf, topic(b));
        break;
      }
      case 4:
      case 5:
        g.add_triple(desc(d_pick(rng)), EdgeLabel::kTypeOf, topic(t_pick(rng)));
        break;
      case 6:
        g.add_triple(topic(t_pick(rng)), EdgeLabel::kHasInstance, desc(d_pick(rng)));
        break;
      case 7: {
        int a = d_pick(rng);
        int b = d_pick(rng);
        g.add_triple(desc(a), EdgeLabel::kNextPage, desc(b));
        break;
      }
      case 8:
        g.add_triple(NodeRef(Namespace::kQuestion, "q" + std::to_string(d_pick(rng))),
                     EdgeLabel::kIsQuestionOf, desc(d_pick(rng)));
        break;
      default:
        g.add_triple(NodeRef(Namespace::kTerm, "w" + std::to_string(d_pick(rng))),
                     EdgeLabel::kDicTermFor, desc(d_pick(rng)));
        break;
    }
  }
  return g;
}

}  // namespace etext::testing
