#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "etext/error.hpp"
#include "etext/knowledge_graph.hpp"

// Typed similarity by truncated lazy random walk over a knowledge graph.
//
// From node x the walker picks an outgoing label uniformly from L(x), then a
// target uniformly from Y(x, label). It stops after each step with
// probability gamma, and the score of z is the probability of stopping at z
// within d_max steps:
//
//   Q(z) = gamma * sum_{d=1..d_max} (1 - gamma)^d * P_d(z)
//
// where P_d is the seed distribution pushed d steps through the chain. Nodes
// without outgoing edges keep their mass (self-retention), so the total stop
// mass is exactly gamma * sum_d (1 - gamma)^d for any seed.
namespace etext::walk {

class WalkError : public Error {
 public:
  using Error::Error;
};

struct WalkParams {
  double gamma = 0.5;
  int d_max = 10;

  // Throws WalkError unless gamma is in (0, 1] and d_max >= 1.
  void validate() const;
};

// gamma * sum_{d=1..d_max} (1 - gamma)^d
double expected_stop_mass(const WalkParams& params);

class SeedDistribution {
 public:
  // Throws WalkError unless every weight is > 0 and they sum to 1 (1e-12).
  explicit SeedDistribution(std::map<NodeRef, double> weights);

  const std::map<NodeRef, double>& weights() const { return weights_; }

 private:
  std::map<NodeRef, double> weights_;
};

// Uniform 1/n weight per occurrence; duplicates accumulate. Throws WalkError
// on an empty list.
SeedDistribution seed_from_nodes(std::span<const NodeRef> nodes);

struct LabelGroup {
  EdgeLabel label;
  std::vector<std::size_t> targets;  // Y(x, label), canonical order
};

struct TransitionEntry {
  std::size_t target;
  double probability;
};

// Immutable Markov chain over the nodes of a graph. Node indexes follow the
// canonical NodeRef order. Safe to share across threads.
class WalkChain {
 public:
  WalkChain() = default;
  explicit WalkChain(const KnowledgeGraph& g);

  std::size_t size() const { return nodes_.size(); }
  const NodeRef& node(std::size_t index) const { return nodes_[index]; }
  const std::vector<NodeRef>& nodes() const { return nodes_; }
  std::optional<std::size_t> index_of(const NodeRef& node) const;
  bool dangling(std::size_t index) const { return groups_[index].empty(); }
  std::span<const LabelGroup> label_groups(std::size_t index) const {
    return groups_[index];
  }
  // T(.|x) as (target, probability) sorted by target index; {x: 1} for a
  // dangling x.
  std::span<const TransitionEntry> row(std::size_t index) const;

 private:
  std::vector<NodeRef> nodes_;
  std::unordered_map<NodeRef, std::size_t> index_;
  std::vector<std::vector<LabelGroup>> groups_;
  std::vector<std::size_t> row_offsets_;
  std::vector<TransitionEntry> entries_;
};

inline WalkChain build_chain(const KnowledgeGraph& g) { return WalkChain(g); }

// Throws WalkError for a node outside the chain.
std::map<NodeRef, double> transition(const WalkChain& chain, const NodeRef& x);

// out(z) = sum_x dist(x) * T(z|x). Throws WalkError on a size mismatch.
std::vector<double> step_distribution(const WalkChain& chain,
                                      std::span<const double> dist);

struct StopDistribution {
  std::vector<double> scores;  // indexed like the chain
  double total() const;
};

// Dense seed vector. Seeds outside the chain are dropped and the remaining
// weights renormalized; the result is all zeros if every seed is missing.
struct SeedVector {
  std::vector<double> weights;
  std::vector<NodeRef> missing;
};
SeedVector seed_vector(const WalkChain& chain, const SeedDistribution& seed);

StopDistribution lazy_walk(const WalkChain& chain, std::span<const double> initial,
                           const WalkParams& params = {});
// Throws WalkError if any seed node is outside the chain.
StopDistribution lazy_walk(const WalkChain& chain, const SeedDistribution& seed,
                           const WalkParams& params = {});

struct RankedEntry {
  NodeRef node;
  double score;
};

struct RankedResult {
  ContainerKind target_kind = ContainerKind::kQuestion;
  std::vector<RankedEntry> entries;
};

// Nodes of `target` with a nonzero score, by score descending then canonical
// order, truncated to k.
RankedResult rank(const WalkChain& chain, const StopDistribution& scores,
                  ContainerKind target, std::size_t k);

// Seeds outside the chain are dropped (see seed_vector). Throws WalkError
// when k == 0.
RankedResult typed_query(const WalkChain& chain, const SeedDistribution& seed,
                         ContainerKind target, std::size_t k = 10,
                         const WalkParams& params = {});

}  // namespace etext::walk
