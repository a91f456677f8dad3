#include "etext/walk.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace etext::walk {

void WalkParams::validate() const {
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw WalkError("gamma must be in (0, 1], got " + std::to_string(gamma));
  }
  if (d_max < 1) throw WalkError("d_max must be >= 1, got " + std::to_string(d_max));
}

double expected_stop_mass(const WalkParams& params) {
  double mass = 0.0;
  double keep = 1.0;
  for (int d = 1; d <= params.d_max; ++d) {
    keep *= 1.0 - params.gamma;
    mass += params.gamma * keep;
  }
  return mass;
}

SeedDistribution::SeedDistribution(std::map<NodeRef, double> weights)
    : weights_(std::move(weights)) {
  if (weights_.empty()) throw WalkError("seed distribution is empty");
  double sum = 0.0;
  for (const auto& [node, w] : weights_) {
    if (!(w > 0.0)) throw WalkError("non-positive seed weight for " + node.str());
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw WalkError("seed weights sum to " + std::to_string(sum) + ", expected 1");
  }
}

SeedDistribution seed_from_nodes(std::span<const NodeRef> nodes) {
  if (nodes.empty()) throw WalkError("seed list is empty");
  std::map<NodeRef, std::size_t> counts;
  for (const auto& n : nodes) ++counts[n];
  std::map<NodeRef, double> weights;
  const double total = static_cast<double>(nodes.size());
  for (const auto& [n, c] : counts) weights.emplace(n, static_cast<double>(c) / total);
  return SeedDistribution(std::move(weights));
}

WalkChain::WalkChain(const KnowledgeGraph& g)
    : nodes_(g.nodes().begin(), g.nodes().end()) {
  index_.reserve(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) index_.emplace(nodes_[i], i);

  groups_.resize(nodes_.size());
  row_offsets_.reserve(nodes_.size() + 1);
  row_offsets_.push_back(0);
  std::map<std::size_t, double> row;
  for (std::size_t x = 0; x < nodes_.size(); ++x) {
    for (const auto& [label, targets] : g.out_edges(nodes_[x])) {
      LabelGroup group{label, {}};
      group.targets.reserve(targets.size());
      for (const auto& y : targets) group.targets.push_back(index_.at(y));
      groups_[x].push_back(std::move(group));
    }
    row.clear();
    const auto& groups = groups_[x];
    if (groups.empty()) {
      row[x] = 1.0;
    } else {
      const double p_label = 1.0 / static_cast<double>(groups.size());
      for (const auto& group : groups) {
        const double p = p_label / static_cast<double>(group.targets.size());
        for (auto y : group.targets) row[y] += p;
      }
    }
    for (const auto& [y, p] : row) entries_.push_back({y, p});
    row_offsets_.push_back(entries_.size());
  }
}

std::optional<std::size_t> WalkChain::index_of(const NodeRef& node) const {
  auto it = index_.find(node);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::span<const TransitionEntry> WalkChain::row(std::size_t index) const {
  return std::span<const TransitionEntry>(entries_).subspan(
      row_offsets_[index], row_offsets_[index + 1] - row_offsets_[index]);
}

std::map<NodeRef, double> transition(const WalkChain& chain, const NodeRef& x) {
  auto index = chain.index_of(x);
  if (!index) throw WalkError("node not in chain: " + x.str());
  std::map<NodeRef, double> out;
  for (const auto& e : chain.row(*index)) out.emplace(chain.node(e.target), e.probability);
  return out;
}

std::vector<double> step_distribution(const WalkChain& chain,
                                      std::span<const double> dist) {
  if (dist.size() != chain.size()) {
    throw WalkError("distribution has " + std::to_string(dist.size()) +
                    " entries, chain has " + std::to_string(chain.size()));
  }
  std::vector<double> out(chain.size(), 0.0);
  for (std::size_t x = 0; x < dist.size(); ++x) {
    const double mass = dist[x];
    if (mass == 0.0) continue;
    for (const auto& e : chain.row(x)) out[e.target] += mass * e.probability;
  }
  return out;
}

double StopDistribution::total() const {
  double sum = 0.0;
  for (double s : scores) sum += s;
  return sum;
}

SeedVector seed_vector(const WalkChain& chain, const SeedDistribution& seed) {
  SeedVector out{std::vector<double>(chain.size(), 0.0), {}};
  double kept = 0.0;
  for (const auto& [node, w] : seed.weights()) {
    if (auto index = chain.index_of(node)) {
      out.weights[*index] += w;
      kept += w;
    } else {
      out.missing.push_back(node);
    }
  }
  if (!out.missing.empty() && kept > 0.0) {
    for (double& w : out.weights) w /= kept;
  }
  return out;
}

StopDistribution lazy_walk(const WalkChain& chain, std::span<const double> initial,
                           const WalkParams& params) {
  params.validate();
  if (initial.size() != chain.size()) {
    throw WalkError("seed vector has " + std::to_string(initial.size()) +
                    " entries, chain has " + std::to_string(chain.size()));
  }
  StopDistribution result{std::vector<double>(chain.size(), 0.0)};
  std::vector<double> current(initial.begin(), initial.end());
  double keep = 1.0;
  for (int d = 1; d <= params.d_max; ++d) {
    current = step_distribution(chain, current);
    keep *= 1.0 - params.gamma;
    const double weight = params.gamma * keep;
    for (std::size_t z = 0; z < current.size(); ++z) result.scores[z] += weight * current[z];
  }
  return result;
}

StopDistribution lazy_walk(const WalkChain& chain, const SeedDistribution& seed,
                           const WalkParams& params) {
  auto vec = seed_vector(chain, seed);
  if (!vec.missing.empty()) {
    throw WalkError("seed node not in chain: " + vec.missing.front().str());
  }
  return lazy_walk(chain, vec.weights, params);
}

RankedResult rank(const WalkChain& chain, const StopDistribution& scores,
                  ContainerKind target, std::size_t k) {
  RankedResult result{target, {}};
  std::vector<std::size_t> candidates;
  for (std::size_t z = 0; z < chain.size(); ++z) {
    if (scores.scores[z] > 0.0 && chain.node(z).kind() == target) candidates.push_back(z);
  }
  // Indexes follow canonical order, so the index is the tie-break.
  auto before = [&](std::size_t a, std::size_t b) {
    if (scores.scores[a] != scores.scores[b]) return scores.scores[a] > scores.scores[b];
    return a < b;
  };
  const std::size_t n = std::min(k, candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(n),
                    candidates.end(), before);
  candidates.resize(n);
  result.entries.reserve(n);
  for (auto z : candidates) result.entries.push_back({chain.node(z), scores.scores[z]});
  return result;
}

RankedResult typed_query(const WalkChain& chain, const SeedDistribution& seed,
                         ContainerKind target, std::size_t k, const WalkParams& params) {
  if (k == 0) throw WalkError("k must be >= 1");
  auto vec = seed_vector(chain, seed);
  auto scores = lazy_walk(chain, vec.weights, params);
  return rank(chain, scores, target, k);
}

}  // namespace etext::walk
