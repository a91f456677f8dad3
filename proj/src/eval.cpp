#include "etext/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

namespace etext::eval {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  while (true) {
    auto pos = s.find(sep);
    parts.push_back(s.substr(0, pos));
    if (pos == std::string_view::npos) break;
    s.remove_prefix(pos + 1);
  }
  return parts;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

double average_precision(std::span<const NodeRef> ranked, const std::set<NodeRef>& relevant,
                         std::size_t cutoff) {
  if (relevant.empty() || cutoff == 0) return 0.0;
  double sum = 0.0;
  std::size_t hits = 0;
  const std::size_t n = std::min(cutoff, ranked.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (relevant.contains(ranked[i])) {
      ++hits;
      sum += static_cast<double>(hits) / static_cast<double>(i + 1);
    }
  }
  return sum / static_cast<double>(std::min(relevant.size(), cutoff));
}

double average_precision(const walk::RankedResult& result, const std::set<NodeRef>& relevant,
                         std::size_t cutoff) {
  std::vector<NodeRef> ranked;
  ranked.reserve(result.entries.size());
  for (const auto& e : result.entries) ranked.push_back(e.node);
  return average_precision(ranked, relevant, cutoff);
}

double round2(double value) { return std::round(value * 100.0) / 100.0; }

double mean_average_precision(std::span<const double> average_precisions) {
  if (average_precisions.empty()) throw EvalError("MAP over an empty query list");
  double sum = 0.0;
  for (double ap : average_precisions) sum += ap;
  return round2(100.0 * sum / static_cast<double>(average_precisions.size()));
}

double mean_average_precision(
    const std::vector<std::pair<walk::RankedResult, std::set<NodeRef>>>& results,
    std::size_t cutoff) {
  std::vector<double> aps;
  aps.reserve(results.size());
  for (const auto& [result, relevant] : results) {
    aps.push_back(average_precision(result, relevant, cutoff));
  }
  return mean_average_precision(aps);
}

double delta_map(double base, double variant) {
  if (!(base > 0.0)) throw EvalError("delta MAP needs a positive baseline");
  return round2(100.0 * (variant - base) / base);
}

JudgmentSet parse_judgments(std::istream& in) {
  JudgmentSet out;
  std::set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line.front() == '#') continue;
    auto fail = [&](const std::string& what) {
      throw ParseError("judgments line " + std::to_string(line_no) + ": " + what, line_no);
    };
    const auto fields = split(line, '\t');
    if (fields.size() != 4) fail("expected 4 tab-separated fields");
    Judgment j;
    j.query_id = std::string(trim(fields[0]));
    if (j.query_id.empty()) fail("empty query id");
    if (!ids.insert(j.query_id).second) fail("duplicate query id '" + j.query_id + "'");
    for (auto seed : split(fields[1], ',')) {
      seed = trim(seed);
      if (seed.empty()) continue;
      auto ref = NodeRef::try_parse(seed);
      if (!ref) fail("malformed seed '" + std::string(seed) + "'");
      j.seeds.push_back(*ref);
    }
    if (j.seeds.empty()) fail("no seeds");
    auto kind = container_from_name(trim(fields[2]));
    if (!kind) fail("unknown target kind '" + std::string(trim(fields[2])) + "'");
    j.target = *kind;
    for (auto rel : split(fields[3], ',')) {
      rel = trim(rel);
      if (rel.empty()) continue;
      auto ref = NodeRef::try_parse(rel);
      if (!ref) fail("malformed relevant node '" + std::string(rel) + "'");
      if (ref->kind() != j.target) {
        fail("relevant node " + ref->str() + " is not a " +
             std::string(container_name(j.target)));
      }
      j.relevant.insert(*ref);
    }
    out.push_back(std::move(j));
  }
  return out;
}

JudgmentSet read_judgments_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw EvalError("cannot open judgments: " + path);
  return parse_judgments(in);
}

std::string_view variant_name(AblationVariant v) {
  switch (v) {
    case AblationVariant::kAuthored:
      return "Authored";
    case AblationVariant::kAuthoredPlusLexical:
      return "AuthoredPlusLexical";
    case AblationVariant::kAuthoredPlusInferred:
      return "AuthoredPlusInferred";
    case AblationVariant::kAuthoredPlusInferredPlusLexical:
      return "AuthoredPlusInferredPlusLexical";
  }
  return "?";
}

bool includes(AblationVariant v, Provenance p) {
  switch (p) {
    case Provenance::kAuthored:
      return true;
    case Provenance::kInferred:
      return v == AblationVariant::kAuthoredPlusInferred ||
             v == AblationVariant::kAuthoredPlusInferredPlusLexical;
    case Provenance::kLexical:
      return v == AblationVariant::kAuthoredPlusLexical ||
             v == AblationVariant::kAuthoredPlusInferredPlusLexical;
  }
  return false;
}

KnowledgeGraph variant_graph(const KnowledgeGraph& full, AblationVariant v) {
  return full.filter([v](Provenance p) { return includes(v, p); });
}

AblationReport run_ablation(const KnowledgeGraph& corpus, const JudgmentSet& judgments,
                            const walk::WalkParams& params, std::size_t cutoff) {
  params.validate();
  if (judgments.empty()) throw EvalError("judgment set is empty");
  for (auto p : {Provenance::kAuthored, Provenance::kInferred, Provenance::kLexical}) {
    if (corpus.count(p) == 0) {
      throw EvalError("corpus has no " + std::string(provenance_name(p)) +
                      " triples; build it with inference and word linkage enabled");
    }
  }

  AblationReport report;
  for (auto variant : kAllVariants) {
    const KnowledgeGraph graph = variant_graph(corpus, variant);
    const walk::WalkChain chain(graph);
    VariantReport row;
    row.variant = variant;
    row.nodes = graph.node_count();
    row.triples = graph.triple_count();
    std::vector<double> aps;
    for (const auto& j : judgments) {
      QueryOutcome outcome;
      outcome.query_id = j.query_id;
      const auto seed = walk::seed_from_nodes(j.seeds);
      const auto vec = walk::seed_vector(chain, seed);
      outcome.missing_seeds = vec.missing.size();
      outcome.all_seeds_missing = vec.missing.size() == seed.weights().size();
      if (outcome.all_seeds_missing) {
        ++row.flagged_queries;
        outcome.result.target_kind = j.target;
      } else {
        const auto scores = walk::lazy_walk(chain, vec.weights, params);
        outcome.result = walk::rank(chain, scores, j.target, cutoff);
        outcome.average_precision = average_precision(outcome.result, j.relevant, cutoff);
      }
      aps.push_back(outcome.average_precision);
      row.queries.push_back(std::move(outcome));
    }
    row.map = mean_average_precision(aps);
    report.rows.push_back(std::move(row));
  }
  const double base = report.rows.front().map;
  for (auto& row : report.rows) {
    if (base > 0.0) row.delta = delta_map(base, row.map);
  }
  return report;
}

std::string format_table(const AblationReport& report) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-32s %8s %9s %8s %9s %8s\n", "variant", "nodes",
                "triples", "MAP", "dMAP(%)", "flagged");
  out << line;
  for (const auto& row : report.rows) {
    const std::string delta =
        row.variant == AblationVariant::kAuthored ? "-"
        : row.delta                               ? fixed2(*row.delta)
                                                  : "n/a";
    std::snprintf(line, sizeof(line), "%-32s %8zu %9zu %8s %9s %8zu\n",
                  std::string(variant_name(row.variant)).c_str(), row.nodes, row.triples,
                  fixed2(row.map).c_str(), delta.c_str(), row.flagged_queries);
    out << line;
  }
  return out.str();
}

std::string format_tsv(const AblationReport& report) {
  std::ostringstream out;
  out << "variant\tnodes\ttriples\tmap\tdelta_map\tflagged\n";
  for (const auto& row : report.rows) {
    out << variant_name(row.variant) << '\t' << row.nodes << '\t' << row.triples << '\t'
        << fixed2(row.map) << '\t' << (row.delta ? fixed2(*row.delta) : std::string("-"))
        << '\t' << row.flagged_queries << '\n';
  }
  return out.str();
}

}  // namespace etext::eval
