#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "etext/content_bundle.hpp"
#include "etext/error.hpp"
#include "etext/eval.hpp"
#include "etext/knowledge_graph.hpp"
#include "etext/lexicon.hpp"
#include "etext/walk.hpp"

// End-to-end operations behind the CLI and the HTTP service.
namespace etext::gateway {

struct BuildManifest {
  std::vector<std::filesystem::path> corpus;
  bool inference = true;
  bool lexical = true;
  std::optional<std::filesystem::path> stopwords;
  std::filesystem::path snapshot = "snapshot.tsv";
  std::filesystem::path bundle = "content.tsv";

  // JSON object with keys corpus (array), inference, lexical, stopwords,
  // snapshot, bundle. Relative paths resolve against `base_dir`.
  static BuildManifest from_json_text(const std::string& text,
                                      const std::filesystem::path& base_dir = {});
  static BuildManifest load(const std::filesystem::path& path);
};

struct BuildOutput {
  KnowledgeGraph graph;
  ContentBundle bundle;
};

// ingest -> saturate (if inference) -> link_terms (if lexical). With both
// stages on, word linkages get their hasDicTerm inverses so the saturated
// graph stays closed under inverses. Reads files, writes nothing.
BuildOutput build(const BuildManifest& manifest);

// Node and per-provenance triple counts, one "key: value" per line.
std::string build_summary(const KnowledgeGraph& graph);

// build() then writes the snapshot and content bundle; prints the summary.
void cmd_build(const BuildManifest& manifest, std::ostream& out);

// Loaded snapshot, content bundle and the chain derived from them.
struct Artifacts {
  KnowledgeGraph graph;
  ContentBundle bundle;
  walk::WalkChain chain;

  static Artifacts from_graph(KnowledgeGraph graph, ContentBundle bundle = {});
  static Artifacts load(const std::filesystem::path& snapshot,
                        const std::optional<std::filesystem::path>& bundle);
};

class QueryError : public Error {
 public:
  using Error::Error;
};

struct QueryRequest {
  std::vector<std::string> seeds;
  ContainerKind target = ContainerKind::kQuestion;
  std::size_t k = 10;
  walk::WalkParams params;
};

struct QueryResponse {
  walk::RankedResult result;
  // Seeds that did not parse or are not in the graph, in request order.
  std::vector<std::string> unknown_seeds;
};

// Throws QueryError when no seed is given, every seed is unknown, k == 0 or
// the walk parameters are out of range.
QueryResponse run_query(const Artifacts& artifacts, const QueryRequest& request);

// Fixed 9-decimal rendering shared by the CLI and the HTTP API.
std::string format_score(double score);

// First `max_chars` code points of a node's markup-free value; empty when the
// bundle has no record.
std::string value_preview(const ContentBundle& bundle, const NodeRef& node,
                          std::size_t max_chars = 80);

// "rank\tnode\tscore\tpreview" per entry.
std::string format_listing(const QueryResponse& response, const ContentBundle& bundle);

eval::AblationReport cmd_eval(const KnowledgeGraph& graph, const eval::JudgmentSet& judgments,
                              const walk::WalkParams& params = {},
                              std::size_t cutoff = eval::kDefaultCutoff);

}  // namespace etext::gateway
