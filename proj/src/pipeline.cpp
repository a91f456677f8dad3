#include "etext/pipeline.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "etext/html.hpp"
#include "etext/ingest.hpp"
#include "etext/reasoner.hpp"
#include "etext/snapshot.hpp"
#include "json.hpp"

namespace etext::gateway {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::filesystem::path resolve(const std::filesystem::path& base,
                              const std::filesystem::path& p) {
  return p.is_absolute() || base.empty() ? p : base / p;
}

}  // namespace

BuildManifest BuildManifest::from_json_text(const std::string& text,
                                            const std::filesystem::path& base_dir) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error("manifest must be a JSON object");
  BuildManifest m;
  try {
    for (const auto& item : doc.at("corpus")) {
      m.corpus.push_back(resolve(base_dir, item.get<std::string>()));
    }
    m.inference = doc.value("inference", true);
    m.lexical = doc.value("lexical", true);
    if (doc.contains("stopwords")) {
      m.stopwords = resolve(base_dir, doc.at("stopwords").get<std::string>());
    }
    m.snapshot = resolve(base_dir, doc.value("snapshot", m.snapshot.string()));
    m.bundle = resolve(base_dir, doc.value("bundle", m.bundle.string()));
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid manifest: ") + e.what());
  }
  return m;
}

BuildManifest BuildManifest::load(const std::filesystem::path& path) {
  return from_json_text(read_file(path), path.parent_path());
}

BuildOutput build(const BuildManifest& manifest) {
  std::vector<ingest::SourceFile> files;
  files.reserve(manifest.corpus.size());
  for (const auto& path : manifest.corpus) {
    files.push_back({path.string(), read_file(path)});
  }
  auto corpus = ingest::compile(files);
  BuildOutput out{std::move(corpus.graph),
                  ContentBundle::from_documents(corpus.documents)};

  if (manifest.inference) reasoner::saturate(out.graph);
  if (manifest.lexical) {
    const auto stopwords = manifest.stopwords
                               ? lexicon::StopwordList::load(*manifest.stopwords)
                               : lexicon::StopwordList::builtin();
    std::map<NodeRef, std::string> texts;
    for (const auto& doc : corpus.documents) {
      for (const auto& block : doc.blocks) {
        if (!block.is_question()) texts.emplace(block.block_id, html::strip_tags(block.html_value));
      }
    }
    lexicon::link_terms(out.graph, texts, stopwords, manifest.inference);
  }
  return out;
}

std::string build_summary(const KnowledgeGraph& graph) {
  std::ostringstream out;
  out << "nodes: " << graph.node_count() << '\n'
      << "triples: " << graph.triple_count() << '\n';
  for (auto p : {Provenance::kAuthored, Provenance::kInferred, Provenance::kLexical}) {
    out << provenance_name(p) << ": " << graph.count(p) << '\n';
  }
  return out.str();
}

void cmd_build(const BuildManifest& manifest, std::ostream& out) {
  const auto result = build(manifest);
  for (const auto& p : {manifest.snapshot, manifest.bundle}) {
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  }
  write_snapshot_file(result.graph, manifest.snapshot);
  result.bundle.write_file(manifest.bundle);
  out << build_summary(result.graph);
}

Artifacts Artifacts::from_graph(KnowledgeGraph graph, ContentBundle bundle) {
  Artifacts a{std::move(graph), std::move(bundle), {}};
  a.chain = walk::WalkChain(a.graph);
  return a;
}

Artifacts Artifacts::load(const std::filesystem::path& snapshot,
                          const std::optional<std::filesystem::path>& bundle) {
  return from_graph(read_snapshot_file(snapshot),
                    bundle ? ContentBundle::read_file(*bundle) : ContentBundle{});
}

QueryResponse run_query(const Artifacts& artifacts, const QueryRequest& request) {
  if (request.seeds.empty()) throw QueryError("no seed ids given");
  if (request.k == 0) throw QueryError("k must be >= 1");
  try {
    request.params.validate();
  } catch (const walk::WalkError& e) {
    throw QueryError(e.what());
  }
  QueryResponse response;
  std::vector<NodeRef> known;
  for (const auto& text : request.seeds) {
    auto ref = NodeRef::try_parse(text);
    if (ref && artifacts.chain.index_of(*ref)) {
      known.push_back(*ref);
    } else {
      response.unknown_seeds.push_back(text);
    }
  }
  if (known.empty()) throw QueryError("none of the seed ids is in the graph");
  const auto seed = walk::seed_from_nodes(known);
  response.result =
      walk::typed_query(artifacts.chain, seed, request.target, request.k, request.params);
  return response;
}

std::string format_score(double score) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9f", score);
  return buf;
}

std::string value_preview(const ContentBundle& bundle, const NodeRef& node,
                          std::size_t max_chars) {
  const auto* record = bundle.find(node);
  if (record == nullptr) return {};
  const std::string text = html::strip_tags(record->value);
  std::size_t chars = 0;
  std::size_t i = 0;
  while (i < text.size() && chars < max_chars) {
    const auto lead = static_cast<unsigned char>(text[i]);
    std::size_t len = lead < 0x80 ? 1 : lead >= 0xF0 ? 4 : lead >= 0xE0 ? 3 : lead >= 0xC0 ? 2 : 1;
    i = std::min(text.size(), i + len);
    ++chars;
  }
  return text.substr(0, i);
}

std::string format_listing(const QueryResponse& response, const ContentBundle& bundle) {
  std::string out;
  std::size_t rank = 0;
  for (const auto& entry : response.result.entries) {
    out += std::to_string(++rank) + '\t' + entry.node.str() + '\t' +
           format_score(entry.score) + '\t' + value_preview(bundle, entry.node) + '\n';
  }
  return out;
}

eval::AblationReport cmd_eval(const KnowledgeGraph& graph, const eval::JudgmentSet& judgments,
                              const walk::WalkParams& params, std::size_t cutoff) {
  return eval::run_ablation(graph, judgments, params, cutoff);
}

}  // namespace etext::gateway
