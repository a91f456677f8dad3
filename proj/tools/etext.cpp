// etext: build, query, serve and evaluate e-textbook knowledge graphs.

#include <atomic>
#include <chrono>
#include <csignal>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "etext/eval.hpp"
#include "etext/pipeline.hpp"
#include "etext/service.hpp"
#include "etext/snapshot.hpp"

namespace {

using namespace etext;

std::atomic<bool> g_interrupted{false};

void on_signal(int) { g_interrupted.store(true); }

struct WalkFlags {
  double gamma = 0.5;
  int d_max = 10;

  void attach(CLI::App* cmd) {
    cmd->add_option("--gamma", gamma, "Stopping probability per step")->capture_default_str();
    cmd->add_option("--d-max,--dmax", d_max, "Maximum walk length")->capture_default_str();
  }
  walk::WalkParams params() const { return {gamma, d_max}; }
};

int run_build(const gateway::BuildManifest& manifest) {
  gateway::cmd_build(manifest, std::cout);
  return 0;
}

int run_query(const std::string& snapshot, const std::string& bundle,
              const gateway::QueryRequest& request) {
  const auto artifacts = gateway::Artifacts::load(
      snapshot, bundle.empty() ? std::nullopt : std::optional<std::filesystem::path>(bundle));
  const auto response = gateway::run_query(artifacts, request);
  for (const auto& seed : response.unknown_seeds) {
    std::cerr << "warning: unknown seed id '" << seed << "' ignored\n";
  }
  std::cout << gateway::format_listing(response, artifacts.bundle);
  return 0;
}

int run_serve(const std::string& snapshot, const std::string& bundle, const std::string& host,
              int port, const std::string& static_dir) {
  const gateway::Service service(gateway::Artifacts::load(
      snapshot, bundle.empty() ? std::nullopt : std::optional<std::filesystem::path>(bundle)));
  gateway::HttpServer server(
      service, static_dir.empty() ? std::nullopt
                                  : std::optional<std::filesystem::path>(static_dir));
  const int bound = server.bind(host, port);
  std::cerr << "serving on http://" << host << ":" << bound << "/\n";

  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::thread watcher([&server] {
    while (!g_interrupted.load()) std::this_thread::sleep_for(std::chrono::milliseconds(100));
    server.stop();
  });
  server.listen();
  g_interrupted.store(true);
  watcher.join();
  std::cerr << "shut down\n";
  return 0;
}

int run_eval(const std::string& snapshot, const std::string& judgments,
             const walk::WalkParams& params, std::size_t cutoff, const std::string& tsv_path) {
  const auto graph = read_snapshot_file(snapshot);
  const auto set = eval::read_judgments_file(judgments);
  const auto report = gateway::cmd_eval(graph, set, params, cutoff);
  std::cout << eval::format_table(report);
  for (const auto& row : report.rows) {
    for (const auto& q : row.queries) {
      if (q.all_seeds_missing) {
        std::cerr << "warning: " << eval::variant_name(row.variant) << ": query '"
                  << q.query_id << "' has no seed in this graph (AP = 0)\n";
      }
    }
  }
  if (!tsv_path.empty()) {
    std::ofstream out(tsv_path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tsv_path);
    out << eval::format_tsv(report);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"e-textbook knowledge graph toolkit"};
  app.require_subcommand(1);

  // build
  auto* build = app.add_subcommand("build", "Compile annotated HTML into a snapshot");
  std::string manifest_path;
  std::vector<std::string> corpus;
  std::string out_path = "snapshot.tsv";
  std::string bundle_out = "content.tsv";
  std::string stopwords;
  bool no_inference = false;
  bool no_lexical = false;
  build->add_option("--manifest", manifest_path, "JSON build manifest");
  build->add_option("files", corpus, "Corpus HTML files, one chapter per file");
  auto* out_opt =
      build->add_option("-o,--out", out_path, "Snapshot output path")->capture_default_str();
  auto* bundle_opt = build->add_option("--bundle", bundle_out, "Content bundle output path")
                         ->capture_default_str();
  build->add_option("--stopwords", stopwords, "Stopword list (one word per line)");
  build->add_flag("--no-inference", no_inference, "Skip reasoner saturation");
  build->add_flag("--no-lexical", no_lexical, "Skip word linkage");

  // query
  auto* query = app.add_subcommand("query", "Rank nodes of one kind against seed nodes");
  std::string snapshot;
  std::string bundle;
  std::vector<std::string> seeds;
  std::string target = "QuestionContainer";
  std::size_t k = 10;
  WalkFlags query_walk;
  query->add_option("--snapshot", snapshot, "Triple snapshot")->required();
  query->add_option("--bundle", bundle, "Content bundle for value previews");
  query->add_option("--target", target, "Container kind to return")->capture_default_str();
  query->add_option("-k,--k", k, "Number of results")->capture_default_str();
  query_walk.attach(query);
  query->add_option("seeds", seeds, "Seed node ids")->required();

  // serve
  auto* serve = app.add_subcommand("serve", "Serve the JSON API and reader UI");
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string static_dir;
  serve->add_option("--snapshot", snapshot, "Triple snapshot")->required();
  serve->add_option("--bundle", bundle, "Content bundle")->required();
  serve->add_option("--host", host, "Listen address")->capture_default_str();
  serve->add_option("--port", port, "Listen port (0 = any free port)")->capture_default_str();
  serve->add_option("--static", static_dir, "Reader UI asset directory");

  // eval
  auto* evaluate = app.add_subcommand("eval", "Run the four-variant MAP ablation");
  std::string judgments;
  std::size_t cutoff = eval::kDefaultCutoff;
  std::string tsv_path;
  WalkFlags eval_walk;
  evaluate->add_option("--snapshot", snapshot, "Snapshot built with all stages on")->required();
  evaluate->add_option("--judgments", judgments, "Judgment file")->required();
  evaluate->add_option("--cutoff", cutoff, "Rank cutoff for AP")->capture_default_str();
  evaluate->add_option("--tsv", tsv_path, "Also write the machine-readable report here");
  eval_walk.attach(evaluate);

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) {
      gateway::BuildManifest manifest;
      if (!manifest_path.empty()) {
        manifest = gateway::BuildManifest::load(manifest_path);
      }
      // Explicit flags win over the manifest.
      if (manifest_path.empty() || out_opt->count() > 0) manifest.snapshot = out_path;
      if (manifest_path.empty() || bundle_opt->count() > 0) manifest.bundle = bundle_out;
      for (const auto& f : corpus) manifest.corpus.emplace_back(f);
      if (manifest.corpus.empty()) throw Error("no corpus files given");
      if (no_inference) manifest.inference = false;
      if (no_lexical) manifest.lexical = false;
      if (!stopwords.empty()) manifest.stopwords = stopwords;
      return run_build(manifest);
    }
    if (query->parsed()) {
      auto kind = container_from_name(target);
      if (!kind) throw Error("unknown target kind '" + target + "'");
      gateway::QueryRequest request{seeds, *kind, k, query_walk.params()};
      return run_query(snapshot, bundle, request);
    }
    if (serve->parsed()) return run_serve(snapshot, bundle, host, port, static_dir);
    if (evaluate->parsed()) {
      return run_eval(snapshot, judgments, eval_walk.params(), cutoff, tsv_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
