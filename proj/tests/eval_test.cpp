#include "doctest.h"

#include <cmath>
#include <sstream>

#include "etext/eval.hpp"
#include "etext/pipeline.hpp"
#include "support/fixtures.hpp"

using namespace etext;
using namespace etext::eval;
using etext::testing::dsc;
using etext::testing::question;

namespace {

NodeRef q(const char* id) { return question(id); }

JudgmentSet parse(const std::string& text) {
  std::istringstream in(text);
  return parse_judgments(in);
}

std::size_t parse_error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.position();
  }
  return 0;
}

KnowledgeGraph fixture_graph() {
  gateway::BuildManifest m = gateway::BuildManifest::load(testing::fixture_path("manifest.json"));
  return gateway::build(m).graph;
}

}  // namespace

TEST_CASE("eval: average precision by hand") {
  std::vector<NodeRef> ranked{q("r1"), q("x"), q("r2")};
  const double ap = average_precision(ranked, {q("r1"), q("r2")});
  CHECK(std::abs(ap - (1.0 + 2.0 / 3.0) / 2.0) < 1e-15);
  CHECK(std::abs(ap - 0.8333333333333334) < 1e-12);
}

TEST_CASE("eval: perfect and empty rankings") {
  std::vector<NodeRef> ranked{q("a"), q("b"), q("c")};
  CHECK_EQ(average_precision(ranked, {q("a"), q("b"), q("c")}), 1.0);
  CHECK_EQ(average_precision(ranked, {q("z")}), 0.0);
  CHECK_EQ(average_precision(ranked, {}), 0.0);
  CHECK_EQ(average_precision(std::vector<NodeRef>{}, {q("a")}), 0.0);
}

TEST_CASE("eval: cutoff and normalizer") {
  std::vector<NodeRef> ranked;
  for (int i = 0; i < 12; ++i) ranked.push_back(q(("n" + std::to_string(i)).c_str()));
  std::set<NodeRef> relevant;
  for (int i = 0; i < 12; ++i) relevant.insert(ranked[i]);
  // Twelve relevant, all ranked: normalizer is min(12, 10).
  CHECK_EQ(average_precision(ranked, relevant), 1.0);
  // A hit below the cutoff does not count.
  CHECK_EQ(average_precision(ranked, {ranked[11]}), 0.0);
  CHECK_EQ(average_precision(ranked, {ranked[11]}, 12), 1.0 / 12.0);
  // Pool smaller than the cutoff: normalize by the pool.
  CHECK_EQ(average_precision(ranked, {ranked[0], q("absent")}), 0.5);
}

TEST_CASE("eval: non-relevant permutations between hits keep AP") {
  std::vector<NodeRef> a{q("r1"), q("x"), q("y"), q("r2"), q("z")};
  std::vector<NodeRef> b{q("r1"), q("y"), q("x"), q("r2"), q("z")};
  std::set<NodeRef> rel{q("r1"), q("r2")};
  CHECK_EQ(average_precision(a, rel), average_precision(b, rel));
}

TEST_CASE("eval: mean average precision") {
  CHECK_EQ(mean_average_precision(std::vector<double>{0.6787}), 67.87);
  CHECK_EQ(mean_average_precision(std::vector<double>{1.0, 0.0}), 50.0);
  CHECK_EQ(mean_average_precision(std::vector<double>{0.0, 0.0}), 0.0);
  CHECK_EQ(mean_average_precision(std::vector<double>{1.0 / 3.0}), 33.33);
  CHECK_THROWS_AS(mean_average_precision(std::vector<double>{}), EvalError);
}

TEST_CASE("eval: round2") {
  CHECK_EQ(round2(3.5714), 3.57);
  CHECK_EQ(round2(62.449), 62.45);
  CHECK_EQ(round2(0.125), 0.13);
  CHECK_EQ(round2(-0.125), -0.13);
}

TEST_CASE("eval: delta map") {
  CHECK(std::abs(delta_map(41.78, 43.27) - 3.57) <= 0.01);
  CHECK(std::abs(delta_map(41.78, 67.87) - 62.45) <= 0.01);
  CHECK(std::abs(delta_map(41.78, 68.62) - 64.24) <= 0.01);
  CHECK_EQ(delta_map(41.78, 43.27), 3.57);
  CHECK_EQ(delta_map(41.78, 67.87), 62.45);
  CHECK_EQ(delta_map(41.78, 68.62), 64.24);
  for (double x : {0.01, 1.0, 41.78, 100.0}) CHECK_EQ(delta_map(x, x), 0.0);
  CHECK_EQ(delta_map(50.0, 25.0), -50.0);
  CHECK_THROWS_AS(delta_map(0.0, 10.0), EvalError);
  CHECK_THROWS_AS(delta_map(-1.0, 10.0), EvalError);
}

TEST_CASE("eval: judgment parsing") {
  auto set = parse(
      "# comment\n\n"
      "j1\tdsc:a,dsc:b\tQuestionContainer\tq:x,q:y\r\n"
      "j2\tdsc:c\tBookContainer\tdsc:d\n"
      "j3\tdsc:c\tquestion\t\n");
  REQUIRE_EQ(set.size(), 3u);
  CHECK_EQ(set[0].query_id, "j1");
  CHECK_EQ(set[0].seeds, std::vector<NodeRef>{dsc("a"), dsc("b")});
  CHECK_EQ(set[0].target, ContainerKind::kQuestion);
  CHECK_EQ(set[0].relevant, std::set<NodeRef>{q("x"), q("y")});
  CHECK_EQ(set[1].target, ContainerKind::kBook);
  CHECK(set[2].relevant.empty());
}

TEST_CASE("eval: judgment errors carry line numbers") {
  CHECK_EQ(parse_error_line("j1\tdsc:a\tQuestionContainer\tq:x\nbroken line\n"), 2u);
  CHECK_EQ(parse_error_line("\n\nj1\tdsc:a\tNope\tq:x\n"), 3u);
  CHECK_EQ(parse_error_line("j1\tnot a ref\tQuestionContainer\tq:x\n"), 1u);
  CHECK_EQ(parse_error_line("j1\t\tQuestionContainer\tq:x\n"), 1u);
  // Relevant nodes must be of the target kind.
  CHECK_EQ(parse_error_line("j1\tdsc:a\tQuestionContainer\tdsc:b\n"), 1u);
  CHECK_EQ(parse_error_line("j1\tdsc:a\tQuestionContainer\tq:x\nj1\tdsc:a\tQuestionContainer\tq:y\n"),
           2u);
}

TEST_CASE("eval: variants filter by provenance") {
  CHECK(includes(AblationVariant::kAuthored, Provenance::kAuthored));
  CHECK_FALSE(includes(AblationVariant::kAuthored, Provenance::kInferred));
  CHECK_FALSE(includes(AblationVariant::kAuthored, Provenance::kLexical));
  CHECK(includes(AblationVariant::kAuthoredPlusLexical, Provenance::kLexical));
  CHECK_FALSE(includes(AblationVariant::kAuthoredPlusLexical, Provenance::kInferred));
  CHECK(includes(AblationVariant::kAuthoredPlusInferred, Provenance::kInferred));
  CHECK_FALSE(includes(AblationVariant::kAuthoredPlusInferred, Provenance::kLexical));
  for (auto p : {Provenance::kAuthored, Provenance::kInferred, Provenance::kLexical}) {
    CHECK(includes(AblationVariant::kAuthoredPlusInferredPlusLexical, p));
  }
  CHECK_EQ(variant_name(AblationVariant::kAuthoredPlusInferredPlusLexical),
           "AuthoredPlusInferredPlusLexical");
}

TEST_CASE("eval: fixture judgments follow the synthetic rule") {
  auto g = fixture_graph();
  auto set = read_judgments_file(testing::fixture_path("judgments.tsv").string());
  for (const auto& j : set) {
    std::set<NodeRef> expected;
    for (const auto& seed : j.seeds) {
      if (j.target == ContainerKind::kQuestion) {
        for (const auto& [key, prov] : g.triple_map()) {
          if (key.predicate == EdgeLabel::kIsQuestionOf && key.object == seed &&
              prov == Provenance::kAuthored) {
            expected.insert(key.subject);
          }
        }
      } else {
        for (const auto& n : g.neighbors(seed, EdgeLabel::kNextPage)) expected.insert(n);
        for (const auto& n : g.in_neighbors(seed, EdgeLabel::kNextPage)) expected.insert(n);
      }
    }
    CHECK_MESSAGE(j.relevant == expected, j.query_id);
  }
}

TEST_CASE("eval: ablation structure and frozen values") {
  auto g = fixture_graph();
  auto set = read_judgments_file(testing::fixture_path("judgments.tsv").string());
  auto report = run_ablation(g, set);
  REQUIRE_EQ(report.rows.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) CHECK_EQ(report.rows[i].variant, kAllVariants[i]);

  const auto& base = report.rows[0];
  for (const auto& row : report.rows) {
    CHECK(row.triples >= base.triples);
    CHECK(row.map >= 0.0);
    CHECK(row.map <= 100.0);
    CHECK_EQ(row.queries.size(), set.size());
    CHECK_EQ(row.flagged_queries, 0u);
  }
  CHECK(report.rows[3].triples >= report.rows[1].triples);
  CHECK(report.rows[3].triples >= report.rows[2].triples);
  CHECK_EQ(report.rows[3].triples, g.triple_count());
  REQUIRE(base.delta.has_value());
  CHECK_EQ(*base.delta, 0.0);

  // Frozen from a full pipeline run on the fixture corpus.
  CHECK_EQ(base.map, 10.42);
  CHECK_EQ(report.rows[1].map, 15.09);
  CHECK_EQ(report.rows[2].map, 96.53);
  CHECK_EQ(report.rows[3].map, 96.53);
  REQUIRE(report.rows[3].delta.has_value());
  CHECK_EQ(*report.rows[3].delta, delta_map(base.map, report.rows[3].map));

  auto again = run_ablation(g, set);
  CHECK_EQ(format_tsv(again), format_tsv(report));
  CHECK_EQ(format_table(again), format_table(report));
}

TEST_CASE("eval: ablation counts match provenance filtering") {
  auto g = fixture_graph();
  auto set = read_judgments_file(testing::fixture_path("judgments.tsv").string());
  auto report = run_ablation(g, set);
  CHECK_EQ(report.rows[0].triples, g.count(Provenance::kAuthored));
  CHECK_EQ(report.rows[1].triples, g.count(Provenance::kAuthored) + g.count(Provenance::kLexical));
  CHECK_EQ(report.rows[2].triples, g.count(Provenance::kAuthored) + g.count(Provenance::kInferred));
  CHECK_EQ(report.rows[1].nodes, variant_graph(g, AblationVariant::kAuthoredPlusLexical).node_count());
}

TEST_CASE("eval: absent seeds are flagged, not fatal") {
  auto g = fixture_graph();
  auto set = parse(
      "ghost\tdsc:nowhere\tQuestionContainer\tq:hex_symbols\n"
      "half\tdsc:nowhere,dsc:hexadecimal\tQuestionContainer\tq:hex_symbols\n");
  auto report = run_ablation(g, set);
  for (const auto& row : report.rows) {
    CHECK_EQ(row.flagged_queries, 1u);
    CHECK(row.queries[0].all_seeds_missing);
    CHECK_EQ(row.queries[0].average_precision, 0.0);
    CHECK_EQ(row.queries[1].missing_seeds, 1u);
    CHECK_FALSE(row.queries[1].all_seeds_missing);
  }
  CHECK(report.rows[3].queries[1].average_precision > 0.0);
}

TEST_CASE("eval: ablation requires every provenance class") {
  auto set = parse("j\tdsc:Turing_model\tBookContainer\tdsc:Data_processors\n");
  CHECK_THROWS_AS(run_ablation(testing::chapter_one_graph(), set), EvalError);
  CHECK_THROWS_AS(run_ablation(fixture_graph(), JudgmentSet{}), EvalError);
}

TEST_CASE("eval: report formats") {
  auto g = fixture_graph();
  auto report = run_ablation(g, read_judgments_file(testing::fixture_path("judgments.tsv").string()));
  const auto tsv = format_tsv(report);
  std::istringstream lines(tsv);
  std::string line;
  std::getline(lines, line);
  CHECK_EQ(line, "variant\tnodes\ttriples\tmap\tdelta_map\tflagged");
  std::getline(lines, line);
  CHECK_EQ(line, "Authored\t48\t71\t10.42\t0.00\t0");
  int rows = 1;
  while (std::getline(lines, line)) ++rows;
  CHECK_EQ(rows, 4);
  CHECK(format_table(report).find("AuthoredPlusInferredPlusLexical") != std::string::npos);
}
