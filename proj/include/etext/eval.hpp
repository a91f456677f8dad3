#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "etext/error.hpp"
#include "etext/knowledge_graph.hpp"
#include "etext/walk.hpp"

// Ranked-retrieval evaluation (MAP@10) and the four-way graph ablation.
namespace etext::eval {

inline constexpr std::size_t kDefaultCutoff = 10;

class EvalError : public Error {
 public:
  using Error::Error;
};

// Sum of precision@i over relevant hits in the top `cutoff`, divided by
// min(|relevant|, cutoff). Zero when `relevant` is empty.
double average_precision(std::span<const NodeRef> ranked, const std::set<NodeRef>& relevant,
                         std::size_t cutoff = kDefaultCutoff);
double average_precision(const walk::RankedResult& result, const std::set<NodeRef>& relevant,
                         std::size_t cutoff = kDefaultCutoff);

// Rounds half away from zero to two decimals.
double round2(double value);

// Mean AP as a percentage, rounded to two decimals. Throws EvalError when
// empty.
double mean_average_precision(std::span<const double> average_precisions);
double mean_average_precision(
    const std::vector<std::pair<walk::RankedResult, std::set<NodeRef>>>& results,
    std::size_t cutoff = kDefaultCutoff);

// Relative change in percent, rounded to two decimals. Throws EvalError
// unless base > 0.
double delta_map(double base, double variant);

struct Judgment {
  std::string query_id;
  std::vector<NodeRef> seeds;
  ContainerKind target = ContainerKind::kQuestion;
  std::set<NodeRef> relevant;
};

using JudgmentSet = std::vector<Judgment>;

// "query_id\tseed1,seed2\ttarget_kind\trel1,rel2" per line; '#' comments and
// blank lines skipped. Throws ParseError with the 1-based line number.
JudgmentSet parse_judgments(std::istream& in);
JudgmentSet read_judgments_file(const std::string& path);

enum class AblationVariant {
  kAuthored,
  kAuthoredPlusLexical,
  kAuthoredPlusInferred,
  kAuthoredPlusInferredPlusLexical,
};

inline constexpr std::array<AblationVariant, 4> kAllVariants = {
    AblationVariant::kAuthored, AblationVariant::kAuthoredPlusLexical,
    AblationVariant::kAuthoredPlusInferred,
    AblationVariant::kAuthoredPlusInferredPlusLexical};

std::string_view variant_name(AblationVariant v);
bool includes(AblationVariant v, Provenance p);
KnowledgeGraph variant_graph(const KnowledgeGraph& full, AblationVariant v);

struct QueryOutcome {
  std::string query_id;
  double average_precision = 0.0;
  std::size_t missing_seeds = 0;
  bool all_seeds_missing = false;
  walk::RankedResult result;
};

struct VariantReport {
  AblationVariant variant = AblationVariant::kAuthored;
  std::size_t nodes = 0;
  std::size_t triples = 0;
  double map = 0.0;
  // Relative to the Authored row; absent when the baseline MAP is 0.
  std::optional<double> delta;
  std::size_t flagged_queries = 0;  // every seed absent from the variant
  std::vector<QueryOutcome> queries;
};

struct AblationReport {
  std::vector<VariantReport> rows;  // kAllVariants order
};

// Throws EvalError unless the corpus holds Authored, Inferred and Lexical
// triples and the judgment set is non-empty.
AblationReport run_ablation(const KnowledgeGraph& corpus, const JudgmentSet& judgments,
                            const walk::WalkParams& params = {},
                            std::size_t cutoff = kDefaultCutoff);

std::string format_table(const AblationReport& report);
// Header line, then "variant\tnodes\ttriples\tmap\tdelta_map\tflagged" rows.
std::string format_tsv(const AblationReport& report);

}  // namespace etext::eval
