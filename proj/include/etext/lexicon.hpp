#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "etext/knowledge_graph.hpp"

// Automatic term extraction and word linkage (term -dicTermFor-> description).
namespace etext::lexicon {

inline constexpr std::size_t kMinTokenLength = 3;

class StopwordList {
 public:
  StopwordList() = default;
  explicit StopwordList(std::set<std::string> words) : words_(std::move(words)) {}

  // The built-in list shipped as data/stopwords.txt.
  static const StopwordList& builtin();
  // One word per line; blank lines and '#' comments skipped; case-folded.
  static StopwordList parse(std::string_view text);
  static StopwordList load(const std::filesystem::path& path);

  bool contains(std::string_view word) const { return words_.contains(std::string(word)); }
  std::size_t size() const { return words_.size(); }

 private:
  std::set<std::string> words_;
};

// Lowercased [a-z0-9][a-z0-9-]* tokens (hyphens kept only word-internally),
// minus stopwords and tokens shorter than kMinTokenLength, deduplicated in
// first-occurrence order. No stemming.
std::vector<std::string> tokenize(std::string_view text,
                                  const StopwordList& stopwords = StopwordList::builtin());

struct LinkStats {
  std::size_t triples_added = 0;
  std::size_t terms_created = 0;
};

// Adds (term:t, dicTermFor, d) for every token t of every description d in
// `texts` (non-description keys are skipped). With `with_inverses`, the
// (d, hasDicTerm, term:t) inverse is added too. New triples are Lexical.
LinkStats link_terms(KnowledgeGraph& g, const std::map<NodeRef, std::string>& texts,
                     const StopwordList& stopwords = StopwordList::builtin(),
                     bool with_inverses = false);

}  // namespace etext::lexicon
