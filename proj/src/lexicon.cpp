#include "etext/lexicon.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "etext/error.hpp"
#include "etext/stopwords_data.hpp"

namespace etext::lexicon {

namespace {

bool is_word_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
}

}  // namespace

const StopwordList& StopwordList::builtin() {
  static const StopwordList list = parse(detail::kDefaultStopwords);
  return list;
}

StopwordList StopwordList::parse(std::string_view text) {
  std::set<std::string> words;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::string word;
    for (char c : line) {
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      word.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    if (word.empty() || word.front() == '#') continue;
    words.insert(std::move(word));
  }
  return StopwordList(std::move(words));
}

StopwordList StopwordList::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open stopword list: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

std::vector<std::string> tokenize(std::string_view text, const StopwordList& stopwords) {
  std::vector<std::string> tokens;
  std::set<std::string> seen;
  auto emit = [&](std::string& word) {
    while (!word.empty() && word.back() == '-') word.pop_back();
    if (word.size() >= kMinTokenLength && !stopwords.contains(word) &&
        seen.insert(word).second) {
      tokens.push_back(word);
    }
    word.clear();
  };
  std::string word;
  for (char raw : text) {
    const char c = (raw >= 'A' && raw <= 'Z') ? static_cast<char>(raw - 'A' + 'a') : raw;
    if (is_word_char(c)) {
      word.push_back(c);
    } else if (c == '-' && !word.empty()) {
      word.push_back(c);
    } else {
      emit(word);
    }
  }
  emit(word);
  return tokens;
}

LinkStats link_terms(KnowledgeGraph& g, const std::map<NodeRef, std::string>& texts,
                     const StopwordList& stopwords, bool with_inverses) {
  LinkStats stats;
  for (const auto& [description, text] : texts) {
    if (description.ns() != Namespace::kDescription) continue;
    for (const auto& token : tokenize(text, stopwords)) {
      const NodeRef term(Namespace::kTerm, token);
      if (!g.has_node(term)) ++stats.terms_created;
      if (g.add_triple(term, EdgeLabel::kDicTermFor, description, Provenance::kLexical)) {
        ++stats.triples_added;
      }
      if (with_inverses &&
          g.add_triple(description, EdgeLabel::kHasDicTerm, term, Provenance::kLexical)) {
        ++stats.triples_added;
      }
    }
  }
  return stats;
}

}  // namespace etext::lexicon
