#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace etext {

enum class EdgeLabel {
  kSubClassOf,
  kSuperClassOf,
  kTypeOf,
  kHasInstance,
  kNextPage,
  kPrevPage,
  kIsQuestionOf,
  kHasQuestion,
  kFromDescription,
  kHasName,
  kIsRelatedTo,
  kRelatedFrom,
  kDicTermFor,
  kHasDicTerm,
};

inline constexpr std::array<EdgeLabel, 14> kAllEdgeLabels = {
    EdgeLabel::kSubClassOf,      EdgeLabel::kSuperClassOf, EdgeLabel::kTypeOf,
    EdgeLabel::kHasInstance,     EdgeLabel::kNextPage,     EdgeLabel::kPrevPage,
    EdgeLabel::kIsQuestionOf,    EdgeLabel::kHasQuestion,  EdgeLabel::kFromDescription,
    EdgeLabel::kHasName,         EdgeLabel::kIsRelatedTo,  EdgeLabel::kRelatedFrom,
    EdgeLabel::kDicTermFor,      EdgeLabel::kHasDicTerm,
};

// Involution pairing every label with its inverse property.
constexpr EdgeLabel inverse(EdgeLabel label) {
  const auto v = static_cast<int>(label);
  return static_cast<EdgeLabel>(v % 2 == 0 ? v + 1 : v - 1);
}

std::string_view label_name(EdgeLabel label);

// Accepts the bare names ("typeOf") and the RDF spellings used in ontology
// listings ("rdf:type", "rdfs:subClassOf", ":nextPage").
std::optional<EdgeLabel> parse_edge_label(std::string_view text);

enum class Provenance { kAuthored, kInferred, kLexical };

std::string_view provenance_name(Provenance p);
std::optional<Provenance> parse_provenance(std::string_view text);

}  // namespace etext
