#include "etext/edge_label.hpp"

namespace etext {

namespace {

constexpr std::array<std::string_view, 14> kLabelNames = {
    "subClassOf",      "superClassOf", "typeOf",      "hasInstance", "nextPage",
    "prevPage",        "isQuestionOf", "hasQuestion", "fromDescription",
    "hasName",         "isRelatedTo",  "relatedFrom", "dicTermFor",  "hasDicTerm",
};

}  // namespace

std::string_view label_name(EdgeLabel label) {
  return kLabelNames[static_cast<std::size_t>(label)];
}

std::optional<EdgeLabel> parse_edge_label(std::string_view text) {
  if (text == "rdf:type") return EdgeLabel::kTypeOf;
  if (text == "rdfs:subClassOf") return EdgeLabel::kSubClassOf;
  if (!text.empty() && text.front() == ':') text.remove_prefix(1);
  for (std::size_t i = 0; i < kLabelNames.size(); ++i) {
    if (kLabelNames[i] == text) return kAllEdgeLabels[i];
  }
  return std::nullopt;
}

std::string_view provenance_name(Provenance p) {
  switch (p) {
    case Provenance::kAuthored:
      return "Authored";
    case Provenance::kInferred:
      return "Inferred";
    case Provenance::kLexical:
      return "Lexical";
  }
  return "?";
}

std::optional<Provenance> parse_provenance(std::string_view text) {
  if (text == "Authored") return Provenance::kAuthored;
  if (text == "Inferred") return Provenance::kInferred;
  if (text == "Lexical") return Provenance::kLexical;
  return std::nullopt;
}

}  // namespace etext
