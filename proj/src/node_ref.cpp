#include "etext/node_ref.hpp"

#include <array>
#include <utility>

#include "etext/error.hpp"

namespace etext {

namespace {

constexpr std::array<std::pair<Namespace, std::string_view>, 6> kPrefixes = {{
    {Namespace::kTopic, "topic"},
    {Namespace::kDescription, "dsc"},
    {Namespace::kQuestion, "q"},
    {Namespace::kName, "name"},
    {Namespace::kConcept, "concept"},
    {Namespace::kTerm, "term"},
}};

constexpr std::array<std::pair<ContainerKind, std::string_view>, 5> kContainers = {{
    {ContainerKind::kBook, "BookContainer"},
    {ContainerKind::kQuestion, "QuestionContainer"},
    {ContainerKind::kName, "NameContainer"},
    {ContainerKind::kConcept, "ConceptContainer"},
    {ContainerKind::kTerm, "TermContainer"},
}};

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

// Returns the offset of the first invalid character in a local id, or npos.
std::size_t invalid_local_char(std::string_view local) {
  for (std::size_t i = 0; i < local.size(); ++i) {
    if (is_space(local[i]) || local[i] == ':') return i;
  }
  return std::string_view::npos;
}

}  // namespace

std::string_view namespace_prefix(Namespace ns) {
  for (const auto& [value, prefix] : kPrefixes) {
    if (value == ns) return prefix;
  }
  return "?";
}

std::optional<Namespace> namespace_from_prefix(std::string_view prefix) {
  for (const auto& [value, name] : kPrefixes) {
    if (name == prefix) return value;
  }
  return std::nullopt;
}

ContainerKind kind_of(Namespace ns) {
  switch (ns) {
    case Namespace::kTopic:
    case Namespace::kDescription:
      return ContainerKind::kBook;
    case Namespace::kQuestion:
      return ContainerKind::kQuestion;
    case Namespace::kName:
      return ContainerKind::kName;
    case Namespace::kConcept:
      return ContainerKind::kConcept;
    case Namespace::kTerm:
      return ContainerKind::kTerm;
  }
  return ContainerKind::kBook;
}

std::string_view container_name(ContainerKind kind) {
  for (const auto& [value, name] : kContainers) {
    if (value == kind) return name;
  }
  return "?";
}

std::optional<ContainerKind> container_from_name(std::string_view name) {
  for (const auto& [value, full] : kContainers) {
    if (full == name) return value;
  }
  if (name == "book") return ContainerKind::kBook;
  if (name == "question") return ContainerKind::kQuestion;
  if (name == "name") return ContainerKind::kName;
  if (name == "concept") return ContainerKind::kConcept;
  if (name == "term") return ContainerKind::kTerm;
  return std::nullopt;
}

NodeRef::NodeRef(Namespace ns, std::string_view local_id) : ns_(ns) {
  if (local_id.empty()) {
    throw ParseError("empty local id in namespace '" +
                         std::string(namespace_prefix(ns)) + "'",
                     0);
  }
  if (auto bad = invalid_local_char(local_id); bad != std::string_view::npos) {
    throw ParseError("invalid character in local id '" + std::string(local_id) +
                         "' at offset " + std::to_string(bad),
                     bad);
  }
  text_.reserve(namespace_prefix(ns).size() + 1 + local_id.size());
  text_.append(namespace_prefix(ns));
  text_.push_back(':');
  text_.append(local_id);
}

NodeRef NodeRef::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ParseError("node ref '" + std::string(text) + "' has no namespace",
                     text.size());
  }
  const auto prefix = text.substr(0, colon);
  const auto ns = namespace_from_prefix(prefix);
  if (!ns) {
    throw ParseError("unknown namespace '" + std::string(prefix) + "' in '" +
                         std::string(text) + "'",
                     0);
  }
  const auto local = text.substr(colon + 1);
  if (local.empty()) {
    throw ParseError("empty local id in '" + std::string(text) + "'", colon + 1);
  }
  if (auto bad = invalid_local_char(local); bad != std::string_view::npos) {
    const auto pos = colon + 1 + bad;
    throw ParseError("invalid character at offset " + std::to_string(pos) +
                         " in node ref '" + std::string(text) + "'",
                     pos);
  }
  return NodeRef(*ns, local);
}

std::optional<NodeRef> NodeRef::try_parse(std::string_view text) {
  try {
    return parse(text);
  } catch (const ParseError&) {
    return std::nullopt;
  }
}

std::ostream& operator<<(std::ostream& os, const NodeRef& node) {
  return os << node.str();
}

}  // namespace etext
