#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace etext {

enum class Namespace { kTopic, kDescription, kQuestion, kName, kConcept, kTerm };

// Node-type tag used to filter typed query output.
enum class ContainerKind { kBook, kQuestion, kName, kConcept, kTerm };

std::string_view namespace_prefix(Namespace ns);
std::optional<Namespace> namespace_from_prefix(std::string_view prefix);

ContainerKind kind_of(Namespace ns);
std::string_view container_name(ContainerKind kind);
// Accepts "QuestionContainer" as well as the short form "question".
std::optional<ContainerKind> container_from_name(std::string_view name);

// Namespaced node identifier, canonical form "<namespace>:<local_id>".
// Ordering and equality follow the canonical string.
class NodeRef {
 public:
  // Throws ParseError if local_id is empty or contains whitespace or ':'.
  NodeRef(Namespace ns, std::string_view local_id);

  // Throws ParseError carrying the offset of the offending character.
  static NodeRef parse(std::string_view text);
  static std::optional<NodeRef> try_parse(std::string_view text);

  Namespace ns() const { return ns_; }
  std::string_view local_id() const {
    return std::string_view(text_).substr(namespace_prefix(ns_).size() + 1);
  }
  const std::string& str() const { return text_; }
  ContainerKind kind() const { return kind_of(ns_); }

  friend bool operator==(const NodeRef& a, const NodeRef& b) {
    return a.text_ == b.text_;
  }
  friend std::strong_ordering operator<=>(const NodeRef& a, const NodeRef& b) {
    return a.text_.compare(b.text_) <=> 0;
  }

 private:
  Namespace ns_;
  std::string text_;
};

inline ContainerKind kind_of(const NodeRef& node) { return node.kind(); }

std::ostream& operator<<(std::ostream& os, const NodeRef& node);

}  // namespace etext

template <>
struct std::hash<etext::NodeRef> {
  std::size_t operator()(const etext::NodeRef& n) const noexcept {
    return std::hash<std::string>{}(n.str());
  }
};
