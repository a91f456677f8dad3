#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace etext::html {

struct Attribute {
  std::string name;   // lowercase
  std::string value;  // entity-decoded
};

// Node of a parsed HTML tree. Offsets index the source buffer: [begin, end)
// spans the whole element, [inner_begin, inner_end) its content. Elements
// closed implicitly end where the closing construct begins.
struct Node {
  enum class Type { kDocument, kElement, kText, kComment };

  Type type = Type::kDocument;
  std::string tag;  // lowercase; empty for non-elements
  std::vector<Attribute> attributes;
  std::string text;  // decoded character data for kText
  std::size_t begin = 0;
  std::size_t inner_begin = 0;
  std::size_t inner_end = 0;
  std::size_t end = 0;
  Node* parent = nullptr;
  std::vector<std::unique_ptr<Node>> children;

  const std::string* attr(std::string_view name) const;
  bool is_element(std::string_view name) const {
    return type == Type::kElement && tag == name;
  }
  // Concatenated descendant text, without whitespace normalization.
  std::string text_content() const;
};

// Tolerant parse: unclosed elements are closed by the usual implied-end-tag
// rules (p, li, dt/dd, headings, table cells, option), stray end tags are
// dropped, and everything still open at end of input is closed there.
std::unique_ptr<Node> parse(std::string_view source);

// Decodes named and numeric character references. Unknown references are
// left verbatim.
std::string decode_entities(std::string_view text);

// Markup-free text of an HTML fragment with whitespace runs collapsed to a
// single space and trimmed.
std::string strip_tags(std::string_view fragment);

std::string collapse_whitespace(std::string_view text);

}  // namespace etext::html
