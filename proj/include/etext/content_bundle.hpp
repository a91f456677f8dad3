#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "etext/ingest.hpp"
#include "etext/node_ref.hpp"

namespace etext::gateway {

// Display value of a node: the HTML fragment of a description or question,
// the heading text of a topic, the span text of a name.
struct ContentRecord {
  NodeRef node;
  std::string anchor;  // "<file>#<element id>"
  std::string value;
};

// Node values in book order. File format: one "node\tanchor\tvalue" record
// per line with anchor and value percent-encoded; '#' lines are comments.
class ContentBundle {
 public:
  // Keeps the first record for a node; later duplicates are ignored.
  void add(ContentRecord record);
  const ContentRecord* find(const NodeRef& node) const;
  const std::vector<ContentRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  // Book-order position of a node, or size() when absent.
  std::size_t position(const NodeRef& node) const;

  static ContentBundle from_documents(const std::vector<ingest::CorpusDocument>& docs);

  void write(std::ostream& out) const;
  std::string to_string() const;
  void write_file(const std::filesystem::path& path) const;
  static ContentBundle read(std::istream& in);
  static ContentBundle read_file(const std::filesystem::path& path);

 private:
  std::vector<ContentRecord> records_;
  std::map<NodeRef, std::size_t> index_;
};

// Escapes '%', control bytes (tab and newlines included) and DEL as %XX.
std::string percent_encode(std::string_view text);
// Throws ParseError on a malformed escape.
std::string percent_decode(std::string_view text);

}  // namespace etext::gateway
