#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "etext/error.hpp"
#include "etext/knowledge_graph.hpp"

// Compiles annotated HTML teaching material into authored triples.
//
// Annotation vocabulary:
//   <h1>..<h6>                  topic headings; local id is the slugged text
//                               unless data-topic-id overrides it
//   id="o:descp:<id>"           description block   -> dsc:<id>
//   id="o:q:<id>"               question block      -> q:<id>
//   data-question-of="a,b"      on a question: targeted descriptions
//   data-topics="x,y"           extra topics for a block
//   data-name-id="<id>"         inline name span inside a description
//   data-concept="c1,c2"        concept refs on a description or name span
namespace etext::ingest {

inline constexpr std::string_view kDescriptionPrefix = "o:descp:";
inline constexpr std::string_view kQuestionPrefix = "o:q:";

class IngestError : public Error {
 public:
  using Error::Error;
};

struct TopicEntry {
  NodeRef topic;
  std::string heading;
  int depth = 1;                 // heading level 1..6
  std::optional<std::size_t> parent;  // index into topic_tree
  std::string anchor;            // element id, or the topic ref if none
  std::size_t offset = 0;        // byte offset of the heading
};

struct NameSpan {
  NodeRef name;
  std::string text;
};

struct ConceptRef {
  NodeRef subject;
  NodeRef concept_node;
};

struct ContentBlock {
  NodeRef block_id;
  std::vector<NodeRef> enclosing_topics;
  std::string html_value;
  std::vector<NodeRef> question_targets;
  std::vector<NameSpan> name_spans;
  std::vector<ConceptRef> concept_refs;
  std::string element_id;
  std::size_t offset = 0;

  bool is_question() const { return block_id.ns() == Namespace::kQuestion; }
};

struct CorpusDocument {
  std::string source_name;
  std::string title;
  std::vector<TopicEntry> topic_tree;  // document order
  std::vector<ContentBlock> blocks;    // document order
};

struct SourceFile {
  std::string name;
  std::string content;
};

// Lowercase, whitespace runs become '_', characters that cannot appear in a
// local id are dropped. Non-ASCII bytes are kept.
std::string slug(std::string_view heading_text);

CorpusDocument parse_document(std::string_view html,
                              std::string_view source_name = "");

std::vector<Triple> extract_topic_hierarchy(const CorpusDocument& doc);
std::vector<Triple> extract_descriptions(const CorpusDocument& doc);
std::vector<Triple> link_topics(const CorpusDocument& doc);
// Targets are checked against the document's own descriptions.
std::vector<Triple> extract_questions(const CorpusDocument& doc);
std::vector<Triple> extract_questions(const CorpusDocument& doc,
                                      const std::set<NodeRef>& known_descriptions);
std::vector<Triple> extract_annotations(const CorpusDocument& doc);

struct Corpus {
  std::vector<CorpusDocument> documents;
  KnowledgeGraph graph;
};

// Parses every file and merges the extraction output. Errors are rethrown
// as IngestError prefixed with the file name.
Corpus compile(const std::vector<SourceFile>& files);
KnowledgeGraph compile_corpus(const std::vector<SourceFile>& files);

}  // namespace etext::ingest
