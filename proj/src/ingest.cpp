#include "etext/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <utility>

#include "etext/html.hpp"

namespace etext::ingest {

namespace {

using html::Node;

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return std::string(s);
}

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> items;
  std::size_t start = 0;
  while (start <= value.size()) {
    auto comma = value.find(',', start);
    if (comma == std::string_view::npos) comma = value.size();
    auto item = trim(value.substr(start, comma - start));
    if (!item.empty()) items.push_back(std::move(item));
    start = comma + 1;
  }
  return items;
}

std::string at_offset(std::size_t offset) {
  return " (byte " + std::to_string(offset) + ")";
}

// Builds a ref in `ns` from an annotation value that may carry the canonical
// prefix ("dsc:x"), the authoring prefix ("o:descp:x"), or neither.
NodeRef ref_from_annotation(Namespace ns, std::string_view value,
                            std::string_view authoring_prefix, std::size_t offset) {
  std::string_view local = value;
  const std::string canonical = std::string(namespace_prefix(ns)) + ":";
  if (!authoring_prefix.empty() && local.starts_with(authoring_prefix)) {
    local.remove_prefix(authoring_prefix.size());
  } else if (local.starts_with(canonical)) {
    local.remove_prefix(canonical.size());
  }
  try {
    return NodeRef(ns, local);
  } catch (const ParseError& e) {
    throw IngestError("invalid identifier '" + std::string(value) + "'" +
                      at_offset(offset) + ": " + e.what());
  }
}

class DocumentReader {
 public:
  DocumentReader(std::string_view source, std::string_view name)
      : source_(source) {
    doc_.source_name = std::string(name);
  }

  CorpusDocument read() {
    auto root = html::parse(source_);
    visit(*root);
    if (doc_.title.empty()) doc_.title = first_h1_;
    return std::move(doc_);
  }

 private:
  void visit(const Node& node) {
    if (node.type != Node::Type::kElement) {
      for (const auto& child : node.children) visit(*child);
      return;
    }
    if (node.tag == "title") {
      if (doc_.title.empty()) doc_.title = html::collapse_whitespace(node.text_content());
      return;
    }
    if (node.tag.size() == 2 && node.tag[0] == 'h' && node.tag[1] >= '1' &&
        node.tag[1] <= '6') {
      heading(node, node.tag[1] - '0');
      return;
    }
    const std::string* id = node.attr("id");
    if (id && (id->starts_with(kDescriptionPrefix) || id->starts_with(kQuestionPrefix))) {
      block(node, *id);
      return;
    }
    if (const std::string* name_id = node.attr("data-name-id")) {
      name_span(node, *name_id);
    }
    for (const auto& child : node.children) visit(*child);
  }

  void heading(const Node& node, int level) {
    if (current_ != nullptr) {
      throw IngestError("heading inside block " + current_->block_id.str() +
                        at_offset(node.begin));
    }
    const std::string text = html::collapse_whitespace(node.text_content());
    if (level == 1 && first_h1_.empty()) first_h1_ = text;
    std::string local;
    if (const std::string* override_id = node.attr("data-topic-id")) {
      local = trim(*override_id);
    } else {
      local = slug(text);
    }
    if (local.empty()) {
      throw IngestError("heading has no usable text for a topic id" +
                        at_offset(node.begin));
    }
    NodeRef topic = ref_from_annotation(Namespace::kTopic, local, "", node.begin);

    while (!heading_stack_.empty() &&
           doc_.topic_tree[heading_stack_.back()].depth >= level) {
      heading_stack_.pop_back();
    }
    TopicEntry entry{topic, text, level, std::nullopt, "", node.begin};
    if (!heading_stack_.empty()) entry.parent = heading_stack_.back();
    const std::string* element_id = node.attr("id");
    entry.anchor = element_id && !element_id->empty() ? *element_id : topic.str();
    doc_.topic_tree.push_back(std::move(entry));
    heading_stack_.push_back(doc_.topic_tree.size() - 1);
  }

  void block(const Node& node, const std::string& id) {
    if (current_ != nullptr) {
      throw IngestError("block " + id + " nested inside block " +
                        current_->block_id.str() + at_offset(node.begin));
    }
    const bool question = id.starts_with(kQuestionPrefix);
    NodeRef ref = question
                      ? ref_from_annotation(Namespace::kQuestion, id, kQuestionPrefix, node.begin)
                      : ref_from_annotation(Namespace::kDescription, id,
                                            kDescriptionPrefix, node.begin);
    if (auto it = seen_.find(ref); it != seen_.end()) {
      throw IngestError("duplicate block id " + ref.str() + " at bytes " +
                        std::to_string(it->second) + " and " +
                        std::to_string(node.begin));
    }
    seen_.emplace(ref, node.begin);
    if (heading_stack_.empty()) {
      throw IngestError("orphan block " + ref.str() +
                        " appears before any heading" + at_offset(node.begin));
    }

    ContentBlock block{ref, {}, {}, {}, {}, {}, id, node.begin};
    block.enclosing_topics.push_back(doc_.topic_tree[heading_stack_.back()].topic);
    if (const std::string* topics = node.attr("data-topics")) {
      for (const auto& t : split_list(*topics)) {
        auto topic = ref_from_annotation(Namespace::kTopic, t, "", node.begin);
        if (std::find(block.enclosing_topics.begin(), block.enclosing_topics.end(),
                      topic) == block.enclosing_topics.end()) {
          block.enclosing_topics.push_back(std::move(topic));
        }
      }
    }
    const std::string* targets = node.attr("data-question-of");
    if (!question && targets) {
      throw IngestError("description " + ref.str() +
                        " carries a question annotation" + at_offset(node.begin));
    }
    if (question) {
      if (targets) {
        for (const auto& t : split_list(*targets)) {
          block.question_targets.push_back(ref_from_annotation(
              Namespace::kDescription, t, kDescriptionPrefix, node.begin));
        }
      }
      if (block.question_targets.empty()) {
        throw IngestError("question " + ref.str() +
                          " has no data-question-of targets" + at_offset(node.begin));
      }
    }
    if (const std::string* concepts = node.attr("data-concept")) {
      for (const auto& c : split_list(*concepts)) {
        block.concept_refs.push_back(
            {ref, ref_from_annotation(Namespace::kConcept, c, "", node.begin)});
      }
    }
    block.html_value =
        std::string(source_.substr(node.inner_begin, node.inner_end - node.inner_begin));

    doc_.blocks.push_back(std::move(block));
    current_ = &doc_.blocks.back();
    for (const auto& child : node.children) visit(*child);
    current_ = nullptr;
  }

  void name_span(const Node& node, const std::string& value) {
    if (current_ == nullptr || current_->is_question()) {
      throw IngestError("name span '" + value +
                        "' is not inside a description" + at_offset(node.begin));
    }
    NodeRef name = ref_from_annotation(Namespace::kName, trim(value), "", node.begin);
    current_->name_spans.push_back(
        {name, html::collapse_whitespace(node.text_content())});
    if (const std::string* concepts = node.attr("data-concept")) {
      for (const auto& c : split_list(*concepts)) {
        current_->concept_refs.push_back(
            {name, ref_from_annotation(Namespace::kConcept, c, "", node.begin)});
      }
    }
  }

  std::string_view source_;
  CorpusDocument doc_;
  std::vector<std::size_t> heading_stack_;
  std::map<NodeRef, std::size_t> seen_;
  ContentBlock* current_ = nullptr;
  std::string first_h1_;
};

std::string cycle_text(const std::vector<NodeRef>& cycle) {
  std::string text;
  for (const auto& n : cycle) text += n.str() + " -> ";
  return text + cycle.front().str();
}

std::vector<std::string> cycle_members(const std::vector<NodeRef>& cycle) {
  std::vector<std::string> members;
  for (const auto& n : cycle) members.push_back(n.str());
  return members;
}

void append(std::vector<Triple>& out, std::vector<Triple> more) {
  out.insert(out.end(), std::make_move_iterator(more.begin()),
             std::make_move_iterator(more.end()));
}

}  // namespace

std::string slug(std::string_view heading_text) {
  std::string out;
  bool pending_sep = false;
  for (char c : heading_text) {
    const auto uc = static_cast<unsigned char>(c);
    if (std::isspace(uc)) {
      pending_sep = !out.empty();
      continue;
    }
    const bool keep = uc >= 0x80 || std::isalnum(uc) || c == '_' || c == '-';
    if (!keep) continue;
    if (pending_sep) out.push_back('_');
    pending_sep = false;
    out.push_back(uc < 0x80 ? static_cast<char>(std::tolower(uc)) : c);
  }
  return out;
}

CorpusDocument parse_document(std::string_view html, std::string_view source_name) {
  return DocumentReader(html, source_name).read();
}

std::vector<Triple> extract_topic_hierarchy(const CorpusDocument& doc) {
  std::map<NodeRef, std::set<NodeRef>> parents;
  std::vector<Triple> out;
  for (const auto& entry : doc.topic_tree) {
    if (!entry.parent) continue;
    const auto& parent = doc.topic_tree[*entry.parent].topic;
    if (parent == entry.topic) {
      throw CycleError("topic hierarchy cycle: " + cycle_text({entry.topic}),
                       {entry.topic.str()});
    }
    if (parents[entry.topic].insert(parent).second) {
      out.push_back({entry.topic, EdgeLabel::kSubClassOf, parent, Provenance::kAuthored});
    }
  }
  if (auto cycle = find_cycle(parents)) {
    throw CycleError("topic hierarchy cycle: " + cycle_text(*cycle),
                     cycle_members(*cycle));
  }
  return out;
}

std::vector<Triple> extract_descriptions(const CorpusDocument& doc) {
  std::vector<Triple> out;
  const ContentBlock* previous = nullptr;
  for (const auto& block : doc.blocks) {
    if (block.is_question()) continue;
    if (previous != nullptr) {
      out.push_back({previous->block_id, EdgeLabel::kNextPage, block.block_id,
                     Provenance::kAuthored});
    }
    previous = &block;
  }
  return out;
}

std::vector<Triple> link_topics(const CorpusDocument& doc) {
  std::set<NodeRef> known;
  for (const auto& entry : doc.topic_tree) known.insert(entry.topic);
  std::vector<Triple> out;
  for (const auto& block : doc.blocks) {
    if (block.is_question()) continue;
    for (const auto& topic : block.enclosing_topics) {
      if (!known.contains(topic)) {
        throw IngestError("description " + block.block_id.str() +
                          " refers to unknown topic " + topic.str() +
                          at_offset(block.offset));
      }
      out.push_back({block.block_id, EdgeLabel::kTypeOf, topic, Provenance::kAuthored});
    }
  }
  return out;
}

std::vector<Triple> extract_questions(const CorpusDocument& doc) {
  std::set<NodeRef> known;
  for (const auto& block : doc.blocks) {
    if (!block.is_question()) known.insert(block.block_id);
  }
  return extract_questions(doc, known);
}

std::vector<Triple> extract_questions(const CorpusDocument& doc,
                                      const std::set<NodeRef>& known_descriptions) {
  std::vector<Triple> out;
  for (const auto& block : doc.blocks) {
    if (!block.is_question()) continue;
    for (const auto& target : block.question_targets) {
      if (!known_descriptions.contains(target)) {
        throw IngestError("question " + block.block_id.str() +
                          " targets missing description " + target.str());
      }
      out.push_back({block.block_id, EdgeLabel::kIsQuestionOf, target,
                     Provenance::kAuthored});
    }
  }
  return out;
}

std::vector<Triple> extract_annotations(const CorpusDocument& doc) {
  std::vector<Triple> out;
  for (const auto& block : doc.blocks) {
    for (const auto& span : block.name_spans) {
      if (block.is_question()) {
        throw IngestError("name " + span.name.str() + " inside question " +
                          block.block_id.str());
      }
      out.push_back({span.name, EdgeLabel::kFromDescription, block.block_id,
                     Provenance::kAuthored});
    }
    for (const auto& ref : block.concept_refs) {
      const auto ns = ref.subject.ns();
      if (ns != Namespace::kDescription && ns != Namespace::kName) {
        throw IngestError("concept " + ref.concept_node.str() + " attached to " +
                          ref.subject.str() +
                          "; only descriptions and names may carry concepts");
      }
      out.push_back({ref.subject, EdgeLabel::kIsRelatedTo, ref.concept_node,
                     Provenance::kAuthored});
    }
  }
  return out;
}

Corpus compile(const std::vector<SourceFile>& files) {
  if (files.empty()) throw IngestError("no corpus files given");
  Corpus corpus;
  std::map<NodeRef, std::string> owner;
  for (const auto& file : files) {
    try {
      corpus.documents.push_back(parse_document(file.content, file.name));
    } catch (const Error& e) {
      throw IngestError(file.name + ": " + e.what());
    }
    for (const auto& block : corpus.documents.back().blocks) {
      auto [it, inserted] = owner.emplace(block.block_id, file.name);
      if (!inserted) {
        throw IngestError(file.name + ": duplicate block id " + block.block_id.str() +
                          " (also defined in " + it->second + ")");
      }
    }
  }

  std::set<NodeRef> descriptions;
  for (const auto& [id, file] : owner) {
    if (id.ns() == Namespace::kDescription) descriptions.insert(id);
  }

  for (const auto& doc : corpus.documents) {
    std::vector<Triple> triples;
    try {
      append(triples, extract_topic_hierarchy(doc));
      append(triples, extract_descriptions(doc));
      append(triples, link_topics(doc));
      append(triples, extract_questions(doc, descriptions));
      append(triples, extract_annotations(doc));
    } catch (const Error& e) {
      throw IngestError(doc.source_name + ": " + e.what());
    }
    for (const auto& t : triples) corpus.graph.add_triple(t);
  }

  // Topics merge across files by id, so a cycle may only appear in the union.
  std::map<NodeRef, std::set<NodeRef>> parents;
  for (const auto& [key, prov] : corpus.graph.triple_map()) {
    if (key.predicate == EdgeLabel::kSubClassOf) parents[key.subject].insert(key.object);
  }
  if (auto cycle = find_cycle(parents)) {
    throw IngestError("topic hierarchy cycle across files: " + cycle_text(*cycle));
  }
  return corpus;
}

KnowledgeGraph compile_corpus(const std::vector<SourceFile>& files) {
  return compile(files).graph;
}

}  // namespace etext::ingest
