#include "etext/content_bundle.hpp"

#include <fstream>
#include <sstream>

#include "etext/error.hpp"

namespace etext::gateway {

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}

std::string anchor_for(const ingest::CorpusDocument& doc, std::string_view element) {
  const auto file = std::filesystem::path(doc.source_name).filename().string();
  return file + "#" + std::string(element);
}

}  // namespace

std::string percent_encode(std::string_view text) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    const auto uc = static_cast<unsigned char>(c);
    if (c == '%' || uc < 0x20 || uc == 0x7F) {
      out.push_back('%');
      out.push_back(kHex[uc >> 4]);
      out.push_back(kHex[uc & 0xF]);
    } else {
      out.push_back(c);
    }
  }
  return out;
}

std::string percent_decode(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '%') {
      out.push_back(text[i]);
      continue;
    }
    if (i + 2 >= text.size()) {
      throw ParseError("truncated percent escape", i);
    }
    const int hi = hex_value(text[i + 1]);
    const int lo = hex_value(text[i + 2]);
    if (hi < 0 || lo < 0) throw ParseError("malformed percent escape", i);
    out.push_back(static_cast<char>(hi * 16 + lo));
    i += 2;
  }
  return out;
}

void ContentBundle::add(ContentRecord record) {
  if (index_.contains(record.node)) return;
  index_.emplace(record.node, records_.size());
  records_.push_back(std::move(record));
}

const ContentRecord* ContentBundle::find(const NodeRef& node) const {
  auto it = index_.find(node);
  return it == index_.end() ? nullptr : &records_[it->second];
}

std::size_t ContentBundle::position(const NodeRef& node) const {
  auto it = index_.find(node);
  return it == index_.end() ? records_.size() : it->second;
}

ContentBundle ContentBundle::from_documents(
    const std::vector<ingest::CorpusDocument>& docs) {
  ContentBundle bundle;
  for (const auto& doc : docs) {
    // Headings and blocks interleaved in document order.
    std::size_t t = 0;
    for (const auto& block : doc.blocks) {
      while (t < doc.topic_tree.size() && doc.topic_tree[t].offset < block.offset) {
        const auto& topic = doc.topic_tree[t++];
        bundle.add({topic.topic, anchor_for(doc, topic.anchor), topic.heading});
      }
      bundle.add({block.block_id, anchor_for(doc, block.element_id), block.html_value});
    }
    for (; t < doc.topic_tree.size(); ++t) {
      const auto& topic = doc.topic_tree[t];
      bundle.add({topic.topic, anchor_for(doc, topic.anchor), topic.heading});
    }
  }
  // Names after the book content; their anchor is the enclosing description.
  for (const auto& doc : docs) {
    for (const auto& block : doc.blocks) {
      for (const auto& span : block.name_spans) {
        bundle.add({span.name, anchor_for(doc, block.element_id), span.text});
      }
    }
  }
  return bundle;
}

void ContentBundle::write(std::ostream& out) const {
  for (const auto& r : records_) {
    out << r.node.str() << '\t' << percent_encode(r.anchor) << '\t'
        << percent_encode(r.value) << '\n';
  }
}

std::string ContentBundle::to_string() const {
  std::ostringstream out;
  write(out);
  return out.str();
}

void ContentBundle::write_file(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open content bundle for writing: " + path.string());
  write(out);
  if (!out) throw Error("failed writing content bundle: " + path.string());
}

ContentBundle ContentBundle::read(std::istream& in) {
  ContentBundle bundle;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos || line.find('\t', t2 + 1) != std::string::npos) {
      throw ParseError("content bundle line " + std::to_string(line_no) +
                           ": expected 3 tab-separated fields",
                       line_no);
    }
    try {
      bundle.add({NodeRef::parse(std::string_view(line).substr(0, t1)),
                  percent_decode(std::string_view(line).substr(t1 + 1, t2 - t1 - 1)),
                  percent_decode(std::string_view(line).substr(t2 + 1))});
    } catch (const Error& e) {
      throw ParseError("content bundle line " + std::to_string(line_no) + ": " + e.what(),
                       line_no);
    }
  }
  return bundle;
}

ContentBundle ContentBundle::read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open content bundle: " + path.string());
  return read(in);
}

}  // namespace etext::gateway
