#include "etext/html.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <utility>

namespace etext::html {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f';
}

bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

char lower(char c) {
  return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

template <std::size_t N>
bool one_of(std::string_view tag, const std::array<std::string_view, N>& set) {
  return std::find(set.begin(), set.end(), tag) != set.end();
}

constexpr std::array<std::string_view, 14> kVoid = {
    "area", "base", "br",    "col",   "embed",  "hr",    "img",
    "input", "link", "meta", "param", "source", "track", "wbr"};

// Start tags that close an open <p>.
constexpr std::array<std::string_view, 30> kClosesP = {
    "address", "article", "aside",  "blockquote", "details", "dialog",
    "div",     "dl",      "fieldset", "figcaption", "figure", "footer",
    "form",    "h1",      "h2",     "h3",         "h4",      "h5",
    "h6",      "header",  "hgroup", "hr",         "main",    "menu",
    "nav",     "ol",      "p",      "pre",        "section", "table"};

constexpr std::array<std::string_view, 10> kScopeBoundary = {
    "applet", "caption", "html",   "table",    "td",
    "th",     "marquee", "object", "template", "button"};

constexpr std::array<std::string_view, 6> kHeadings = {"h1", "h2", "h3",
                                                       "h4", "h5", "h6"};

bool is_heading(std::string_view tag) { return one_of(tag, kHeadings); }

struct NamedEntity {
  std::string_view name;
  std::uint32_t code;
};

constexpr std::array<NamedEntity, 24> kEntities = {{
    {"amp", '&'},      {"lt", '<'},       {"gt", '>'},       {"quot", '"'},
    {"apos", '\''},    {"nbsp", 0xA0},    {"copy", 0xA9},    {"reg", 0xAE},
    {"times", 0xD7},   {"divide", 0xF7},  {"ndash", 0x2013}, {"mdash", 0x2014},
    {"lsquo", 0x2018}, {"rsquo", 0x2019}, {"ldquo", 0x201C}, {"rdquo", 0x201D},
    {"hellip", 0x2026}, {"middot", 0xB7}, {"deg", 0xB0},     {"plusmn", 0xB1},
    {"le", 0x2264},    {"ge", 0x2265},    {"ne", 0x2260},    {"rarr", 0x2192},
}};

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) cp = 0xFFFD;
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

class TreeBuilder {
 public:
  explicit TreeBuilder(std::string_view src) : src_(src) {
    root_ = std::make_unique<Node>();
    root_->type = Node::Type::kDocument;
    root_->end = root_->inner_end = src.size();
    open_.push_back(root_.get());
  }

  std::unique_ptr<Node> run() {
    std::size_t i = 0;
    while (i < src_.size()) {
      if (src_[i] == '<') {
        // A '<' that does not start markup is character data.
        if (const auto next = markup(i); next != i) {
          i = next;
          continue;
        }
      }
      ++i;
    }
    flush_text(src_.size());
    while (open_.size() > 1) close_top(src_.size(), src_.size());
    return std::move(root_);
  }

 private:
  // Handles the construct starting at `i`. Returns the offset after it, or
  // `i` when the '<' does not start markup.
  std::size_t markup(std::size_t i) {
    const auto rest = src_.substr(i);
    if (rest.starts_with("<!--")) {
      flush_text(i);
      auto close = src_.find("-->", i + 4);
      std::size_t end = close == std::string_view::npos ? src_.size() : close + 3;
      auto node = make(Node::Type::kComment, i);
      node->inner_begin = std::min(i + 4, end);
      node->inner_end = close == std::string_view::npos ? src_.size() : close;
      node->end = end;
      append(std::move(node));
      text_from_ = end;
      return end;
    }
    if (rest.size() >= 2 && (rest[1] == '!' || rest[1] == '?')) {
      flush_text(i);
      auto close = src_.find('>', i);
      std::size_t end = close == std::string_view::npos ? src_.size() : close + 1;
      text_from_ = end;
      return end;
    }
    if (rest.size() >= 3 && rest[1] == '/' && is_alpha(rest[2])) {
      flush_text(i);
      std::size_t j = i + 2;
      std::string name;
      while (j < src_.size() && !is_space(src_[j]) && src_[j] != '>' &&
             src_[j] != '/') {
        name.push_back(lower(src_[j++]));
      }
      auto close = src_.find('>', j);
      std::size_t end = close == std::string_view::npos ? src_.size() : close + 1;
      end_tag(name, i, end);
      text_from_ = end;
      return end;
    }
    if (rest.size() >= 2 && is_alpha(rest[1])) {
      flush_text(i);
      return start_tag(i);
    }
    return i;
  }

  std::size_t start_tag(std::size_t begin) {
    std::size_t j = begin + 1;
    std::string name;
    while (j < src_.size() && !is_space(src_[j]) && src_[j] != '>' &&
           src_[j] != '/') {
      name.push_back(lower(src_[j++]));
    }
    std::vector<Attribute> attributes;
    bool self_closing = false;
    while (j < src_.size()) {
      while (j < src_.size() && is_space(src_[j])) ++j;
      if (j >= src_.size()) break;
      if (src_[j] == '>') {
        ++j;
        break;
      }
      if (src_[j] == '/') {
        ++j;
        if (j < src_.size() && src_[j] == '>') {
          self_closing = true;
          ++j;
          break;
        }
        continue;
      }
      Attribute attr;
      while (j < src_.size() && !is_space(src_[j]) && src_[j] != '=' &&
             src_[j] != '>' && !(src_[j] == '/' && j + 1 < src_.size() &&
                                 src_[j + 1] == '>')) {
        attr.name.push_back(lower(src_[j++]));
      }
      while (j < src_.size() && is_space(src_[j])) ++j;
      if (j < src_.size() && src_[j] == '=') {
        ++j;
        while (j < src_.size() && is_space(src_[j])) ++j;
        std::size_t vbegin = j;
        if (j < src_.size() && (src_[j] == '"' || src_[j] == '\'')) {
          const char quote = src_[j++];
          vbegin = j;
          while (j < src_.size() && src_[j] != quote) ++j;
          attr.value = decode_entities(src_.substr(vbegin, j - vbegin));
          if (j < src_.size()) ++j;
        } else {
          while (j < src_.size() && !is_space(src_[j]) && src_[j] != '>') ++j;
          attr.value = decode_entities(src_.substr(vbegin, j - vbegin));
        }
      }
      if (attr.name.empty()) {
        ++j;
        continue;
      }
      // First occurrence of a duplicated attribute wins.
      const bool seen = std::any_of(attributes.begin(), attributes.end(),
                                    [&](const Attribute& a) { return a.name == attr.name; });
      if (!seen) attributes.push_back(std::move(attr));
    }
    const std::size_t end = j;

    apply_implied_end_tags(name, begin);

    auto node = make(Node::Type::kElement, begin);
    node->tag = name;
    node->attributes = std::move(attributes);
    node->inner_begin = end;
    Node* element = append(std::move(node));
    text_from_ = end;

    if (one_of(name, kVoid) || self_closing) {
      element->inner_end = end;
      element->end = end;
      return end;
    }
    open_.push_back(element);

    if (name == "script" || name == "style" || name == "textarea" ||
        name == "title") {
      return raw_text(element, end);
    }
    return end;
  }

  std::size_t raw_text(Node* element, std::size_t from) {
    std::size_t k = from;
    std::size_t close = src_.size();
    const std::string needle = "</" + element->tag;
    while (k < src_.size()) {
      auto lt = src_.find("</", k);
      if (lt == std::string_view::npos) break;
      bool match = lt + needle.size() <= src_.size();
      for (std::size_t n = 0; match && n < needle.size(); ++n) {
        match = lower(src_[lt + n]) == needle[n];
      }
      if (match) {
        close = lt;
        break;
      }
      k = lt + 2;
    }
    if (close > from) {
      auto text = make(Node::Type::kText, from);
      text->inner_begin = from;
      text->inner_end = text->end = close;
      const auto raw = src_.substr(from, close - from);
      const bool rcdata = element->tag == "textarea" || element->tag == "title";
      text->text = rcdata ? decode_entities(raw) : std::string(raw);
      append(std::move(text));
    }
    std::size_t end = src_.size();
    if (close < src_.size()) {
      auto gt = src_.find('>', close);
      end = gt == std::string_view::npos ? src_.size() : gt + 1;
    }
    close_top(close, end);
    text_from_ = end;
    return end;
  }

  void apply_implied_end_tags(const std::string& name, std::size_t at) {
    if (one_of(name, kClosesP) && in_scope("p")) close_through("p", at);
    if (is_heading(name) && is_heading(current()->tag)) close_top(at, at);
    if (name == "li") {
      close_nearest({"li"}, {"ul", "ol", "menu"}, at);
    } else if (name == "dd" || name == "dt") {
      close_nearest({"dd", "dt"}, {"dl"}, at);
    } else if (name == "tr") {
      close_nearest({"tr"}, {"table", "tbody", "thead", "tfoot"}, at);
    } else if (name == "td" || name == "th") {
      close_nearest({"td", "th"}, {"tr", "table"}, at);
    } else if (name == "option" && current()->tag == "option") {
      close_top(at, at);
    }
  }

  // Closes the nearest open element named in `targets` unless one of
  // `stops` (or a scope boundary) is found first.
  void close_nearest(std::initializer_list<std::string_view> targets,
                     std::initializer_list<std::string_view> stops,
                     std::size_t at) {
    for (std::size_t k = open_.size(); k-- > 1;) {
      const auto& tag = open_[k]->tag;
      if (std::find(targets.begin(), targets.end(), tag) != targets.end()) {
        while (open_.size() > k) close_top(at, at);
        return;
      }
      if (std::find(stops.begin(), stops.end(), tag) != stops.end() ||
          one_of(tag, kScopeBoundary)) {
        return;
      }
    }
  }

  bool in_scope(std::string_view tag) const {
    for (std::size_t k = open_.size(); k-- > 1;) {
      if (open_[k]->tag == tag) return true;
      if (one_of(open_[k]->tag, kScopeBoundary)) return false;
    }
    return false;
  }

  void close_through(std::string_view tag, std::size_t at) {
    while (open_.size() > 1) {
      const bool last = open_.back()->tag == tag;
      close_top(at, at);
      if (last) return;
    }
  }

  void end_tag(const std::string& name, std::size_t begin, std::size_t end) {
    for (std::size_t k = open_.size(); k-- > 1;) {
      const auto& tag = open_[k]->tag;
      const bool match = tag == name || (is_heading(name) && is_heading(tag));
      if (match) {
        while (open_.size() > k + 1) close_top(begin, begin);
        close_top(begin, end);
        return;
      }
      if (one_of(tag, kScopeBoundary) && tag != name) {
        // An end tag cannot close past a table cell or similar boundary.
        if (tag == "td" || tag == "th" || tag == "table" || tag == "button") return;
      }
    }
  }

  void flush_text(std::size_t upto) {
    if (upto > text_from_) {
      auto node = make(Node::Type::kText, text_from_);
      node->inner_begin = text_from_;
      node->inner_end = node->end = upto;
      node->text = decode_entities(src_.substr(text_from_, upto - text_from_));
      append(std::move(node));
    }
    text_from_ = upto;
  }

  std::unique_ptr<Node> make(Node::Type type, std::size_t begin) {
    auto node = std::make_unique<Node>();
    node->type = type;
    node->begin = begin;
    return node;
  }

  Node* append(std::unique_ptr<Node> node) {
    Node* parent = current();
    node->parent = parent;
    parent->children.push_back(std::move(node));
    return parent->children.back().get();
  }

  Node* current() const { return open_.back(); }

  void close_top(std::size_t inner_end, std::size_t end) {
    Node* node = open_.back();
    node->inner_end = inner_end;
    node->end = end;
    open_.pop_back();
  }

  std::string_view src_;
  std::unique_ptr<Node> root_;
  std::vector<Node*> open_;
  std::size_t text_from_ = 0;
};

void collect_text(const Node& node, std::string& out) {
  if (node.type == Node::Type::kText) {
    out += node.text;
    return;
  }
  if (node.type == Node::Type::kComment) return;
  if (node.type == Node::Type::kElement &&
      (node.tag == "script" || node.tag == "style")) {
    return;
  }
  for (const auto& child : node.children) collect_text(*child, out);
}

}  // namespace

const std::string* Node::attr(std::string_view name) const {
  for (const auto& a : attributes) {
    if (a.name == name) return &a.value;
  }
  return nullptr;
}

std::string Node::text_content() const {
  std::string out;
  collect_text(*this, out);
  return out;
}

std::unique_ptr<Node> parse(std::string_view source) {
  return TreeBuilder(source).run();
}

std::string decode_entities(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '&') {
      out.push_back(text[i++]);
      continue;
    }
    const auto semi = text.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 12) {
      out.push_back(text[i++]);
      continue;
    }
    const auto body = text.substr(i + 1, semi - i - 1);
    bool decoded = false;
    if (body.size() >= 2 && body[0] == '#') {
      std::uint32_t cp = 0;
      const bool hex = body[1] == 'x' || body[1] == 'X';
      const auto digits = body.substr(hex ? 2 : 1);
      bool ok = !digits.empty();
      for (char c : digits) {
        const auto uc = static_cast<unsigned char>(c);
        if (hex ? !std::isxdigit(uc) : !std::isdigit(uc)) {
          ok = false;
          break;
        }
        const std::uint32_t d =
            std::isdigit(uc) ? static_cast<std::uint32_t>(c - '0')
                             : static_cast<std::uint32_t>(std::tolower(uc) - 'a' + 10);
        cp = cp * (hex ? 16 : 10) + d;
        if (cp > 0x10FFFF) cp = 0x110000;
      }
      if (ok) {
        append_utf8(out, cp);
        decoded = true;
      }
    } else {
      for (const auto& entity : kEntities) {
        if (entity.name == body) {
          append_utf8(out, entity.code);
          decoded = true;
          break;
        }
      }
    }
    if (decoded) {
      i = semi + 1;
    } else {
      out.push_back(text[i++]);
    }
  }
  return out;
}

std::string collapse_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    // U+00A0 (no-break space) counts as whitespace here.
    const bool nbsp = c == '\xC2' && i + 1 < text.size() && text[i + 1] == '\xA0';
    if (is_space(c) || c == '\v' || nbsp) {
      pending_space = !out.empty();
      if (nbsp) ++i;
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

std::string strip_tags(std::string_view fragment) {
  auto root = parse(fragment);
  std::string text;
  // Block boundaries separate words even without surrounding whitespace.
  struct Walker {
    std::string& out;
    void operator()(const Node& node) {
      if (node.type == Node::Type::kText) {
        out += node.text;
        return;
      }
      if (node.type == Node::Type::kComment) return;
      if (node.type == Node::Type::kElement &&
          (node.tag == "script" || node.tag == "style")) {
        return;
      }
      const bool separate = node.type == Node::Type::kElement && node.tag != "span" &&
                            node.tag != "b" && node.tag != "i" && node.tag != "em" &&
                            node.tag != "strong" && node.tag != "a" &&
                            node.tag != "code" && node.tag != "sub" &&
                            node.tag != "sup" && node.tag != "u";
      if (separate) out.push_back(' ');
      for (const auto& child : node.children) (*this)(*child);
      if (separate) out.push_back(' ');
    }
  };
  Walker{text}(*root);
  return collapse_whitespace(text);
}

}  // namespace etext::html
