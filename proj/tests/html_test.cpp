#include "doctest.h"

#include "etext/html.hpp"

using namespace etext;

namespace {

const html::Node* find_tag(const html::Node& n, std::string_view tag) {
  if (n.is_element(tag)) return &n;
  for (const auto& c : n.children) {
    if (auto* hit = find_tag(*c, tag)) return hit;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("html: attributes and text") {
  auto root = html::parse(R"(<div id="o:descp:x" class='a b' hidden>Hi &amp; bye</div>)");
  auto* div = find_tag(*root, "div");
  REQUIRE(div != nullptr);
  REQUIRE(div->attr("id") != nullptr);
  CHECK_EQ(*div->attr("id"), "o:descp:x");
  CHECK_EQ(*div->attr("class"), "a b");
  REQUIRE(div->attr("hidden") != nullptr);
  CHECK(div->attr("missing") == nullptr);
  CHECK_EQ(div->text_content(), "Hi & bye");
}

TEST_CASE("html: tag names are case-insensitive") {
  auto root = html::parse("<DIV ID=\"x\"><P>a</P></DIV>");
  auto* div = find_tag(*root, "div");
  REQUIRE(div != nullptr);
  CHECK_EQ(*div->attr("id"), "x");
  CHECK(find_tag(*div, "p") != nullptr);
}

TEST_CASE("html: offsets cover the element source") {
  const std::string src = "<body><div id=\"d\"><p>x</p></div></body>";
  auto root = html::parse(src);
  auto* div = find_tag(*root, "div");
  REQUIRE(div != nullptr);
  CHECK_EQ(src.substr(div->begin, div->end - div->begin), "<div id=\"d\"><p>x</p></div>");
  CHECK_EQ(src.substr(div->inner_begin, div->inner_end - div->inner_begin), "<p>x</p>");
}

TEST_CASE("html: implied end tags") {
  auto root = html::parse("<div><p>one<p>two</div><span>after</span>");
  auto* div = find_tag(*root, "div");
  REQUIRE(div != nullptr);
  int paragraphs = 0;
  for (const auto& c : div->children) paragraphs += c->is_element("p") ? 1 : 0;
  CHECK_EQ(paragraphs, 2);
  // The span is a sibling of the div, not swallowed by it.
  CHECK(find_tag(*div, "span") == nullptr);
  CHECK(find_tag(*root, "span") != nullptr);
}

TEST_CASE("html: unclosed elements close at end of input") {
  auto root = html::parse("<div id=\"a\"><p>text");
  auto* div = find_tag(*root, "div");
  REQUIRE(div != nullptr);
  CHECK_EQ(div->text_content(), "text");
}

TEST_CASE("html: stray end tags are ignored") {
  auto root = html::parse("<div>a</span>b</div>");
  auto* div = find_tag(*root, "div");
  REQUIRE(div != nullptr);
  CHECK_EQ(div->text_content(), "ab");
}

TEST_CASE("html: void and raw text elements") {
  auto root = html::parse("<p>a<br>b<img src=x>c</p><script>if (a < b) { '<div>' }</script>");
  auto* p = find_tag(*root, "p");
  REQUIRE(p != nullptr);
  CHECK_EQ(p->text_content(), "abc");
  auto* script = find_tag(*root, "script");
  REQUIRE(script != nullptr);
  CHECK(find_tag(*script, "div") == nullptr);
}

TEST_CASE("html: comments and doctype are skipped") {
  auto root = html::parse("<!doctype html><!-- <div id=x> --><p>ok</p>");
  CHECK(find_tag(*root, "div") == nullptr);
  CHECK(find_tag(*root, "p") != nullptr);
}

TEST_CASE("html: entities") {
  CHECK_EQ(html::decode_entities("&lt;a&gt; &quot;&#65;&#x42;&apos; &nbsp;&copy;"),
           "<a> \"AB' \xC2\xA0\xC2\xA9");
  CHECK_EQ(html::decode_entities("&unknown; & alone"), "&unknown; & alone");
  CHECK_EQ(html::decode_entities("&#x20AC;"), "\xE2\x82\xAC");
}

TEST_CASE("html: strip_tags separates block elements") {
  CHECK_EQ(html::strip_tags("<p>The <b>binary</b> number</p><p>system</p>"),
           "The binary number system");
  CHECK_EQ(html::strip_tags("  <div>\n a \t b </div> "), "a b");
  CHECK_EQ(html::strip_tags(""), "");
  CHECK_EQ(html::strip_tags("x&amp;y"), "x&y");
}

TEST_CASE("html: collapse_whitespace") {
  CHECK_EQ(html::collapse_whitespace("  a \n\t b  "), "a b");
  CHECK_EQ(html::collapse_whitespace(""), "");
}
