#include "etext/snapshot.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <vector>

#include "etext/error.hpp"

namespace etext {

std::string format_triple_line(const Triple& t) {
  std::string line;
  line.append(t.subject.str()).push_back('\t');
  line.append(label_name(t.predicate)).push_back('\t');
  line.append(t.object.str()).push_back('\t');
  line.append(provenance_name(t.provenance));
  return line;
}

void write_snapshot(const KnowledgeGraph& graph, std::ostream& out) {
  std::vector<std::string> lines;
  lines.reserve(graph.triple_count());
  for (const auto& t : graph.triples()) lines.push_back(format_triple_line(t));
  std::sort(lines.begin(), lines.end());
  for (const auto& line : lines) out << line << '\n';
}

std::string write_snapshot(const KnowledgeGraph& graph) {
  std::ostringstream out;
  write_snapshot(graph, out);
  return out.str();
}

void write_snapshot_file(const KnowledgeGraph& graph,
                         const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open snapshot for writing: " + path.string());
  write_snapshot(graph, out);
  if (!out) throw Error("failed writing snapshot: " + path.string());
}

KnowledgeGraph read_snapshot(std::istream& in) {
  KnowledgeGraph graph;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    while (true) {
      auto tab = rest.find('\t');
      fields.push_back(rest.substr(0, tab));
      if (tab == std::string_view::npos) break;
      rest.remove_prefix(tab + 1);
    }
    auto fail = [&](const std::string& what) {
      throw ParseError("snapshot line " + std::to_string(line_no) + ": " + what,
                       line_no);
    };
    if (fields.size() != 4) fail("expected 4 tab-separated fields");
    auto label = parse_edge_label(fields[1]);
    if (!label) fail("unknown predicate '" + std::string(fields[1]) + "'");
    auto prov = parse_provenance(fields[3]);
    if (!prov) fail("unknown provenance '" + std::string(fields[3]) + "'");
    try {
      graph.add_triple(NodeRef::parse(fields[0]), *label, NodeRef::parse(fields[2]),
                       *prov);
    } catch (const Error& e) {
      fail(e.what());
    }
  }
  return graph;
}

KnowledgeGraph read_snapshot_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open snapshot: " + path.string());
  return read_snapshot(in);
}

}  // namespace etext
