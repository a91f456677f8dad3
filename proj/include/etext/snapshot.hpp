#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "etext/knowledge_graph.hpp"

namespace etext {

// Triple snapshot: one "subject\tpredicate\tobject\tprovenance" line per
// triple, lines sorted bytewise, '#' lines are comments.
std::string format_triple_line(const Triple& t);
std::string write_snapshot(const KnowledgeGraph& graph);
void write_snapshot(const KnowledgeGraph& graph, std::ostream& out);
void write_snapshot_file(const KnowledgeGraph& graph,
                         const std::filesystem::path& path);

// Throws ParseError with the 1-based line number as position.
KnowledgeGraph read_snapshot(std::istream& in);
KnowledgeGraph read_snapshot_file(const std::filesystem::path& path);

}  // namespace etext
