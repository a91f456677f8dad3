#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "etext/ingest.hpp"
#include "etext/knowledge_graph.hpp"

namespace etext::testing {

inline std::filesystem::path fixture_path(const std::string& name) {
  return std::filesystem::path(ETEXT_FIXTURE_DIR) / name;
}

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name), std::ios::binary);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline ingest::SourceFile fixture_file(const std::string& name) {
  return {name, read_fixture(name)};
}

inline std::vector<ingest::SourceFile> fixture_corpus() {
  return {fixture_file("chapter1.html"), fixture_file("number_systems.html"),
          fixture_file("exercises.html")};
}

inline NodeRef topic(const char* id) { return NodeRef(Namespace::kTopic, id); }
inline NodeRef dsc(const char* id) { return NodeRef(Namespace::kDescription, id); }
inline NodeRef question(const char* id) { return NodeRef(Namespace::kQuestion, id); }

// The 14 authored triples of the Chapter 1 worked example, as listed.
inline std::vector<Triple> chapter_one_triples() {
  const auto a = Provenance::kAuthored;
  return {
      {topic("Turing_model"), EdgeLabel::kSubClassOf, topic("Chapter_1"), a},
      {topic("Von_Neumann_model"), EdgeLabel::kSubClassOf, topic("Chapter_1"), a},
      {topic("Data_processors"), EdgeLabel::kSubClassOf, topic("Turing_model"), a},
      {topic("Universal_machine"), EdgeLabel::kSubClassOf, topic("Turing_model"), a},
      {topic("Subsystems"), EdgeLabel::kSubClassOf, topic("Von_Neumann_model"), a},
      {dsc("Turing_model"), EdgeLabel::kNextPage, dsc("Data_processors"), a},
      {dsc("Data_processors"), EdgeLabel::kNextPage, dsc("Universalturingmachine"), a},
      {dsc("Universalturingmachine"), EdgeLabel::kNextPage, dsc("VonNeumannmodel"), a},
      {dsc("VonNeumannmodel"), EdgeLabel::kNextPage, dsc("FourSubsystems"), a},
      {dsc("Turing_model"), EdgeLabel::kTypeOf, topic("Turing_model"), a},
      {dsc("Data_processors"), EdgeLabel::kTypeOf, topic("Data_processors"), a},
      {dsc("Universalturingmachine"), EdgeLabel::kTypeOf, topic("Universal_machine"), a},
      {dsc("VonNeumannmodel"), EdgeLabel::kTypeOf, topic("Von_Neumann_model"), a},
      {dsc("FourSubsystems"), EdgeLabel::kTypeOf, topic("Subsystems"), a},
  };
}

inline KnowledgeGraph chapter_one_graph() {
  KnowledgeGraph g;
  for (const auto& t : chapter_one_triples()) g.add_triple(t);
  return g;
}

}  // namespace etext::testing
