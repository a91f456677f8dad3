#pragma once

#include <cstddef>

#include "etext/knowledge_graph.hpp"

// Forward chaining over the three rules the ontology needs:
//   subclass transitivity   A subClassOf B, B subClassOf C => A subClassOf C
//   type propagation        d typeOf B, B subClassOf C     => d typeOf C
//   inverse materialization s p o                          => o inverse(p) s
// Reflexive subClassOf/typeOf facts are never produced. All derived triples
// carry Provenance::kInferred. Each function mutates the graph in place and
// returns the number of triples added.
namespace etext::reasoner {

// Throws CycleError when the subClassOf relation is cyclic.
std::size_t subclass_closure(KnowledgeGraph& g);
std::size_t type_propagation(KnowledgeGraph& g);
std::size_t materialize_inverses(KnowledgeGraph& g);

// Least fixpoint of all three rules. Throws CycleError.
std::size_t saturate(KnowledgeGraph& g);

}  // namespace etext::reasoner
