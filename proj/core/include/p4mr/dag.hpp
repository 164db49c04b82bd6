#ifndef P4MR_DAG_HPP
#define P4MR_DAG_HPP

#include <vector>

#include "p4mr/ast.hpp"

namespace p4mr {

// One data dependency. A SUM(A, A) contributes two entries with the same
// endpoints (multiplicity is represented by repetition).
struct DagEdge {
  int producer;
  int consumer;
  bool operator==(const DagEdge&) const = default;
};

// What flows out of a node: raw integers, <word,1> tuples, or a keyed
// count table (the output of a word-count reduction).
enum class StreamKind { Integers, WordTuples, CountTable };

struct DataflowDag {
  Ast nodes;
  std::vector<DagEdge> edges;   // in (consumer, input-position) order
  std::vector<int> sinks;       // label indices with no consumer, ascending

  const AstNode& node(int index) const { return nodes.at(index); }

  // multiplicity-counting degree helpers
  int in_degree(int index) const;
  int out_degree(int index) const;

  // in-edges / out-edges of one node, in edge-list order
  std::vector<DagEdge> in_edges(int index) const;
  std::vector<DagEdge> out_edges(int index) const;

  // distinct consumers of a node, ascending by label index
  std::vector<int> consumers(int index) const;

  StreamKind stream_kind(int index) const;

  // true when the store's items are words (its stream reaches a
  // WORD_TUPLE transform); false means decimal integers
  bool store_holds_words(int store_index) const;
};

// Build the dependency DAG from a validated AST. Re-checks acyclicity by
// topological sort even though define-before-use already guarantees it.
DataflowDag build_dag(const Ast& ast);

std::string dag_to_json(const DataflowDag& dag);

}  // namespace p4mr

#endif
