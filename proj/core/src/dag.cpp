#include "p4mr/dag.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace p4mr {

int DataflowDag::in_degree(int index) const {
  int d = 0;
  for (const auto& e : edges)
    if (e.consumer == index) ++d;
  return d;
}

int DataflowDag::out_degree(int index) const {
  int d = 0;
  for (const auto& e : edges)
    if (e.producer == index) ++d;
  return d;
}

std::vector<DagEdge> DataflowDag::in_edges(int index) const {
  std::vector<DagEdge> v;
  for (const auto& e : edges)
    if (e.consumer == index) v.push_back(e);
  return v;
}

std::vector<DagEdge> DataflowDag::out_edges(int index) const {
  std::vector<DagEdge> v;
  for (const auto& e : edges)
    if (e.producer == index) v.push_back(e);
  return v;
}

std::vector<int> DataflowDag::consumers(int index) const {
  std::vector<int> v;
  for (const auto& e : edges)
    if (e.producer == index && std::find(v.begin(), v.end(), e.consumer) == v.end())
      v.push_back(e.consumer);
  std::sort(v.begin(), v.end());
  return v;
}

StreamKind DataflowDag::stream_kind(int index) const {
  const AstNode& n = node(index);
  switch (n.func_type) {
    case FuncType::Store:
      return StreamKind::Integers;  // raw items; word stores are resolved
                                    // through store_holds_words()
    case FuncType::Map: {
      if (n.transform == Transform::WordTuple) return StreamKind::WordTuples;
      int in = -1;
      for (const auto& m : nodes)
        if (m.label_name == n.inputs[0]) in = m.label_index;
      return stream_kind(in);
    }
    case FuncType::Sum: {
      for (const auto& e : in_edges(index)) {
        StreamKind k = stream_kind(e.producer);
        if (k == StreamKind::WordTuples || k == StreamKind::CountTable)
          return StreamKind::CountTable;
      }
      return StreamKind::Integers;
    }
  }
  return StreamKind::Integers;
}

bool DataflowDag::store_holds_words(int store_index) const {
  // follow consumer chains until a transform or reduction decides the kind
  std::queue<int> q;
  q.push(store_index);
  while (!q.empty()) {
    int cur = q.front();
    q.pop();
    for (int c : consumers(cur)) {
      const AstNode& n = node(c);
      if (n.func_type == FuncType::Map) {
        if (n.transform == Transform::WordTuple) return true;
        q.push(c);
      }
      // a SUM consumer means the raw stream is integer-summed: stop there
    }
  }
  return false;
}

DataflowDag build_dag(const Ast& ast) {
  DataflowDag dag;
  dag.nodes = ast;

  std::map<std::string, int> by_name;
  for (const auto& n : ast) by_name[n.label_name] = n.label_index;

  for (const auto& n : ast)
    for (const auto& in : n.inputs)
      dag.edges.push_back({by_name.at(in), n.label_index});

  std::vector<int> out_deg(ast.size(), 0);
  std::vector<int> in_deg(ast.size(), 0);
  for (const auto& e : dag.edges) {
    ++out_deg[e.producer];
    ++in_deg[e.consumer];
  }
  for (const auto& n : ast)
    if (out_deg[n.label_index] == 0) dag.sinks.push_back(n.label_index);

  // Kahn's check; define-before-use makes failure impossible, but the
  // invariant is cheap to keep asserted.
  std::queue<int> ready;
  std::vector<int> deg = in_deg;
  for (size_t i = 0; i < ast.size(); ++i)
    if (deg[i] == 0) ready.push(static_cast<int>(i));
  size_t visited = 0;
  while (!ready.empty()) {
    int u = ready.front();
    ready.pop();
    ++visited;
    for (const auto& e : dag.edges)
      if (e.producer == u && --deg[e.consumer] == 0) ready.push(e.consumer);
  }
  if (visited != ast.size())
    throw std::logic_error("dependency graph has a cycle");

  return dag;
}

std::string dag_to_json(const DataflowDag& dag) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const AstNode& n : dag.nodes) {
    const char* kind = n.func_type == FuncType::Store  ? "store"
                       : n.func_type == FuncType::Map ? "map"
                                                      : "sum";
    nodes.push_back({{"index", n.label_index},
                     {"name", n.label_name},
                     {"func", kind},
                     {"in_degree", dag.in_degree(n.label_index)},
                     {"out_degree", dag.out_degree(n.label_index)}});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const DagEdge& e : dag.edges)
    edges.push_back({{"producer", e.producer}, {"consumer", e.consumer}});
  nlohmann::json doc{
      {"nodes", nodes}, {"edges", edges}, {"sinks", dag.sinks}};
  return doc.dump(2) + "\n";
}

}  // namespace p4mr
