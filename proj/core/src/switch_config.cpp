#include "p4mr/switch_config.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

namespace p4mr {

const char* role_name(Role role) {
  switch (role) {
    case Role::Serializer: return "SERIALIZER";
    case Role::Partitioner: return "PARTITIONER";
    case Role::SumReducer: return "SUM_REDUCER";
    case Role::WcReducer: return "WC_REDUCER";
  }
  return "?";
}

namespace {

std::vector<Role> roles_of(const DataflowDag& dag, int label) {
  const AstNode& n = dag.node(label);
  if (n.func_type == FuncType::Map)
    return {Role::Serializer, Role::Partitioner};
  // SUM: the reducer flavour follows the incoming stream
  for (const DagEdge& e : dag.in_edges(label))
    if (dag.stream_kind(e.producer) != StreamKind::Integers)
      return {Role::WcReducer};
  return {Role::SumReducer};
}

StreamKind input_kind_of(const DataflowDag& dag, int label) {
  StreamKind kind = StreamKind::Integers;
  for (const DagEdge& e : dag.in_edges(label)) {
    StreamKind k = dag.stream_kind(e.producer);
    if (k == StreamKind::WordTuples) return k;
    if (k == StreamKind::CountTable) kind = k;
  }
  return kind;
}

const char* stream_kind_name(StreamKind k) {
  switch (k) {
    case StreamKind::Integers: return "integers";
    case StreamKind::WordTuples: return "word_tuples";
    case StreamKind::CountTable: return "count_table";
  }
  return "?";
}

}  // namespace

std::vector<SwitchConfig> emit_switch_configs(const PlacementPlan& plan,
                                              const RoutingTables& tables,
                                              const DataflowDag& dag) {
  std::map<int, SwitchConfig> by_switch;
  auto config_for = [&](int sw) -> SwitchConfig& {
    SwitchConfig& c = by_switch[sw];
    c.switch_id = sw;
    return c;
  };

  for (const auto& [label, sw] : plan.assignment) {
    const AstNode& n = dag.node(label);
    if (n.func_type == FuncType::Store) continue;  // hosts, not switches
    LabelConfig lc;
    lc.label_index = label;
    lc.label_name = n.label_name;
    lc.roles = roles_of(dag, label);
    lc.value_type = n.value_type;
    lc.input_kind = input_kind_of(dag, label);
    lc.expected_signals = dag.in_degree(label);
    lc.out_edges = dag.out_degree(label);
    if (n.func_type == FuncType::Map)
      lc.partition_targets = dag.consumers(label);
    else
      lc.partition_targets = {label};
    for (const DagEdge& e : dag.out_edges(label))
      lc.out_consumers.push_back(e.consumer);
    lc.sink = dag.out_degree(label) == 0;
    config_for(sw).labels.push_back(lc);
  }
  for (const auto& [sw, table] : tables)
    config_for(sw).routing_entries = table.entries;

  std::vector<SwitchConfig> out;
  out.reserve(by_switch.size());
  for (auto& [sw, config] : by_switch) {
    std::sort(config.labels.begin(), config.labels.end(),
              [](const LabelConfig& a, const LabelConfig& b) {
                return a.label_index < b.label_index;
              });
    out.push_back(std::move(config));
  }
  return out;
}

std::string switch_configs_to_json(const std::vector<SwitchConfig>& configs) {
  nlohmann::json arr = nlohmann::json::array();
  for (const SwitchConfig& c : configs) {
    nlohmann::json labels = nlohmann::json::array();
    for (const LabelConfig& lc : c.labels) {
      nlohmann::json roles = nlohmann::json::array();
      for (Role r : lc.roles) roles.push_back(role_name(r));
      labels.push_back({{"label_index", lc.label_index},
                        {"label_name", lc.label_name},
                        {"roles", roles},
                        {"value_type",
                         lc.value_type == ValueType::U64 ? "uint_64" : "uint_32"},
                        {"input_kind", stream_kind_name(lc.input_kind)},
                        {"expected_signals", lc.expected_signals},
                        {"out_edges", lc.out_edges},
                        {"partition_targets", lc.partition_targets},
                        {"out_consumers", lc.out_consumers},
                        {"sink", lc.sink}});
    }
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [rid, link] : c.routing_entries)
      entries.push_back({{"routing_id", rid}, {"link", link}});
    arr.push_back({{"switch", c.switch_id},
                   {"labels", labels},
                   {"routing_entries", entries}});
  }
  return arr.dump(2) + "\n";
}

}  // namespace p4mr
