#ifndef P4MR_SWITCH_CONFIG_HPP
#define P4MR_SWITCH_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "p4mr/dag.hpp"
#include "p4mr/placement.hpp"
#include "p4mr/routing.hpp"

namespace p4mr {

// What a label does inside its switch. A MAP label unpacks frames and
// scatters the items (SERIALIZER + PARTITIONER); a SUM label folds them
// into registers (SUM_REDUCER for integer streams, WC_REDUCER for word
// tuples and count tables).
enum class Role { Serializer, Partitioner, SumReducer, WcReducer };

const char* role_name(Role role);

struct LabelConfig {
  int label_index = -1;
  std::string label_name;
  std::vector<Role> roles;
  ValueType value_type = ValueType::U64;
  // what arrives on the in-edges; tells a MAP whether RESULT frames are
  // single values or key/count pairs that must scatter together
  StreamKind input_kind = StreamKind::Integers;
  // collection signals that must arrive before this label is finished:
  // one per in-edge, counted with multiplicity
  int expected_signals = 0;
  // collection signals (and, for sinks, results) this label emits
  int out_edges = 0;
  // where unpacked items go: the distinct consumer labels for a MAP,
  // the label itself for a reducer
  std::vector<int> partition_targets;
  // one entry per out-edge (repeats preserved) — each gets a COLLECT,
  // and for reducers a copy of the result, when the label finishes
  std::vector<int> out_consumers;
  bool sink = false;
};

struct SwitchConfig {
  int switch_id = -1;
  std::vector<LabelConfig> labels;          // ascending by label_index
  std::map<uint8_t, int> routing_entries;   // routing_id -> egress link
};

// One config per switch that hosts a label or carries at least one
// routing entry, ascending by switch id. Pure transit switches get an
// empty label list.
std::vector<SwitchConfig> emit_switch_configs(const PlacementPlan& plan,
                                              const RoutingTables& tables,
                                              const DataflowDag& dag);

std::string switch_configs_to_json(const std::vector<SwitchConfig>& configs);

}  // namespace p4mr

#endif
