#ifndef P4MR_ROUTING_HPP
#define P4MR_ROUTING_HPP

#include <cstdint>
#include <map>
#include <string>

#include "p4mr/placement.hpp"

namespace p4mr {

// routing_id 255 addresses the results collection host
inline constexpr uint8_t kCollectionRoutingId = 255;
// label indices must stay below this so every consumer fits in 8 bits
inline constexpr int kMaxLabels = 254;

// Per-switch match table: routing_id -> egress link index. A missing
// entry means drop (the default action).
struct RoutingTable {
  std::map<uint8_t, int> entries;
};

// switch id -> table
using RoutingTables = std::map<int, RoutingTable>;

// Install shortest-path chains for every DAG edge (producer location ->
// consumer switch, keyed by the consumer's label index) and from every
// sink toward the collection host (keyed by kCollectionRoutingId; sinks
// are the only frame sources addressing it). Equal-length path ties
// resolve to the smallest next-hop id at each step, so entries for one
// destination never conflict across edges.
RoutingTables route(const PlacementPlan& plan, const DataflowDag& dag,
                    const Topology& topo);

// Follow tables from `from` (host or switch id) using `routing_id` until
// the frame would be consumed: at `expect_switch` for label ids, at the
// collection host for kCollectionRoutingId. Returns hop count; throws
// Error(StallDetected) on a missing entry or a walk longer than the
// topology diameter (a loop).
int walk_route(const RoutingTables& tables, const Topology& topo, int from,
               uint8_t routing_id, int expect_node);

std::string routing_to_json(const RoutingTables& tables);

}  // namespace p4mr

#endif
