#include "p4mr/routing.hpp"

#include <nlohmann/json.hpp>

#include "p4mr/errors.hpp"

namespace p4mr {

namespace {

// install entries for `routing_id` on every switch from `src` (host or
// switch) up to, but excluding, the terminal node
void install_chain(RoutingTables& tables, const Topology& topo, int src,
                   int terminal, uint8_t routing_id) {
  int cur = src;
  while (cur != terminal) {
    auto [next, link] = topo.next_hop(cur, terminal);
    if (topo.is_switch(cur)) tables[cur].entries[routing_id] = link;
    cur = next;
  }
}

}  // namespace

RoutingTables route(const PlacementPlan& plan, const DataflowDag& dag,
                    const Topology& topo) {
  if (dag.nodes.size() > kMaxLabels)
    throw Error(ErrKind::RoutingIdOverflow,
                std::to_string(dag.nodes.size()) +
                    " labels exceed the 8-bit routing id space");

  RoutingTables tables;
  for (const DagEdge& e : dag.edges)
    install_chain(tables, topo, plan.location(e.producer),
                  plan.location(e.consumer),
                  static_cast<uint8_t>(e.consumer));
  for (int sink : dag.sinks)
    install_chain(tables, topo, plan.location(sink), topo.collection_host,
                  kCollectionRoutingId);
  return tables;
}

int walk_route(const RoutingTables& tables, const Topology& topo, int from,
               uint8_t routing_id, int expect_node) {
  int cur = from;
  int hops = 0;
  int limit = topo.diameter();
  while (cur != expect_node) {
    if (hops >= limit + 1)
      throw Error(ErrKind::StallDetected,
                  "routing walk for id " + std::to_string(routing_id) +
                      " loops at node " + std::to_string(cur));
    if (topo.is_host(cur)) {
      cur = topo.host(cur).attached_switch;
      ++hops;
      continue;
    }
    auto it = tables.find(cur);
    if (it == tables.end() || !it->second.entries.count(routing_id))
      throw Error(ErrKind::StallDetected,
                  "no routing entry for id " + std::to_string(routing_id) +
                      " at switch " + std::to_string(cur));
    cur = topo.other_end(it->second.entries.at(routing_id), cur);
    ++hops;
  }
  return hops;
}

std::string routing_to_json(const RoutingTables& tables) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [sw, table] : tables) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [rid, link] : table.entries)
      entries.push_back({{"routing_id", rid}, {"link", link}});
    arr.push_back({{"switch", sw}, {"entries", entries}});
  }
  return arr.dump(2) + "\n";
}

}  // namespace p4mr
