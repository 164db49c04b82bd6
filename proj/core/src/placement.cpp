#include "p4mr/placement.hpp"

#include <nlohmann/json.hpp>

#include "p4mr/errors.hpp"

namespace p4mr {

std::string locator_host(const std::string& locator) {
  auto pos = locator.find(':');
  return pos == std::string::npos ? locator : locator.substr(0, pos);
}

std::string locator_path(const std::string& locator) {
  auto pos = locator.find(':');
  return pos == std::string::npos ? std::string() : locator.substr(pos + 1);
}

PlacementKey placement_key(const DataflowDag& dag, const Topology& topo,
                           const PlacementPlan& partial, int label_index,
                           int candidate_switch) {
  PlacementKey key;
  auto it = partial.burden.find(candidate_switch);
  key.burden = it == partial.burden.end() ? 0 : it->second;
  key.hop_sum = 0;
  for (const DagEdge& e : dag.in_edges(label_index))
    key.hop_sum += topo.hop_distance(partial.location(e.producer),
                                     candidate_switch);
  key.switch_id = candidate_switch;
  return key;
}

PlacementPlan place(const DataflowDag& dag, const Topology& topo) {
  PlacementPlan plan;
  for (const Switch& s : topo.switches) plan.burden[s.id] = 0;

  for (const AstNode& n : dag.nodes) {
    if (n.func_type == FuncType::Store) {
      const Host* h = topo.find_host_by_name(locator_host(n.locator));
      if (!h) throw Error(ErrKind::UnknownHost, n.locator);
      plan.assignment[n.label_index] = h->id;
      continue;
    }
    PlacementKey best{};
    int chosen = -1;
    for (const Switch& s : topo.switches) {
      PlacementKey key = placement_key(dag, topo, plan, n.label_index, s.id);
      if (chosen < 0 || key < best) {
        best = key;
        chosen = s.id;
      }
    }
    plan.assignment[n.label_index] = chosen;
    ++plan.burden[chosen];
  }
  return plan;
}

std::string placement_to_json(const PlacementPlan& plan) {
  nlohmann::json doc;
  doc["assignment"] = nlohmann::json::object();
  for (const auto& [label, loc] : plan.assignment)
    doc["assignment"][std::to_string(label)] = loc;
  doc["burden"] = nlohmann::json::object();
  for (const auto& [sw, b] : plan.burden)
    doc["burden"][std::to_string(sw)] = b;
  return doc.dump(2) + "\n";
}

}  // namespace p4mr
