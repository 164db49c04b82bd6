#ifndef P4MR_PLACEMENT_HPP
#define P4MR_PLACEMENT_HPP

#include <map>
#include <string>

#include "p4mr/dag.hpp"
#include "p4mr/topology.hpp"

namespace p4mr {

struct PlacementPlan {
  // label index -> node id (host for STORE labels, switch for compute)
  std::map<int, int> assignment;
  // switch id -> number of compute labels assigned
  std::map<int, int> burden;

  int location(int label_index) const { return assignment.at(label_index); }
};

// Greedy minimum-burden placement. STORE labels are pinned to their
// locator's host; compute labels are walked in label-index order (a
// topological order by construction) and each goes to the switch that
// minimizes, lexicographically:
//   (current burden,
//    sum over in-edges of hop distance from the producer's location,
//    switch id)
// Burden is bumped immediately after every assignment.
PlacementPlan place(const DataflowDag& dag, const Topology& topo);

// The lexicographic key, exposed so tests can re-derive the argmin by
// brute force.
struct PlacementKey {
  int burden;
  int hop_sum;
  int switch_id;
  auto operator<=>(const PlacementKey&) const = default;
};

PlacementKey placement_key(const DataflowDag& dag, const Topology& topo,
                           const PlacementPlan& partial, int label_index,
                           int candidate_switch);

// host name part of a "host:path" locator
std::string locator_host(const std::string& locator);
std::string locator_path(const std::string& locator);

std::string placement_to_json(const PlacementPlan& plan);

}  // namespace p4mr

#endif
