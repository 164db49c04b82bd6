#ifndef P4MR_SIM_HPP
#define P4MR_SIM_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "p4mr/cost.hpp"
#include "p4mr/dag.hpp"
#include "p4mr/placement.hpp"
#include "p4mr/report.hpp"
#include "p4mr/routing.hpp"
#include "p4mr/switch_config.hpp"
#include "p4mr/topology.hpp"

namespace p4mr {

// Per-run knobs. Datasets are looked up by exact locator ("h1:ints_a")
// first, then by host name; stores with neither binding get
// `default_items` synthetic values derived from the seed.
struct RunConfig {
  Scenario scenario = Scenario::S2;
  std::map<std::string, std::vector<uint64_t>> datasets;
  int mtu = 1500;
  double send_rate = 0;  // bits/s; 0 = scenario default (line rate or C/e)
  double cpu_map = 1e-6;
  double cpu_reduce = 2e-6;
  int wc_slots = 1 << 16;
  uint64_t seed = 0;
  double trace_window = 1e-3;
  size_t default_items = 0;
};

// Run one job to completion and measure it.
//
// Scenario 1 is the host-only baseline: hosts map (a per-item CPU
// charge), shuffle UNIT frames to peer hosts picked by the partition
// hash, reduce after every peer's collection signal, and send their
// partials to the collection host; switches just forward. Scenario 2
// keeps the host map but reduces on switches. Scenario 3 ships PACKED
// frames at the C/e equilibrium rate and serializes on switches.
//
// Throws StallDetected (with the blocked labels) if events run dry
// before the collection host has every signal.
JobReport run_job(const DataflowDag& dag, const Topology& topo,
                  const PlacementPlan& plan, const RoutingTables& tables,
                  const std::vector<SwitchConfig>& configs,
                  const RunConfig& config);

}  // namespace p4mr

#endif
