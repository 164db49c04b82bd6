#ifndef P4MR_SWEEP_HPP
#define P4MR_SWEEP_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "p4mr/cost.hpp"
#include "p4mr/topology.hpp"

namespace p4mr {

// One point per (scenario, server count, dataset size) on a synthetic
// star network: n hosts on one switch, each holding an equal slice of K
// items, reduced by a chain of binary SUMs. Scenario 1 always runs as
// the speed-up baseline.
struct SweepConfig {
  std::vector<Scenario> scenarios{Scenario::S1, Scenario::S2, Scenario::S3};
  std::vector<int> server_counts{3, 6, 12, 24};
  std::vector<double> item_counts{96000};
  double link_capacity = 1e9;
  // fast pipelines keep switch service out of the host-time comparison
  double switch_capacity = 1e12;
  // propagation constants scale with hops, not with n, which is what
  // bends the speed-up curves apart as q = K/n shrinks
  double link_delay = 2e-3;
  int mtu = 1500;
  double cpu_map = 1e-6;
  double cpu_reduce = 2e-6;
  int wc_slots = 1 << 16;
  uint64_t seed = 1;
};

struct SweepRow {
  Scenario scenario = Scenario::S1;
  int n = 0;
  double items = 0;
  double capacity = 0;
  double jct_sim = 0;
  double jct_model = 0;
  double speedup_sim = 0;    // vs simulated S1
  double speedup_model = 0;  // vs analytic S1
};

// hosts h1..hn (ids 1..n) on one switch "sw"; hn collects results
Topology make_star_topology(int n, double link_capacity,
                            double switch_capacity, double delay_s);

// W1..Wn stores feeding a left-deep chain A1 := SUM(W1,W2),
// A2 := SUM(A1,W3), ...
std::string make_chain_program(int n);

std::vector<SweepRow> run_sweep(const SweepConfig& config);

// scenario,n,K,C,jct_sim,jct_model,speedup_sim_vs_s1,speedup_model_vs_s1
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

}  // namespace p4mr

#endif
