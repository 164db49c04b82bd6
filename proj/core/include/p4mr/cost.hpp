#ifndef P4MR_COST_HPP
#define P4MR_COST_HPP

#include <string>
#include <vector>

namespace p4mr {

enum class Scenario { S1 = 1, S2 = 2, S3 = 3 };

const char* scenario_name(Scenario s);

// Inputs to the closed-form job-time calculators. Items are 8 bytes on
// the wire under a 19-byte header; q = items/n is the per-server share.
struct CostParams {
  double capacity_bps = 1e9;  // C: link and switch port capacity
  int n = 3;                  // participating servers
  double items = 1e7;         // K: total data items across all servers
  int item_bytes = 8;         // s
  int header_bytes = 19;      // h
  int mtu = 1500;             // M
  double cpu_map = 1e-6;      // c_m: host-side map seconds per item
  double cpu_reduce = 2e-6;   // c_r: host-side reduce seconds per item
};

// Sustainable ingress rate C/e for a port that serializes by
// recirculation, and the complementary loss C(1 - 1/e). Both throw
// NonPositiveCapacity for C <= 0; they sum to C exactly.
double equilibrium_rate(double capacity_bps);
double throughput_penalty(double capacity_bps);

// Closed-form job completion time, stages added in sequence:
//   S1: q*c_m + q*(s+h)*8/C + q*c_r     (host map, shuffle, host reduce)
//   S2: q*c_m + q*(s+h)*8/C             (host map, switches reduce)
//   S3: (ceil(q/k_max)*h + q*s)*8/(C/e) (packed transfer at C/e,
//                                        k_max = floor((M-h)/s))
// Throws InvalidParams on nonsense inputs.
double jct(const CostParams& params, Scenario scenario);

// j1/j; throws ZeroDenominator.
double speedup(double j1, double j);

// One row per (scenario, n, K): scenario,n,K,C,jct,speedup_vs_S1.
std::string model_sweep_csv(const CostParams& base, const std::vector<int>& ns,
                            const std::vector<double>& item_counts);

}  // namespace p4mr

#endif
