#ifndef P4MR_REPORT_HPP
#define P4MR_REPORT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "p4mr/cost.hpp"
#include "p4mr/dataplane.hpp"

namespace p4mr {

// Everything a run measured. Links are keyed by direction as
// "name->name". The canonical JSON form contains no wall-clock data and
// folds the raw departure log into time-bucketed throughput, so equal
// runs serialize byte-identically.
struct JobReport {
  Scenario scenario = Scenario::S2;
  uint64_t seed = 0;
  double jct = 0;        // last result arrival at the collection host
  double done_time = 0;  // last collection signal (job end)
  double trace_window = 1e-3;

  std::map<std::string, uint64_t> results;      // sum label -> value
  std::map<std::string, uint64_t> word_counts;  // word -> count
  uint64_t collisions = 0;

  std::map<std::string, uint64_t> link_bytes;
  // raw per-direction departure log: (transmit end, bits); kept out of
  // the canonical JSON
  std::map<std::string, std::vector<std::pair<double, uint64_t>>> departures;

  std::map<std::string, SwitchCounters> switch_counters;  // switch name
  std::map<std::string, int> port_queue_peak;             // "switch<-link"
  // per-port depth samples at each enqueue/dequeue; out of canonical JSON
  std::map<std::string, std::vector<std::pair<double, int>>> queue_depth;

  uint64_t items_injected = 0;
  uint64_t items_folded = 0;  // host-born items absorbed by reducers
  uint64_t items_dropped = 0;
};

// Per-window mean bits/s on one link direction over [0, done_time].
// Throws InvalidParams for window <= 0, EmptyTrace when the link has no
// recorded departures.
std::vector<double> measure_throughput(const JobReport& report,
                                       const std::string& link, double window);

// Canonical forms: keys sorted, floats printed with %.17g.
std::string report_to_json(const JobReport& report);
std::string report_to_csv(const JobReport& report);  // metric,key,value

}  // namespace p4mr

#endif
