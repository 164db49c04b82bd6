#include "p4mr/sweep.hpp"

#include <map>
#include <set>
#include <sstream>

#include "p4mr/compile.hpp"
#include "p4mr/errors.hpp"
#include "p4mr/sim.hpp"

namespace p4mr {

Topology make_star_topology(int n, double link_capacity,
                            double switch_capacity, double delay_s) {
  if (n < 1 || n > 99)
    throw Error(ErrKind::InvalidParams,
                "star size out of range: " + std::to_string(n));
  Topology topo;
  int sw = 100;
  topo.switches.push_back({sw, "sw", switch_capacity});
  for (int i = 1; i <= n; ++i) {
    topo.hosts.push_back({i, "h" + std::to_string(i), sw});
    topo.links.push_back({i, sw, link_capacity, delay_s});
  }
  topo.collection_host = n;
  topo.finalize();
  return topo;
}

std::string make_chain_program(int n) {
  if (n < 2)
    throw Error(ErrKind::InvalidParams, "chain needs at least two servers");
  std::ostringstream out;
  for (int i = 1; i <= n; ++i)
    out << 'W' << i << " := store<uint_64>(\"h" << i << ":part\");\n";
  out << "A1 := SUM(W1, W2);\n";
  for (int i = 2; i < n; ++i)
    out << 'A' << i << " := SUM(A" << i - 1 << ", W" << i + 1 << ");\n";
  return out.str();
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  std::vector<SweepRow> rows;
  for (Scenario scenario : config.scenarios)
    for (int n : config.server_counts)
      for (double items : config.item_counts)
        rows.push_back({scenario, n, items, config.link_capacity, 0, 0, 0, 0});

  // simulate each configuration once, S1 always (the baseline)
  std::map<std::pair<int, double>, std::map<Scenario, double>> sim_jct;
  for (int n : config.server_counts)
    for (double items : config.item_counts) {
      std::set<Scenario> wanted{Scenario::S1};
      wanted.insert(config.scenarios.begin(), config.scenarios.end());
      CompiledJob job = compile_job(
          make_chain_program(n),
          make_star_topology(n, config.link_capacity, config.switch_capacity,
                             config.link_delay));
      for (Scenario scenario : wanted) {
        RunConfig rc;
        rc.scenario = scenario;
        rc.mtu = config.mtu;
        rc.cpu_map = config.cpu_map;
        rc.cpu_reduce = config.cpu_reduce;
        rc.wc_slots = config.wc_slots;
        rc.seed = config.seed;
        rc.default_items = static_cast<size_t>(items) / n;
        JobReport report =
            run_job(job.dag, job.topo, job.plan, job.tables, job.configs, rc);
        sim_jct[{n, items}][scenario] = report.jct;
      }
    }

  for (SweepRow& row : rows) {
    CostParams p;
    p.capacity_bps = config.link_capacity;
    p.n = row.n;
    p.items = static_cast<double>(static_cast<size_t>(row.items) / row.n) * row.n;
    p.mtu = config.mtu;
    p.cpu_map = config.cpu_map;
    p.cpu_reduce = config.cpu_reduce;
    const auto& at = sim_jct.at({row.n, row.items});
    row.jct_sim = at.at(row.scenario);
    row.jct_model = jct(p, row.scenario);
    row.speedup_sim = speedup(at.at(Scenario::S1), row.jct_sim);
    row.speedup_model = speedup(jct(p, Scenario::S1), row.jct_model);
  }
  return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "scenario,n,K,C,jct_sim,jct_model,speedup_sim_vs_s1,"
         "speedup_model_vs_s1\n";
  out.precision(17);
  for (const SweepRow& row : rows)
    out << scenario_name(row.scenario) << ',' << row.n << ',' << row.items
        << ',' << row.capacity << ',' << row.jct_sim << ',' << row.jct_model
        << ',' << row.speedup_sim << ',' << row.speedup_model << '\n';
  return out.str();
}

}  // namespace p4mr
