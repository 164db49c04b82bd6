// p4mr command line: compile | run | sweep | model.
//
// Exit codes: 0 success, 1 domain error or failed result check,
// 2 usage / IO error.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "p4mr/ast_json.hpp"
#include "p4mr/compile.hpp"
#include "p4mr/cost.hpp"
#include "p4mr/datasets.hpp"
#include "p4mr/errors.hpp"
#include "p4mr/report.hpp"
#include "p4mr/sim.hpp"
#include "p4mr/sweep.hpp"
#include "p4mr/wire.hpp"

namespace fs = std::filesystem;
using namespace p4mr;

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string utc_now() {
  std::time_t t =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string node_name(const Topology& topo, int id) {
  return topo.is_host(id) ? topo.host(id).name : topo.switch_at(id).name;
}

// ---- run: configuration merging --------------------------------------

struct RunArgs {
  std::string manifest;
  std::string program;
  std::string topology;
  std::string out = "out";
  std::vector<std::string> data;  // key=path
  int scenario = 2;
  uint64_t seed = 0;
  int mtu = 1500;
  double rate = 0;
  double cpu_map = 1e-6;
  double cpu_reduce = 2e-6;
  int wc_slots = 1 << 16;
  uint64_t default_items = 0;
  double trace_window = 1e-3;
  bool no_check = false;
};

std::string rebase(const fs::path& base, const std::string& p) {
  if (p.empty() || fs::path(p).is_absolute()) return p;
  return (base / p).string();
}

// Manifest keys mirror the flag names; relative paths are taken from the
// manifest's directory. Flags given on the command line win.
void apply_manifest(RunArgs& args, const std::string& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrKind::SchemaError,
                "manifest " + path + ": " + e.what());
  }
  if (!doc.is_object())
    throw Error(ErrKind::SchemaError, "manifest " + path + ": not an object");
  fs::path base = fs::path(path).parent_path();
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "program")
        args.program = rebase(base, value.get<std::string>());
      else if (key == "topology")
        args.topology = rebase(base, value.get<std::string>());
      else if (key == "out")
        args.out = rebase(base, value.get<std::string>());
      else if (key == "datasets") {
        for (const auto& [k, v] : value.items())
          args.data.push_back(k + "=" + rebase(base, v.get<std::string>()));
      } else if (key == "scenario")
        args.scenario = value.get<int>();
      else if (key == "seed")
        args.seed = value.get<uint64_t>();
      else if (key == "mtu")
        args.mtu = value.get<int>();
      else if (key == "rate")
        args.rate = value.get<double>();
      else if (key == "cpu_map")
        args.cpu_map = value.get<double>();
      else if (key == "cpu_reduce")
        args.cpu_reduce = value.get<double>();
      else if (key == "wc_slots")
        args.wc_slots = value.get<int>();
      else if (key == "default_items")
        args.default_items = value.get<uint64_t>();
      else if (key == "trace_window")
        args.trace_window = value.get<double>();
      else
        throw Error(ErrKind::SchemaError,
                    "manifest " + path + ": unknown key \"" + key + "\"");
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrKind::SchemaError, "manifest " + path + ": " + e.what());
  }
  if (args.scenario < 1 || args.scenario > 3)
    throw Error(ErrKind::SchemaError,
                "manifest " + path + ": scenario must be 1, 2 or 3");
}

// Bind --data key=path pairs. The key is an exact "host:path" locator or
// a host name; the matched stores decide whether the file is read as
// words or integers.
void bind_datasets(const DataflowDag& dag, const std::vector<std::string>& kv,
                   RunConfig& cfg) {
  for (const std::string& pair : kv) {
    size_t eq = pair.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == pair.size())
      throw Error(ErrKind::InvalidParams,
                  "--data wants key=path, got \"" + pair + "\"");
    std::string key = pair.substr(0, eq);
    std::string path = pair.substr(eq + 1);
    bool words = false;
    int matches = 0;
    for (size_t i = 0; i < dag.nodes.size(); ++i) {
      const AstNode& node = dag.node(static_cast<int>(i));
      if (node.func_type != FuncType::Store) continue;
      if (node.locator != key && locator_host(node.locator) != key) continue;
      ++matches;
      words |= dag.store_holds_words(static_cast<int>(i));
    }
    if (matches == 0)
      throw Error(ErrKind::InvalidParams,
                  "dataset key \"" + key + "\" matches no store");
    cfg.datasets[key] = words ? read_words(path) : read_integers(path);
  }
}

// ---- run: host-side oracle -------------------------------------------

// Reference evaluation of one label's stream, computed on the host with
// exact hash tables (no slot collisions). Reducer outputs are folded to
// a single item / a count table, which is exactly what travels on the
// wire as RESULT frames.
struct OracleValue {
  StreamKind kind = StreamKind::Integers;
  std::vector<uint64_t> items;
  std::map<uint64_t, uint64_t> table;
};

std::vector<uint64_t> resolve_store(const DataflowDag& dag,
                                    const RunConfig& cfg, int label) {
  const AstNode& node = dag.node(label);
  auto exact = cfg.datasets.find(node.locator);
  if (exact != cfg.datasets.end()) return exact->second;
  auto host = cfg.datasets.find(locator_host(node.locator));
  if (host != cfg.datasets.end()) return host->second;
  if (cfg.default_items == 0) return {};
  uint64_t seed = cfg.seed + 0x9E3779B97F4A7C15ull * (label + 1);
  return dag.store_holds_words(label) ? gen_words(cfg.default_items, seed)
                                      : gen_integers(cfg.default_items, seed);
}

const OracleValue& oracle_eval(const DataflowDag& dag, const RunConfig& cfg,
                               int label,
                               std::vector<std::optional<OracleValue>>& memo) {
  if (memo[label]) return *memo[label];
  const AstNode& node = dag.node(label);
  OracleValue v;
  v.kind = dag.stream_kind(label);
  if (node.func_type == FuncType::Store) {
    v.items = resolve_store(dag, cfg, label);
  } else if (node.func_type == FuncType::Map) {
    const OracleValue& in =
        oracle_eval(dag, cfg, dag.in_edges(label)[0].producer, memo);
    v.items = in.items;
    v.table = in.table;
  } else if (v.kind == StreamKind::CountTable) {
    for (const DagEdge& e : dag.in_edges(label)) {
      const OracleValue& in = oracle_eval(dag, cfg, e.producer, memo);
      if (in.kind == StreamKind::CountTable)
        for (const auto& [k, c] : in.table) v.table[k] += c;
      else
        for (uint64_t item : in.items) v.table[item] += 1;
    }
  } else {
    uint64_t acc = 0;
    for (const DagEdge& e : dag.in_edges(label)) {
      const OracleValue& in = oracle_eval(dag, cfg, e.producer, memo);
      for (uint64_t item : in.items) acc += item;
    }
    if (node.value_type == ValueType::U32) acc &= 0xFFFFFFFFull;
    v.items = {acc};
  }
  memo[label] = std::move(v);
  return *memo[label];
}

// Scenario 1 concatenates every store once and reduces the pile, so its
// expectation ignores edge multiplicity and intermediate widths.
void oracle_s1(const DataflowDag& dag, const RunConfig& cfg, int sink,
               uint64_t& scalar, std::map<uint64_t, uint64_t>& table,
               bool& wordcount) {
  wordcount = false;
  for (const DagEdge& e : dag.in_edges(sink))
    wordcount |= dag.stream_kind(e.producer) != StreamKind::Integers;
  scalar = 0;
  for (size_t i = 0; i < dag.nodes.size(); ++i) {
    if (dag.node(static_cast<int>(i)).func_type != FuncType::Store) continue;
    for (uint64_t item : resolve_store(dag, cfg, static_cast<int>(i))) {
      if (wordcount)
        table[item] += 1;
      else
        scalar += item;
    }
  }
  if (dag.node(sink).value_type == ValueType::U32) scalar &= 0xFFFFFFFFull;
}

int check_report(const DataflowDag& dag, const RunConfig& cfg,
                 const JobReport& r) {
  int failures = 0;
  auto verdict = [&](bool ok, const std::string& what) {
    std::cout << "check: " << (ok ? "PASS " : "FAIL ") << what << "\n";
    if (!ok) ++failures;
  };

  std::vector<std::optional<OracleValue>> memo(dag.nodes.size());
  std::map<uint64_t, uint64_t> want_table;
  bool all_sum_sinks = true;
  for (int sink : dag.sinks) {
    const AstNode& node = dag.node(sink);
    if (node.func_type != FuncType::Sum) {
      all_sum_sinks = false;
      continue;
    }
    if (cfg.scenario == Scenario::S1) {
      uint64_t scalar = 0;
      bool wc = false;
      oracle_s1(dag, cfg, sink, scalar, want_table, wc);
      if (!wc) {
        auto it = r.results.find(node.label_name);
        verdict(it != r.results.end() && it->second == scalar,
                node.label_name + " = " + std::to_string(scalar));
      }
      continue;
    }
    const OracleValue& v = oracle_eval(dag, cfg, sink, memo);
    if (v.kind == StreamKind::CountTable) {
      for (const auto& [k, c] : v.table) want_table[k] += c;
    } else {
      auto it = r.results.find(node.label_name);
      verdict(it != r.results.end() && it->second == v.items[0],
              node.label_name + " = " + std::to_string(v.items[0]));
    }
  }

  if (!want_table.empty() || !r.word_counts.empty()) {
    std::map<std::string, uint64_t> want;
    uint64_t want_total = 0;
    for (const auto& [k, c] : want_table) {
      want[item_word(k)] += c;
      want_total += c;
    }
    uint64_t got_total = 0;
    bool bounded = true;
    for (const auto& [word, count] : r.word_counts) {
      got_total += count;
      auto it = want.find(word);
      if (it == want.end() || count > it->second) bounded = false;
    }
    verdict(bounded, "every word count within its reference count");
    verdict(got_total + r.collisions == want_total,
            "word tuples conserved (" + std::to_string(got_total) + " counted + " +
                std::to_string(r.collisions) + " collided = " +
                std::to_string(want_total) + ")");
    if (r.collisions == 0)
      verdict(std::map<std::string, uint64_t>(r.word_counts.begin(),
                                              r.word_counts.end()) == want,
              "collision-free table matches exactly");
  }

  if (all_sum_sinks)
    verdict(r.items_injected == r.items_folded + r.items_dropped,
            "items conserved (" + std::to_string(r.items_injected) +
                " injected = " + std::to_string(r.items_folded) + " folded + " +
                std::to_string(r.items_dropped) + " dropped)");
  return failures;
}

// ---- subcommands ------------------------------------------------------

int cmd_compile(const std::string& program_path,
                const std::string& topology_path, const std::string& out) {
  CompiledJob job =
      compile_job(read_text_file(program_path), read_text_file(topology_path));

  std::cout << "program: " << job.ast.size() << " labels, "
            << job.dag.edges.size() << " edges," << " sinks:";
  for (int s : job.dag.sinks) std::cout << ' ' << job.dag.node(s).label_name;
  std::cout << "\nplacement:\n";
  for (const auto& [label, where] : job.plan.assignment)
    std::cout << "  " << job.dag.node(label).label_name << "\t"
              << func_type_name(job.dag.node(label).func_type) << "\t-> "
              << node_name(job.topo, where) << " (node " << where << ")\n";
  size_t entries = 0;
  for (const auto& [sw, table] : job.tables) entries += table.entries.size();
  std::cout << "routing: " << job.tables.size() << " switch tables, "
            << entries << " entries\n";

  fs::create_directories(out);
  fs::path dir(out);
  write_text_file((dir / "ast.json").string(), ast_to_json(job.ast));
  write_text_file((dir / "dag.json").string(), dag_to_json(job.dag));
  write_text_file((dir / "placement.json").string(),
                  placement_to_json(job.plan));
  write_text_file((dir / "routing.json").string(), routing_to_json(job.tables));
  write_text_file((dir / "switch_configs.json").string(),
                  switch_configs_to_json(job.configs));
  std::cout << "wrote " << out
            << "/{ast,dag,placement,routing,switch_configs}.json\n";
  return 0;
}

int cmd_run(const RunArgs& args) {
  if (args.program.empty() || args.topology.empty())
    throw Error(ErrKind::InvalidParams,
                "need a program and a topology (flags or manifest)");
  auto t0 = std::chrono::steady_clock::now();

  CompiledJob job =
      compile_job(read_text_file(args.program), read_text_file(args.topology));

  RunConfig cfg;
  cfg.scenario = static_cast<Scenario>(args.scenario);
  cfg.mtu = args.mtu;
  cfg.send_rate = args.rate;
  cfg.cpu_map = args.cpu_map;
  cfg.cpu_reduce = args.cpu_reduce;
  cfg.wc_slots = args.wc_slots;
  cfg.seed = args.seed;
  cfg.trace_window = args.trace_window;
  cfg.default_items = args.default_items;
  bind_datasets(job.dag, args.data, cfg);

  JobReport report =
      run_job(job.dag, job.topo, job.plan, job.tables, job.configs, cfg);
  double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  std::cout << "scenario " << scenario_name(cfg.scenario) << ", seed "
            << cfg.seed << "\n";
  std::cout << "jct " << fmt(report.jct) << " s, job done " << fmt(report.done_time)
            << " s\n";
  for (const auto& [name, value] : report.results)
    std::cout << "result " << name << " = " << value << "\n";
  if (!report.word_counts.empty() || report.collisions > 0)
    std::cout << "word counts: " << report.word_counts.size()
              << " distinct words, " << report.collisions << " collisions\n";
  std::cout << "items: " << report.items_injected << " injected, "
            << report.items_folded << " folded, " << report.items_dropped
            << " dropped\n";

  fs::create_directories(args.out);
  fs::path dir(args.out);
  write_text_file((dir / "report.json").string(), report_to_json(report));
  write_text_file((dir / "report.csv").string(), report_to_csv(report));
  // wall-clock facts stay out of report.json so identical runs stay
  // byte-identical
  nlohmann::json meta{{"finished_at", utc_now()},
                      {"wall_seconds", elapsed},
                      {"program", args.program},
                      {"topology", args.topology}};
  write_text_file((dir / "report.meta.json").string(), meta.dump(2) + "\n");
  std::cout << "wrote " << args.out
            << "/{report.json,report.csv,report.meta.json}\n";

  if (args.no_check) return 0;
  return check_report(job.dag, cfg, report) == 0 ? 0 : 1;
}

int cmd_sweep(const SweepConfig& cfg, const std::string& out) {
  std::vector<SweepRow> rows = run_sweep(cfg);
  std::string csv = sweep_to_csv(rows);
  if (out.empty()) {
    std::cout << csv;
  } else {
    write_text_file(out, csv);
    std::cout << "wrote " << rows.size() << " rows to " << out << "\n";
  }
  return 0;
}

int cmd_model(const CostParams& base, bool sweep, const std::vector<int>& ns,
              const std::vector<double>& item_counts) {
  if (sweep) {
    std::cout << model_sweep_csv(base, ns, item_counts);
    return 0;
  }
  double ce = equilibrium_rate(base.capacity_bps);
  double pen = throughput_penalty(base.capacity_bps);
  std::cout << "C           = " << fmt(base.capacity_bps) << " bit/s\n";
  std::cout << "C/e         = " << fmt(ce) << " bit/s\n";
  std::cout << "penalty     = " << fmt(pen) << " bit/s\n";
  std::cout << "C/e+penalty = " << fmt(ce + pen) << " bit/s\n";
  double j1 = jct(base, Scenario::S1);
  double j2 = jct(base, Scenario::S2);
  double j3 = jct(base, Scenario::S3);
  std::cout << "jct S1      = " << fmt(j1) << " s  (n=" << base.n
            << ", K=" << fmt(base.items) << ")\n";
  std::cout << "jct S2      = " << fmt(j2) << " s, speedup "
            << fmt(speedup(j1, j2)) << "\n";
  std::cout << "jct S3      = " << fmt(j3) << " s, speedup "
            << fmt(speedup(j1, j3)) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "dataflow programs compiled onto programmable switches, plus the\n"
      "network simulator and analytic model that measure them"};
  app.require_subcommand(1);
  int rc = 0;

  // compile
  std::string c_program, c_topology, c_out = ".";
  CLI::App* compile = app.add_subcommand(
      "compile", "parse a program, place and route it, write the artifacts");
  compile->add_option("--program", c_program, "dataflow source file")
      ->required();
  compile->add_option("--topology", c_topology, "topology JSON file")
      ->required();
  compile->add_option("--out", c_out, "artifact directory")
      ->capture_default_str();
  compile->callback([&] { rc = cmd_compile(c_program, c_topology, c_out); });

  // run
  RunArgs r;
  CLI::App* run = app.add_subcommand(
      "run", "simulate one job and check the results against a host oracle");
  run->add_option("--manifest", r.manifest, "JSON run description");
  CLI::Option* o_program = run->add_option("--program", r.program, "dataflow source file");
  CLI::Option* o_topology = run->add_option("--topology", r.topology, "topology JSON file");
  CLI::Option* o_out = run->add_option("--out", r.out, "report directory")->capture_default_str();
  CLI::Option* o_data = run->add_option(
      "--data", r.data, "bind a store: <locator|host>=<file> (repeatable)");
  CLI::Option* o_scenario =
      run->add_option("--scenario", r.scenario, "1 host baseline, 2 switch reduce, 3 packed at C/e")->capture_default_str()
          ->check(CLI::Range(1, 3));
  CLI::Option* o_seed = run->add_option("--seed", r.seed, "synthetic data seed")->capture_default_str();
  CLI::Option* o_mtu = run->add_option("--mtu", r.mtu, "frame size limit, bytes")->capture_default_str();
  CLI::Option* o_rate = run->add_option("--rate", r.rate, "host send rate, bit/s (0 = scenario default)")->capture_default_str();
  CLI::Option* o_cpu_map = run->add_option("--cpu-map", r.cpu_map, "host map cost, s/item")->capture_default_str();
  CLI::Option* o_cpu_reduce = run->add_option("--cpu-reduce", r.cpu_reduce, "host reduce cost, s/item")->capture_default_str();
  CLI::Option* o_wc_slots = run->add_option("--wc-slots", r.wc_slots, "word-count register slots")->capture_default_str();
  CLI::Option* o_default_items =
      run->add_option("--default-items", r.default_items,
                      "synthetic items per unbound store")->capture_default_str();
  CLI::Option* o_trace_window =
      run->add_option("--trace-window", r.trace_window, "throughput bucket, s")->capture_default_str();
  run->add_flag("--no-check", r.no_check, "skip the oracle comparison");
  run->callback([&] {
    if (!r.manifest.empty()) {
      RunArgs merged;
      merged.no_check = r.no_check;
      apply_manifest(merged, r.manifest);
      if (o_program->count()) merged.program = r.program;
      if (o_topology->count()) merged.topology = r.topology;
      if (o_out->count()) merged.out = r.out;
      if (o_data->count())
        merged.data.insert(merged.data.end(), r.data.begin(), r.data.end());
      if (o_scenario->count()) merged.scenario = r.scenario;
      if (o_seed->count()) merged.seed = r.seed;
      if (o_mtu->count()) merged.mtu = r.mtu;
      if (o_rate->count()) merged.rate = r.rate;
      if (o_cpu_map->count()) merged.cpu_map = r.cpu_map;
      if (o_cpu_reduce->count()) merged.cpu_reduce = r.cpu_reduce;
      if (o_wc_slots->count()) merged.wc_slots = r.wc_slots;
      if (o_default_items->count()) merged.default_items = r.default_items;
      if (o_trace_window->count()) merged.trace_window = r.trace_window;
      rc = cmd_run(merged);
    } else {
      rc = cmd_run(r);
    }
  });

  // sweep
  SweepConfig s;
  std::vector<int> s_scenarios{1, 2, 3};
  std::string s_out;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "simulate and model a scenario/server/size grid, emit CSV");
  sweep->add_option("--scenarios", s_scenarios, "subset of {1,2,3}")->capture_default_str()
      ->check(CLI::Range(1, 3));
  sweep->add_option("--servers", s.server_counts, "server counts")->capture_default_str();
  sweep->add_option("--items", s.item_counts, "total items K per job")->capture_default_str();
  sweep->add_option("--capacity", s.link_capacity, "link capacity, bit/s")->capture_default_str();
  sweep->add_option("--switch-capacity", s.switch_capacity,
                    "switch pipeline capacity, bit/s")->capture_default_str();
  sweep->add_option("--delay", s.link_delay, "link propagation delay, s")->capture_default_str();
  sweep->add_option("--mtu", s.mtu, "frame size limit, bytes")->capture_default_str();
  sweep->add_option("--cpu-map", s.cpu_map, "host map cost, s/item")->capture_default_str();
  sweep->add_option("--cpu-reduce", s.cpu_reduce, "host reduce cost, s/item")->capture_default_str();
  sweep->add_option("--wc-slots", s.wc_slots, "word-count register slots")->capture_default_str();
  sweep->add_option("--seed", s.seed, "synthetic data seed")->capture_default_str();
  sweep->add_option("--out", s_out, "CSV file (default stdout)");
  sweep->callback([&] {
    s.scenarios.clear();
    for (int v : s_scenarios) s.scenarios.push_back(static_cast<Scenario>(v));
    rc = cmd_sweep(s, s_out);
  });

  // model
  CostParams m;
  bool m_sweep = false;
  std::vector<int> m_ns{3, 6, 12, 24};
  std::vector<double> m_items{96000};
  CLI::App* model = app.add_subcommand(
      "model", "closed-form rates and job times, no simulation");
  model->add_option("--capacity", m.capacity_bps, "link capacity C, bit/s")->capture_default_str();
  model->add_option("--n", m.n, "participating servers")->capture_default_str();
  model->add_option("--items", m.items, "total items K")->capture_default_str();
  model->add_option("--mtu", m.mtu, "frame size limit, bytes")->capture_default_str();
  model->add_option("--cpu-map", m.cpu_map, "host map cost, s/item")->capture_default_str();
  model->add_option("--cpu-reduce", m.cpu_reduce, "host reduce cost, s/item")->capture_default_str();
  model->add_flag("--sweep", m_sweep, "emit the CSV grid instead");
  model->add_option("--sweep-servers", m_ns, "server counts for --sweep")->capture_default_str();
  model->add_option("--sweep-items", m_items, "item counts for --sweep")->capture_default_str();
  model->callback([&] { rc = cmd_model(m, m_sweep, m_ns, m_items); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrKind::IoError ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
