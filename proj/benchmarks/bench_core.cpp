#include <benchmark/benchmark.h>

#include <cstdint>
#include <numeric>
#include <vector>

#include "p4mr/compile.hpp"
#include "p4mr/dataplane.hpp"
#include "p4mr/parser.hpp"
#include "p4mr/sim.hpp"
#include "p4mr/sweep.hpp"
#include "p4mr/wire.hpp"

namespace {

using namespace p4mr;

const char* kListing =
    "A := store<uint_64>(\"h1:a\");"
    "B := store<uint_64>(\"h2:b\");"
    "C := store<uint_64>(\"h3:c\");"
    "D := SUM(A, B);"
    "E := SUM(D, C);";

void BM_EncodeHeader(benchmark::State& state) {
  uint64_t x = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(encode_header({kAppUnit, 7, 0, x++}));
}
BENCHMARK(BM_EncodeHeader);

void BM_DecodeHeader(benchmark::State& state) {
  Frame f = encode_header({kAppPacked, 3, 9, 0xDEADBEEFCAFEull});
  for (auto _ : state) benchmark::DoNotOptimize(decode_header(f));
}
BENCHMARK(BM_DecodeHeader);

void BM_HashItem(benchmark::State& state) {
  uint64_t x = 0;
  for (auto _ : state) benchmark::DoNotOptimize(hash_item(x++));
}
BENCHMARK(BM_HashItem);

void BM_ParseListing(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parse(kListing));
}
BENCHMARK(BM_ParseListing);

void BM_SerializePacked(benchmark::State& state) {
  std::vector<uint64_t> items(10000);
  std::iota(items.begin(), items.end(), 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        serialize_dataset(items, SerializeMode::MtuPacked, 1500, 4));
  state.SetItemsProcessed(state.iterations() * items.size());
}
BENCHMARK(BM_SerializePacked);

// one SUM label folding a stream of UNIT frames
void BM_DataplaneFold(benchmark::State& state) {
  SwitchConfig cfg;
  cfg.switch_id = 1;
  LabelConfig lc;
  lc.label_index = 2;
  lc.label_name = "S";
  lc.roles = {Role::SumReducer};
  lc.expected_signals = 1;
  lc.out_edges = 1;
  lc.partition_targets = {2};
  lc.sink = true;
  cfg.labels.push_back(lc);
  cfg.routing_entries[kCollectionRoutingId] = 0;

  std::vector<Frame> frames;
  for (uint64_t i = 0; i < 1000; ++i) frames.push_back(make_unit(2, i));
  for (auto _ : state) {
    SwitchDataplane plane(cfg);
    for (const Frame& f : frames) benchmark::DoNotOptimize(plane.on_frame(f));
  }
  state.SetItemsProcessed(state.iterations() * frames.size());
}
BENCHMARK(BM_DataplaneFold);

void BM_RunJobSmall(benchmark::State& state) {
  CompiledJob job =
      compile_job(make_chain_program(3), make_star_topology(3, 1e9, 1e12, 1e-6));
  RunConfig cfg;
  cfg.scenario = Scenario::S3;
  cfg.seed = 1;
  cfg.default_items = 1000;
  for (auto _ : state) {
    JobReport r =
        run_job(job.dag, job.topo, job.plan, job.tables, job.configs, cfg);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * 3000);
}
BENCHMARK(BM_RunJobSmall);

}  // namespace

BENCHMARK_MAIN();
