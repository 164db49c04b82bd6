#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "doctest.h"
#include "p4mr/compile.hpp"
#include "p4mr/dataplane.hpp"
#include "p4mr/switch_config.hpp"
#include "p4mr/wire.hpp"

using namespace p4mr;

namespace {

LabelConfig sum_label(int index, int expected, bool sink,
                      std::vector<int> out_consumers = {},
                      ValueType vt = ValueType::U64) {
  LabelConfig lc;
  lc.label_index = index;
  lc.label_name = "L" + std::to_string(index);
  lc.roles = {Role::SumReducer};
  lc.value_type = vt;
  lc.expected_signals = expected;
  lc.out_edges = sink ? 1 : static_cast<int>(out_consumers.size());
  lc.partition_targets = {index};
  lc.out_consumers = std::move(out_consumers);
  lc.sink = sink;
  return lc;
}

LabelConfig map_label(int index, int expected, std::vector<int> targets,
                      StreamKind input = StreamKind::Integers) {
  LabelConfig lc;
  lc.label_index = index;
  lc.label_name = "M" + std::to_string(index);
  lc.roles = {Role::Serializer, Role::Partitioner};
  lc.expected_signals = expected;
  lc.input_kind = input;
  lc.out_edges = static_cast<int>(targets.size());
  lc.out_consumers = targets;
  lc.partition_targets = std::move(targets);
  return lc;
}

P4mrHeader head(const Emission& e) { return decode_header(e.frame); }

}  // namespace

TEST_CASE("sum reducer folds units and emits result plus collect at the end") {
  SwitchConfig cfg;
  cfg.switch_id = 100;
  cfg.labels = {sum_label(2, 2, /*sink=*/true)};
  cfg.routing_entries[kCollectionRoutingId] = 7;
  SwitchDataplane plane(cfg);

  CHECK(plane.on_frame(make_unit(2, 5)).empty());
  CHECK(plane.on_frame(make_unit(2, 6)).empty());
  CHECK(plane.label_state(2).acc == 11);
  CHECK(plane.label_state(2).counts.items_in == 2);
  CHECK(plane.label_state(2).counts.folded == 2);
  CHECK_FALSE(plane.all_finished());

  CHECK(plane.on_frame(make_collect(2, 0)).empty());
  auto out = plane.on_frame(make_collect(2, 1));
  REQUIRE(out.size() == 2);
  CHECK(out[0].kind == Emission::Kind::Egress);
  CHECK(out[0].link == 7);
  CHECK(head(out[0]).app_id == kAppResult);
  CHECK(head(out[0]).routing_id == kCollectionRoutingId);
  CHECK(head(out[0]).collection_id == 3);  // label + 1
  CHECK(head(out[0]).data == 11);
  CHECK(head(out[1]).app_id == kAppCollect);
  CHECK(head(out[1]).collection_id == 3);
  CHECK(plane.all_finished());
}

TEST_CASE("uint_32 registers wrap") {
  SwitchConfig cfg;
  cfg.switch_id = 100;
  cfg.labels = {sum_label(1, 1, true, {}, ValueType::U32)};
  cfg.routing_entries[kCollectionRoutingId] = 0;
  SwitchDataplane plane(cfg);
  plane.on_frame(make_unit(1, 0xFFFFFFFFull));
  plane.on_frame(make_unit(1, 2));
  CHECK(plane.label_state(1).acc == 1);
}

TEST_CASE("packed frames serialize one item per pass via recirculation") {
  SwitchConfig cfg;
  cfg.switch_id = 100;
  cfg.labels = {map_label(1, 1, {2})};
  cfg.routing_entries[2] = 3;
  cfg.routing_entries[kCollectionRoutingId] = 4;
  SwitchDataplane plane(cfg);

  auto pass1 = plane.on_frame(make_packed(1, {10, 20, 30}));
  REQUIRE(pass1.size() == 2);
  CHECK(pass1[0].kind == Emission::Kind::Egress);
  CHECK(pass1[0].link == 3);
  CHECK(head(pass1[0]).app_id == kAppUnit);
  CHECK(head(pass1[0]).data == 10);
  CHECK(head(pass1[0]).routing_id == 2);  // rewritten to the consumer
  REQUIRE(pass1[1].kind == Emission::Kind::Recirculate);

  auto pass2 = plane.on_frame(pass1[1].frame, /*recirculated=*/true);
  REQUIRE(pass2.size() == 2);
  CHECK(head(pass2[0]).data == 20);
  REQUIRE(pass2[1].kind == Emission::Kind::Recirculate);

  auto pass3 = plane.on_frame(pass2[1].frame, /*recirculated=*/true);
  REQUIRE(pass3.size() == 1);  // k items, k passes, no further residual
  CHECK(head(pass3[0]).data == 30);

  CHECK(plane.counters().frames_in == 3);
  CHECK(plane.counters().recirc_passes == 2);
  CHECK(plane.label_state(1).counts.items_in == 3);
  CHECK(plane.label_state(1).counts.scattered == 3);
}

TEST_CASE("a collect parks until the label's residuals drain") {
  SwitchConfig cfg;
  cfg.switch_id = 100;
  cfg.labels = {map_label(1, 1, {2})};
  cfg.routing_entries[2] = 3;
  SwitchDataplane plane(cfg);

  auto pass1 = plane.on_frame(make_packed(1, {10, 20}));
  REQUIRE(pass1.size() == 2);
  REQUIRE(pass1[1].kind == Emission::Kind::Recirculate);

  // the signal arrives while item 20 is still circulating: it must wait
  CHECK(plane.on_frame(make_collect(1, 0)).empty());
  CHECK_FALSE(plane.all_finished());

  auto pass2 = plane.on_frame(pass1[1].frame, true);
  REQUIRE(pass2.size() == 2);
  CHECK(head(pass2[0]).app_id == kAppUnit);
  CHECK(head(pass2[0]).data == 20);
  CHECK(head(pass2[1]).app_id == kAppCollect);  // the unparked signal, relayed
  CHECK(head(pass2[1]).routing_id == 2);
  CHECK(plane.all_finished());
}

TEST_CASE("partitioner scatters by item hash") {
  SwitchConfig cfg;
  cfg.switch_id = 100;
  cfg.labels = {map_label(1, 1, {5, 6})};
  cfg.routing_entries[5] = 50;
  cfg.routing_entries[6] = 60;
  SwitchDataplane plane(cfg);

  for (uint64_t item : {1ull, 2ull, 3ull, 4ull, 5ull, 1000ull}) {
    auto out = plane.on_frame(make_unit(1, item));
    REQUIRE(out.size() == 1);
    int want = hash_item(item) % 2 == 0 ? 5 : 6;
    CHECK(head(out[0]).routing_id == want);
    CHECK(out[0].link == (want == 5 ? 50 : 60));
    CHECK(head(out[0]).data == item);
  }
}

TEST_CASE("word count registers, first writer keeps a contested slot") {
  SwitchConfig cfg;
  cfg.switch_id = 100;
  LabelConfig wc = sum_label(3, 1, true);
  wc.roles = {Role::WcReducer};
  cfg.labels = {wc};
  cfg.routing_entries[kCollectionRoutingId] = 1;
  SwitchDataplane plane(cfg, DataplaneParams{4});  // tiny array forces contests

  // find two words landing in the same of the 4 slots
  uint64_t first = word_item("w0");
  uint64_t second = 0;
  for (int i = 1; i < 64 && second == 0; ++i) {
    uint64_t cand = word_item("w" + std::to_string(i));
    if (hash_item(cand) % 4 == hash_item(first) % 4) second = cand;
  }
  REQUIRE(second != 0);

  plane.on_frame(make_unit(3, first));
  plane.on_frame(make_unit(3, first));
  plane.on_frame(make_unit(3, second));  // contested: first writer wins
  plane.on_frame(make_unit(3, second));

  const LabelState& st = plane.label_state(3);
  CHECK(st.counts.folded == 4);
  CHECK(st.collisions == 2);
  auto entries = plane.wc_entries(3);
  REQUIRE(entries.size() == 1);
  CHECK(entries[0].first == first);
  CHECK(entries[0].second == 2);
  uint64_t counted = 0;
  for (const auto& [key, count] : entries) counted += count;
  CHECK(counted + st.collisions == st.counts.folded);  // conservation
}

TEST_CASE("word count sink emits key and count pairs in slot order") {
  SwitchConfig cfg;
  cfg.switch_id = 100;
  LabelConfig wc = sum_label(2, 1, true);
  wc.roles = {Role::WcReducer};
  cfg.labels = {wc};
  cfg.routing_entries[kCollectionRoutingId] = 9;
  SwitchDataplane plane(cfg);

  plane.on_frame(make_unit(2, word_item("bob")));
  plane.on_frame(make_unit(2, word_item("eve")));
  plane.on_frame(make_unit(2, word_item("bob")));
  auto out = plane.on_frame(make_collect(2, 0));

  REQUIRE(out.size() == 5);  // 2 pairs + collect
  std::map<std::string, uint64_t> got;
  for (size_t i = 0; i + 1 < out.size(); i += 2) {
    P4mrHeader k = head(out[i]), c = head(out[i + 1]);
    CHECK(k.app_id == kAppResult);
    CHECK(k.collection_id == 0);
    CHECK(c.collection_id == 1);
    got[item_word(k.data)] = c.data;
  }
  CHECK(got == std::map<std::string, uint64_t>{{"bob", 2}, {"eve", 1}});
  CHECK(head(out[4]).app_id == kAppCollect);
}

TEST_CASE("labels on one switch cascade inside a single pass") {
  SwitchConfig cfg;
  cfg.switch_id = 100;
  cfg.labels = {sum_label(2, 1, false, {4}), sum_label(4, 1, true)};
  cfg.routing_entries[kCollectionRoutingId] = 6;
  SwitchDataplane plane(cfg);

  plane.on_frame(make_unit(2, 5));
  plane.on_frame(make_unit(2, 6));
  plane.on_frame(make_unit(4, 100));
  auto out = plane.on_frame(make_collect(2, 0));

  // label 2 finished, handed 11 to label 4 internally, which then also
  // finished; only label 4's frames leave the switch
  REQUIRE(out.size() == 2);
  CHECK(out[0].link == 6);
  CHECK(head(out[0]).app_id == kAppResult);
  CHECK(head(out[0]).collection_id == 5);
  CHECK(head(out[0]).data == 111);
  CHECK(head(out[1]).app_id == kAppCollect);
  CHECK(plane.label_state(4).counts.folded_results == 1);
  CHECK(plane.all_finished());
}

TEST_CASE("count table pairs scatter together through a map") {
  SwitchConfig cfg;
  cfg.switch_id = 100;
  cfg.labels = {map_label(3, 1, {5, 6}, StreamKind::CountTable)};
  cfg.routing_entries[5] = 50;
  cfg.routing_entries[6] = 60;
  SwitchDataplane plane(cfg);

  uint64_t key = word_item("bob");
  CHECK(plane.on_frame(make_result(3, key, 0)).empty());  // key half waits
  auto out = plane.on_frame(make_result(3, 41, 1));
  REQUIRE(out.size() == 2);
  int want = hash_item(key) % 2 == 0 ? 5 : 6;
  CHECK(head(out[0]).routing_id == want);
  CHECK(head(out[0]).data == key);
  CHECK(head(out[0]).collection_id == 0);
  CHECK(head(out[1]).routing_id == want);
  CHECK(head(out[1]).data == 41);
  CHECK(head(out[1]).collection_id == 1);
  CHECK(out[0].link == out[1].link);
}

TEST_CASE("transit frames follow entries, unmatched frames drop with items") {
  SwitchConfig cfg;
  cfg.switch_id = 100;
  cfg.routing_entries[9] = 2;
  SwitchDataplane plane(cfg);

  Frame unit = make_unit(9, 77);
  auto out = plane.on_frame(unit);
  REQUIRE(out.size() == 1);
  CHECK(out[0].link == 2);
  CHECK(out[0].frame == unit);  // forwarded unmodified
  CHECK(plane.counters().forwarded == 1);

  CHECK(plane.on_frame(make_unit(8, 1)).empty());
  CHECK(plane.on_frame(make_packed(8, {1, 2, 3})).empty());
  CHECK(plane.counters().dropped_frames == 2);
  CHECK(plane.counters().dropped_items == 4);
}

TEST_CASE("excess collects are counted, not re-finished") {
  SwitchConfig cfg;
  cfg.switch_id = 100;
  cfg.labels = {sum_label(1, 1, true)};
  cfg.routing_entries[kCollectionRoutingId] = 0;
  SwitchDataplane plane(cfg);

  plane.on_frame(make_unit(1, 5));
  CHECK(plane.on_frame(make_collect(1, 0)).size() == 2);
  CHECK(plane.on_frame(make_collect(1, 0)).empty());
  CHECK(plane.counters().excess_collections == 1);
}

TEST_CASE("emitted configs give the listing's D two expected signals") {
  CompiledJob job = compile_job(
      "A := store<uint_64>(\"h1:a\");"
      "B := store<uint_64>(\"h2:b\");"
      "C := store<uint_64>(\"h3:c\");"
      "D := SUM(A, B);"
      "E := SUM(D, C);",
      R"({"hosts": [{"id": 1, "name": "h1", "switch": 10},
                    {"id": 2, "name": "h2", "switch": 10},
                    {"id": 3, "name": "h3", "switch": 11}],
          "switches": [{"id": 10, "name": "s1", "capacity_bps": 1e9},
                       {"id": 11, "name": "s2", "capacity_bps": 1e9}],
          "links": [{"a": 1, "b": 10, "capacity_bps": 1e9, "delay_s": 1e-6},
                    {"a": 2, "b": 10, "capacity_bps": 1e9, "delay_s": 1e-6},
                    {"a": 3, "b": 11, "capacity_bps": 1e9, "delay_s": 1e-6},
                    {"a": 10, "b": 11, "capacity_bps": 1e9, "delay_s": 1e-6}],
          "collection_host": 3})");
  const LabelConfig* d = nullptr;
  const LabelConfig* e = nullptr;
  for (const SwitchConfig& sc : job.configs)
    for (const LabelConfig& lc : sc.labels) {
      if (lc.label_name == "D") d = &lc;
      if (lc.label_name == "E") e = &lc;
    }
  REQUIRE(d != nullptr);
  REQUIRE(e != nullptr);
  CHECK(d->expected_signals == 2);
  CHECK(d->roles == std::vector<Role>{Role::SumReducer});
  CHECK_FALSE(d->sink);
  CHECK(d->out_consumers == std::vector<int>{4});
  CHECK(e->expected_signals == 2);
  CHECK(e->sink);
}
