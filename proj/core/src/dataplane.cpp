#include "p4mr/dataplane.hpp"

#include <algorithm>

#include "p4mr/errors.hpp"

namespace p4mr {

namespace {

bool has_role(const LabelConfig& cfg, Role r) {
  return std::find(cfg.roles.begin(), cfg.roles.end(), r) != cfg.roles.end();
}

uint64_t wrap(uint64_t v, ValueType t) {
  return t == ValueType::U32 ? v & 0xFFFFFFFFull : v;
}

uint64_t frame_items(const P4mrHeader& h) {
  switch (h.app_id) {
    case kAppUnit: return 1;
    case kAppPacked: return h.data;
    case kAppResult: return 1;
    default: return 0;
  }
}

}  // namespace

SwitchDataplane::SwitchDataplane(SwitchConfig config, DataplaneParams params)
    : m_config(std::move(config)), m_params(params) {
  for (const LabelConfig& lc : m_config.labels) {
    LabelState st;
    st.cfg = lc;
    m_labels.emplace(lc.label_index, std::move(st));
  }
}

std::vector<Emission> SwitchDataplane::on_frame(const Frame& frame,
                                                bool recirculated) {
  ++m_counters.frames_in;
  if (recirculated) ++m_counters.recirc_passes;
  m_out.clear();
  m_worklist.clear();

  dispatch(frame, recirculated);
  // cascades between labels hosted on this switch run inside the same pass
  while (!m_worklist.empty()) {
    Frame f = std::move(m_worklist.front());
    m_worklist.pop_front();
    dispatch(f, false);
  }
  return std::move(m_out);
}

void SwitchDataplane::dispatch(const Frame& frame, bool recirculated) {
  P4mrHeader h = decode_header(frame);
  if (h.routing_id != kCollectionRoutingId && hosts_label(h.routing_id)) {
    LabelState& st = state(h.routing_id);
    switch (h.app_id) {
      case kAppUnit:
        ++st.counts.items_in;
        feed_item(st, h.data, false);
        return;
      case kAppPacked:
        serialize_step(st, frame, recirculated);
        return;
      case kAppResult:
        feed_result(st, h.collection_id, h.data);
        return;
      case kAppCollect:
        on_collect(st, frame);
        return;
      default:
        drop(frame, 0);
        return;
    }
  }
  // transit: forward by routing entry or drop
  auto it = m_config.routing_entries.find(h.routing_id);
  if (it == m_config.routing_entries.end()) {
    drop(frame, frame_items(h));
    return;
  }
  ++m_counters.forwarded;
  m_out.push_back({Emission::Kind::Egress, it->second, frame});
}

void SwitchDataplane::feed_item(LabelState& st, uint64_t item,
                                bool from_result) {
  if (has_role(st.cfg, Role::Partitioner)) {
    if (st.cfg.partition_targets.empty()) {  // a MAP with no consumer
      ++st.counts.discarded;
      return;
    }
    ++st.counts.scattered;
    size_t pick = hash_item(item) % st.cfg.partition_targets.size();
    int target = st.cfg.partition_targets[pick];
    emit(static_cast<uint8_t>(target),
         make_unit(static_cast<uint8_t>(target), item));
    return;
  }
  if (from_result)
    ++st.counts.folded_results;
  else
    ++st.counts.folded;
  if (has_role(st.cfg, Role::WcReducer))
    wc_fold(st, item, 1);
  else
    st.acc = wrap(st.acc + item, st.cfg.value_type);
}

void SwitchDataplane::feed_result(LabelState& st, uint8_t collection_id,
                                  uint64_t data) {
  bool paired = st.cfg.input_kind == StreamKind::CountTable ||
                has_role(st.cfg, Role::WcReducer);
  if (paired && collection_id == 0) {  // key half of a pair
    st.pending_key = data;
    st.has_pending_key = true;
    return;
  }
  if (paired && collection_id == 1 && st.has_pending_key) {
    uint64_t key = st.pending_key;
    st.has_pending_key = false;
    if (has_role(st.cfg, Role::Partitioner)) {
      // pairs scatter together, keyed by the word
      ++st.counts.scattered;
      size_t pick = hash_item(key) % st.cfg.partition_targets.size();
      uint8_t target = static_cast<uint8_t>(st.cfg.partition_targets[pick]);
      emit(target, make_result(target, key, 0));
      emit(target, make_result(target, data, 1));
      return;
    }
    ++st.counts.folded_results;
    wc_fold(st, key, data);
    return;
  }
  // a plain value from an upstream reducer
  if (has_role(st.cfg, Role::Partitioner)) {
    feed_item(st, data, true);
    return;
  }
  ++st.counts.folded_results;
  if (has_role(st.cfg, Role::WcReducer))
    wc_fold(st, data, 1);
  else
    st.acc = wrap(st.acc + data, st.cfg.value_type);
}

void SwitchDataplane::serialize_step(LabelState& st, const Frame& frame,
                                     bool recirculated) {
  PackedView view = decode_packed(frame);
  if (!recirculated) {
    ++st.pending_serial;
    st.counts.items_in += view.items.size();
  }
  if (!view.items.empty()) feed_item(st, view.items.front(), false);
  if (view.items.size() > 1) {
    std::vector<uint64_t> rest(view.items.begin() + 1, view.items.end());
    m_out.push_back({Emission::Kind::Recirculate, -1,
                     make_packed(st.cfg.label_index, rest)});
    return;
  }
  // drained: release any collection signals that were waiting behind it
  --st.pending_serial;
  while (st.pending_serial == 0 && !st.parked.empty()) {
    Frame parked = std::move(st.parked.front());
    st.parked.pop_front();
    on_collect(st, parked);
  }
}

void SwitchDataplane::on_collect(LabelState& st, const Frame& frame) {
  if (st.pending_serial > 0) {
    st.parked.push_back(frame);
    return;
  }
  if (st.finished) {
    ++m_counters.excess_collections;
    return;
  }
  ++st.signals_seen;
  if (st.signals_seen >= st.cfg.expected_signals) finish_label(st);
}

void SwitchDataplane::finish_label(LabelState& st) {
  st.finished = true;
  uint8_t self = static_cast<uint8_t>(st.cfg.label_index);

  auto emit_value = [&](uint8_t routing, uint8_t cid) {
    if (has_role(st.cfg, Role::WcReducer)) {
      for (const WcSlot& slot : st.slots) {
        if (!slot.used) continue;
        emit(routing, make_result(routing, slot.key, 0));
        emit(routing, make_result(routing, slot.count, 1));
      }
    } else if (has_role(st.cfg, Role::SumReducer)) {
      emit(routing, make_result(routing, st.acc, cid));
    }
    // a MAP has already scattered everything it will ever send
  };

  if (st.cfg.sink) {
    emit_value(kCollectionRoutingId, self + 1);
    emit(kCollectionRoutingId,
         make_collect(kCollectionRoutingId, st.cfg.label_index));
    return;
  }
  for (int consumer : st.cfg.out_consumers) {
    uint8_t c = static_cast<uint8_t>(consumer);
    emit_value(c, 0);
    emit(c, make_collect(c, st.cfg.label_index));
  }
}

void SwitchDataplane::wc_fold(LabelState& st, uint64_t key, uint64_t add) {
  if (st.slots.empty()) st.slots.resize(m_params.wc_slots);
  WcSlot& slot = st.slots[hash_item(key) % st.slots.size()];
  if (!slot.used) {
    slot.used = true;
    slot.key = key;
    slot.count = add;
  } else if (slot.key == key) {
    slot.count += add;
  } else {
    st.collisions += add;
  }
}

void SwitchDataplane::emit(uint8_t routing_id, Frame frame) {
  if (routing_id != kCollectionRoutingId && hosts_label(routing_id)) {
    m_worklist.push_back(std::move(frame));
    return;
  }
  auto it = m_config.routing_entries.find(routing_id);
  if (it == m_config.routing_entries.end()) {
    drop(frame, frame_items(decode_header(frame)));
    return;
  }
  m_out.push_back({Emission::Kind::Egress, it->second, std::move(frame)});
}

void SwitchDataplane::drop(const Frame&, uint64_t items) {
  ++m_counters.dropped_frames;
  m_counters.dropped_items += items;
}

std::vector<std::pair<uint64_t, uint64_t>> SwitchDataplane::wc_entries(
    int label) const {
  std::vector<std::pair<uint64_t, uint64_t>> out;
  for (const WcSlot& slot : m_labels.at(label).slots)
    if (slot.used) out.emplace_back(slot.key, slot.count);
  return out;
}

std::map<std::string, uint64_t> SwitchDataplane::wc_words(int label) const {
  std::map<std::string, uint64_t> out;
  for (const auto& [key, count] : wc_entries(label)) out[item_word(key)] = count;
  return out;
}

bool SwitchDataplane::all_finished() const {
  for (const auto& [idx, st] : m_labels)
    if (!st.finished) return false;
  return true;
}

std::vector<int> SwitchDataplane::unfinished_labels() const {
  std::vector<int> out;
  for (const auto& [idx, st] : m_labels)
    if (!st.finished) out.push_back(idx);
  return out;
}

}  // namespace p4mr
