#ifndef P4MR_DATAPLANE_HPP
#define P4MR_DATAPLANE_HPP

#include <cstdint>
#include <deque>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "p4mr/switch_config.hpp"
#include "p4mr/wire.hpp"

namespace p4mr {

// What one pipeline pass asks the surrounding network to do. Egress puts
// the frame on a link; Recirculate re-enqueues it on the same ingress
// port for another pass. Local work (register folds, cascades between
// labels hosted on the same switch) happens inside the pass and produces
// no emission.
struct Emission {
  enum class Kind { Egress, Recirculate };
  Kind kind = Kind::Egress;
  int link = -1;  // Egress only
  Frame frame;
};

struct DataplaneParams {
  int wc_slots = 1 << 16;  // register array size R per word-count label
};

struct WcSlot {
  uint64_t key = 0;
  uint64_t count = 0;
  bool used = false;
};

struct LabelCounters {
  uint64_t items_in = 0;    // data items addressed here from UNIT/PACKED
  uint64_t folded = 0;      // register adds from those items (incl. collided)
  uint64_t folded_results = 0;  // adds carried in by upstream RESULT frames
  uint64_t scattered = 0;   // items a MAP label sent onward
  uint64_t discarded = 0;   // items a MAP sink had nowhere to send
};

struct LabelState {
  LabelConfig cfg;
  // registers
  uint64_t acc = 0;
  std::vector<WcSlot> slots;  // allocated on first word-count fold
  uint64_t collisions = 0;
  // collection protocol
  int signals_seen = 0;
  bool finished = false;
  int pending_serial = 0;     // PACKED residuals still recirculating
  std::deque<Frame> parked;   // COLLECTs held back while serialization drains
  // key/count pairing for RESULT streams out of an upstream word count
  bool has_pending_key = false;
  uint64_t pending_key = 0;
  LabelCounters counts;
};

struct SwitchCounters {
  uint64_t frames_in = 0;       // pipeline passes, recirculations included
  uint64_t recirc_passes = 0;
  uint64_t forwarded = 0;       // transit frames sent on by routing entry
  uint64_t dropped_frames = 0;  // no routing entry, no local label
  uint64_t dropped_items = 0;   // data items inside dropped frames
  uint64_t excess_collections = 0;
};

// One switch's p4mr behavior, driven entirely by its SwitchConfig:
// serialization by recirculation (one item extracted per pass), FNV-1a
// partitioning, register reduction, and the collection-signal protocol.
// A COLLECT for a label parks until that label's recirculating residuals
// drain, so a signal can never overtake the items it stands behind.
class SwitchDataplane {
 public:
  explicit SwitchDataplane(SwitchConfig config, DataplaneParams params = {});

  // Process one pipeline pass. `recirculated` marks a residual re-entering
  // after serialize_step rather than a fresh ingress frame.
  std::vector<Emission> on_frame(const Frame& frame, bool recirculated = false);

  const SwitchConfig& config() const { return m_config; }
  const SwitchCounters& counters() const { return m_counters; }

  bool hosts_label(int label) const { return m_labels.count(label) != 0; }
  const LabelState& label_state(int label) const { return m_labels.at(label); }

  // occupied word-count slots in slot order
  std::vector<std::pair<uint64_t, uint64_t>> wc_entries(int label) const;
  std::map<std::string, uint64_t> wc_words(int label) const;

  bool all_finished() const;
  std::vector<int> unfinished_labels() const;

 private:
  LabelState& state(uint8_t routing_id) { return m_labels.at(routing_id); }

  void dispatch(const Frame& frame, bool recirculated);
  void feed_item(LabelState& st, uint64_t item, bool from_result);
  void feed_result(LabelState& st, uint8_t collection_id, uint64_t data);
  void serialize_step(LabelState& st, const Frame& frame, bool recirculated);
  void on_collect(LabelState& st, const Frame& frame);
  void finish_label(LabelState& st);
  void wc_fold(LabelState& st, uint64_t key, uint64_t add);
  void emit(uint8_t routing_id, Frame frame);
  void drop(const Frame& frame, uint64_t items);

  SwitchConfig m_config;
  DataplaneParams m_params;
  std::map<int, LabelState> m_labels;
  SwitchCounters m_counters;
  // per-pass working set, rebuilt by on_frame
  std::vector<Emission> m_out;
  std::deque<Frame> m_worklist;
};

}  // namespace p4mr

#endif
