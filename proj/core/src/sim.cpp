#include "p4mr/sim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <queue>
#include <sstream>

#include "p4mr/datasets.hpp"
#include "p4mr/errors.hpp"
#include "p4mr/wire.hpp"

namespace p4mr {

namespace {

// a frame in flight; dest >= 0 marks classically forwarded traffic
// (scenario 1), everything else follows the p4mr routing tables
struct SimFrame {
  Frame bytes;
  int dest = -1;
  bool recirc = false;
  double not_before = 0;  // host release gate (scenario-1 reduce charge)
};

enum class EvKind { HostSend, FrameArrival, FrameDeparture, RecircPass, JobDone };

struct Event {
  double time = 0;
  uint64_t seq = 0;
  EvKind kind = EvKind::JobDone;
  int node = -1;  // sending host / receiving node / serving switch
  int link = -1;  // arrival or ingress link
  SimFrame frame;
};

struct EventAfter {
  bool operator()(const Event& a, const Event& b) const {
    if (a.time != b.time) return a.time > b.time;
    return a.seq > b.seq;
  }
};

struct LinkDir {
  double free_at = 0;
  uint64_t bytes = 0;
  std::vector<std::pair<double, uint64_t>> departures;  // (tx end, bits)
  std::string name;
};

struct Port {
  bool busy = false;
  std::deque<SimFrame> q;
  int peak = 0;
  std::vector<std::pair<double, int>> depth;
  std::string name;
};

struct HostAgent {
  int id = -1;
  int link = -1;
  double rate = 0;
  double credit = 0;    // next permitted release time
  bool pacing = false;  // a HostSend event is outstanding
  std::deque<SimFrame> sendq;
  // scenario-1 peer state: the received shuffle partition
  uint64_t part_items = 0;
  uint64_t partial = 0;
  std::map<uint64_t, uint64_t> wc_partial;
  int peer_collects = 0;
  bool reduced = false;
};

class Simulation {
 public:
  Simulation(const DataflowDag& dag, const Topology& topo,
             const PlacementPlan& plan, const std::vector<SwitchConfig>& configs,
             const RunConfig& cfg)
      : m_dag(dag), m_topo(topo), m_plan(plan), m_cfg(cfg) {
    for (const SwitchConfig& sc : configs)
      m_planes.emplace(sc.switch_id,
                       SwitchDataplane(sc, DataplaneParams{cfg.wc_slots}));
    for (int sw : topo.node_ids())
      if (topo.is_switch(sw) && !m_planes.count(sw))
        m_planes.emplace(sw, SwitchDataplane(SwitchConfig{sw, {}, {}},
                                             DataplaneParams{cfg.wc_slots}));
  }

  JobReport run() {
    setup();
    loop();
    return build_report();
  }

 private:
  // ---- setup ---------------------------------------------------------

  std::vector<uint64_t> store_items(int label) {
    const AstNode& node = m_dag.node(label);
    auto exact = m_cfg.datasets.find(node.locator);
    if (exact != m_cfg.datasets.end()) return exact->second;
    auto host = m_cfg.datasets.find(locator_host(node.locator));
    if (host != m_cfg.datasets.end()) return host->second;
    if (m_cfg.default_items == 0) return {};
    uint64_t seed = m_cfg.seed + 0x9E3779B97F4A7C15ull * (label + 1);
    return m_dag.store_holds_words(label)
               ? gen_words(m_cfg.default_items, seed)
               : gen_integers(m_cfg.default_items, seed);
  }

  HostAgent& agent(int host) {
    HostAgent& a = m_hosts[host];
    if (a.id < 0) {
      a.id = host;
      a.link = m_topo.host_link(host);
      double cap = m_topo.links[a.link].capacity_bps;
      double want = m_cfg.scenario == Scenario::S3 ? equilibrium_rate(cap) : cap;
      if (m_cfg.send_rate > 0) want = m_cfg.send_rate;
      if (want > cap)
        throw Error(ErrKind::InvalidParams,
                    "send rate exceeds link capacity on host " +
                        m_topo.host(host).name);
      a.rate = want;
    }
    return a;
  }

  void setup() {
    // trace slots for every link direction so idle links report zeros
    for (const Link& lk : m_topo.links) {
      std::array<LinkDir, 2> dirs;
      dirs[0].name = node_name(lk.a) + "->" + node_name(lk.b);
      dirs[1].name = node_name(lk.b) + "->" + node_name(lk.a);
      m_dirs.push_back(std::move(dirs));
    }

    std::vector<int> compute_sinks;
    for (int s : m_dag.sinks)
      if (m_dag.node(s).func_type != FuncType::Store) compute_sinks.push_back(s);
    bool any_compute = false;
    for (const AstNode& n : m_dag.nodes)
      any_compute |= n.func_type != FuncType::Store;
    if (!any_compute)
      throw Error(ErrKind::InvalidParams, "program has nothing to compute");
    if (compute_sinks.size() != m_dag.sinks.size())
      throw Error(ErrKind::InvalidParams,
                  "a store is never consumed; nothing would collect it");

    if (m_cfg.scenario == Scenario::S1)
      setup_s1(compute_sinks);
    else
      setup_p4mr();

    m_expected_collects = m_cfg.scenario == Scenario::S1
                              ? static_cast<int>(m_participants.size())
                              : static_cast<int>(compute_sinks.size());
  }

  void setup_p4mr() {
    SerializeMode mode = m_cfg.scenario == Scenario::S3 ? SerializeMode::MtuPacked
                                                        : SerializeMode::PerItem;
    std::map<int, double> map_charge;  // host -> seconds before first send
    std::map<int, std::deque<SimFrame>> queues;
    for (size_t label = 0; label < m_dag.nodes.size(); ++label) {
      if (m_dag.node(label).func_type != FuncType::Store) continue;
      int host = m_plan.location(static_cast<int>(label));
      std::vector<uint64_t> items = store_items(static_cast<int>(label));
      if (m_cfg.scenario == Scenario::S2)
        map_charge[host] += items.size() * m_cfg.cpu_map;
      for (const DagEdge& e : m_dag.out_edges(static_cast<int>(label))) {
        uint8_t rid = static_cast<uint8_t>(e.consumer);
        for (Frame& f : serialize_dataset(items, mode, m_cfg.mtu, rid))
          queues[host].push_back({std::move(f), -1, false});
        queues[host].push_back(
            {make_collect(rid, static_cast<int>(label)), -1, false});
        m_injected += items.size();
      }
    }
    for (auto& [host, q] : queues) {
      HostAgent& a = agent(host);
      a.sendq = std::move(q);
      a.credit = map_charge[host];
      arm_host(a, a.credit);
    }
  }

  void setup_s1(const std::vector<int>& compute_sinks) {
    if (compute_sinks.size() != 1)
      throw Error(ErrKind::InvalidParams,
                  "scenario 1 baselines a single-output job");
    m_s1_sink = compute_sinks[0];
    // word-count job iff anything upstream of the sink produces words
    for (const DagEdge& e : m_dag.in_edges(m_s1_sink))
      m_s1_wordcount |= m_dag.stream_kind(e.producer) != StreamKind::Integers;

    std::map<int, std::vector<uint64_t>> host_items;
    for (size_t label = 0; label < m_dag.nodes.size(); ++label) {
      if (m_dag.node(label).func_type != FuncType::Store) continue;
      int host = m_plan.location(static_cast<int>(label));
      std::vector<uint64_t> items = store_items(static_cast<int>(label));
      auto& bucket = host_items[host];
      bucket.insert(bucket.end(), items.begin(), items.end());
    }
    for (const auto& [host, items] : host_items) m_participants.push_back(host);

    int n = static_cast<int>(m_participants.size());
    for (const auto& [host, items] : host_items) {
      HostAgent& a = agent(host);
      int self = static_cast<int>(std::find(m_participants.begin(),
                                            m_participants.end(), host) -
                                  m_participants.begin());
      for (uint64_t item : items) {
        int dest = m_participants[hash_item(item) % n];
        a.sendq.push_back({make_unit(0, item), dest, false});
      }
      for (int peer : m_participants)
        a.sendq.push_back(
            {encode_header({kAppCollect, 0, static_cast<uint8_t>(self + 1), 0}),
             peer, false});
      m_injected += items.size();
      a.credit = items.size() * m_cfg.cpu_map;
      arm_host(a, a.credit);
    }
  }

  // ---- engine --------------------------------------------------------

  void schedule(double t, EvKind kind, int node, int link, SimFrame frame) {
    m_pq.push(Event{t, m_seq++, kind, node, link, std::move(frame)});
  }

  void arm_host(HostAgent& a, double at) {
    if (a.pacing || a.sendq.empty()) return;
    a.pacing = true;
    schedule(std::max(at, m_now), EvKind::HostSend, a.id, -1, SimFrame{});
  }

  void transmit(int link, int from, SimFrame frame, double t) {
    const Link& lk = m_topo.links[link];
    int dir = from == lk.a ? 0 : 1;
    LinkDir& d = m_dirs[link][dir];
    double bits = static_cast<double>(frame.bytes.size()) * 8;
    double start = std::max(t, d.free_at);
    double end = start + bits / lk.capacity_bps;
    d.free_at = end;
    d.bytes += frame.bytes.size();
    d.departures.emplace_back(end, static_cast<uint64_t>(bits));
    int to = from == lk.a ? lk.b : lk.a;
    schedule(end + lk.delay_s, EvKind::FrameArrival, to, link, std::move(frame));
  }

  Port& port(int sw, int link) {
    Port& p = m_ports[{sw, link}];
    if (p.name.empty())
      p.name = node_name(sw) + "<-" + node_name(m_topo.other_end(link, sw));
    return p;
  }

  void port_enqueue(int sw, int link, SimFrame frame, double t) {
    Port& p = port(sw, link);
    p.q.push_back(std::move(frame));
    p.peak = std::max(p.peak, static_cast<int>(p.q.size()));
    p.depth.emplace_back(t, static_cast<int>(p.q.size()));
    if (!p.busy) start_service(sw, link, t);
  }

  void start_service(int sw, int link, double t) {
    Port& p = port(sw, link);
    p.busy = true;
    SimFrame f = std::move(p.q.front());
    p.q.pop_front();
    p.depth.emplace_back(t, static_cast<int>(p.q.size()));
    double bits = static_cast<double>(f.bytes.size()) * 8;
    double done = t + bits / m_topo.switch_at(sw).capacity_bps;
    schedule(done, f.recirc ? EvKind::RecircPass : EvKind::FrameDeparture, sw,
             link, std::move(f));
  }

  void pass_done(int sw, int link, SimFrame f) {
    if (f.dest >= 0) {
      auto [next, out_link] = m_topo.next_hop(sw, f.dest);
      transmit(out_link, sw, std::move(f), m_now);
    } else {
      for (Emission& em : m_planes.at(sw).on_frame(f.bytes, f.recirc)) {
        if (em.kind == Emission::Kind::Egress)
          transmit(em.link, sw, SimFrame{std::move(em.frame), -1, false}, m_now);
        else
          port_enqueue(sw, link, SimFrame{std::move(em.frame), -1, true}, m_now);
      }
    }
    Port& p = port(sw, link);
    p.busy = false;
    if (!p.q.empty()) start_service(sw, link, m_now);
  }

  void host_send(int host) {
    HostAgent& a = m_hosts.at(host);
    if (a.sendq.empty()) {
      a.pacing = false;
      return;
    }
    if (a.sendq.front().not_before > m_now) {  // gated by a CPU stage
      schedule(a.sendq.front().not_before, EvKind::HostSend, host, -1,
               SimFrame{});
      return;
    }
    SimFrame f = std::move(a.sendq.front());
    a.sendq.pop_front();
    double bits = static_cast<double>(f.bytes.size()) * 8;
    transmit(a.link, host, std::move(f), m_now);
    a.credit = m_now + bits / a.rate;
    if (!a.sendq.empty())
      schedule(a.credit, EvKind::HostSend, host, -1, SimFrame{});
    else
      a.pacing = false;
  }

  // ---- host receive path ---------------------------------------------

  void host_receive(int host, const SimFrame& f) {
    P4mrHeader h = decode_header(f.bytes);
    if (h.routing_id == kCollectionRoutingId) {
      if (host == m_topo.collection_host)
        collection_receive(h);
      else
        ++m_host_drops;
      return;
    }
    if (m_cfg.scenario != Scenario::S1) {
      ++m_host_drops;
      return;
    }
    HostAgent& a = m_hosts.at(host);
    if (h.app_id == kAppUnit) {
      ++a.part_items;
      if (m_s1_wordcount)
        ++a.wc_partial[h.data];
      else
        a.partial = wrap_sink(a.partial + h.data);
      return;
    }
    if (h.app_id == kAppCollect) {
      ++a.peer_collects;
      if (a.peer_collects == static_cast<int>(m_participants.size()) &&
          !a.reduced) {
        a.reduced = true;
        emit_s1_partial(a);
      }
      return;
    }
    ++m_host_drops;
  }

  void emit_s1_partial(HostAgent& a) {
    int ch = m_topo.collection_host;
    double ready = m_now + static_cast<double>(a.part_items) * m_cfg.cpu_reduce;
    if (m_s1_wordcount) {
      for (const auto& [key, count] : a.wc_partial) {
        a.sendq.push_back(
            {make_result(kCollectionRoutingId, key, 0), ch, false, ready});
        a.sendq.push_back(
            {make_result(kCollectionRoutingId, count, 1), ch, false, ready});
      }
    } else {
      a.sendq.push_back({make_result(kCollectionRoutingId, a.partial,
                                     static_cast<uint8_t>(m_s1_sink + 1)),
                         ch, false, ready});
    }
    a.sendq.push_back(
        {make_collect(kCollectionRoutingId, m_s1_sink), ch, false, ready});
    arm_host(a, ready);
  }

  uint64_t wrap_sink(uint64_t v) const {
    if (m_s1_sink >= 0 &&
        m_dag.node(m_s1_sink).value_type == ValueType::U32)
      return v & 0xFFFFFFFFull;
    return v;
  }

  void collection_receive(const P4mrHeader& h) {
    if (h.app_id == kAppResult) {
      m_last_result = m_now;
      if (h.collection_id == 0) {
        m_pending_key = h.data;
        m_has_pending_key = true;
      } else if (h.collection_id == 1) {
        if (m_has_pending_key) {
          m_wc_final[m_pending_key] += h.data;
          m_has_pending_key = false;
        }
      } else {
        // label indices start above the stores, so origin+1 is >= 2 and
        // never collides with the word-count 0/1 tags
        m_sum_final[h.collection_id - 1] += h.data;
      }
      return;
    }
    if (h.app_id == kAppCollect) {
      ++m_collects_seen;
      if (m_collects_seen == m_expected_collects && !m_done_scheduled) {
        m_done_scheduled = true;
        schedule(m_now, EvKind::JobDone, -1, -1, SimFrame{});
      }
    }
  }

  // ---- main loop and report ------------------------------------------

  void loop() {
    while (!m_done && !m_pq.empty()) {
      Event ev = m_pq.top();
      m_pq.pop();
      if (ev.time < m_now - 1e-12)
        throw std::logic_error("event scheduled in the past");
      m_now = std::max(m_now, ev.time);
      switch (ev.kind) {
        case EvKind::HostSend:
          host_send(ev.node);
          break;
        case EvKind::FrameArrival:
          if (m_topo.is_switch(ev.node))
            port_enqueue(ev.node, ev.link, std::move(ev.frame), m_now);
          else
            host_receive(ev.node, ev.frame);
          break;
        case EvKind::FrameDeparture:
        case EvKind::RecircPass:
          pass_done(ev.node, ev.link, std::move(ev.frame));
          break;
        case EvKind::JobDone:
          m_done = true;
          m_done_time = m_now;
          break;
      }
    }
    if (!m_done) {
      std::ostringstream what;
      what << "events ran dry with " << m_collects_seen << "/"
           << m_expected_collects << " collection signals; blocked labels:";
      bool any = false;
      for (const auto& [sw, plane] : m_planes)
        for (int label : plane.unfinished_labels()) {
          what << ' ' << m_dag.node(label).label_name;
          any = true;
        }
      if (!any) what << " (none)";
      throw Error(ErrKind::StallDetected, what.str());
    }
  }

  std::string node_name(int id) const {
    return m_topo.is_host(id) ? m_topo.host(id).name : m_topo.switch_at(id).name;
  }

  JobReport build_report() {
    JobReport r;
    r.scenario = m_cfg.scenario;
    r.seed = m_cfg.seed;
    r.done_time = m_done_time;
    r.jct = m_last_result >= 0 ? m_last_result : m_done_time;
    r.trace_window = m_cfg.trace_window;
    for (const auto& [label, value] : m_sum_final) {
      // partials accumulate in 64 bits; narrow sinks wrap once at the end
      uint64_t v = value;
      if (m_dag.node(label).value_type == ValueType::U32) v &= 0xFFFFFFFFull;
      r.results[m_dag.node(label).label_name] = v;
    }
    for (const auto& [key, count] : m_wc_final)
      r.word_counts[item_word(key)] = count;
    for (const auto& dirs : m_dirs)
      for (const LinkDir& d : dirs) {
        r.link_bytes[d.name] = d.bytes;
        r.departures[d.name] = d.departures;
      }
    for (const auto& [sw, plane] : m_planes) {
      r.switch_counters[node_name(sw)] = plane.counters();
      r.collisions += plane_collisions(plane);
      r.items_dropped += plane.counters().dropped_items;
      for (const LabelConfig& lc : plane.config().labels) {
        const LabelState& st = plane.label_state(lc.label_index);
        r.items_folded += st.counts.folded;
      }
    }
    for (const auto& [key, p] : m_ports) {
      r.port_queue_peak[p.name] = p.peak;
      r.queue_depth[p.name] = p.depth;
    }
    if (m_cfg.scenario == Scenario::S1)
      for (const auto& [host, a] : m_hosts) r.items_folded += a.part_items;
    r.items_injected = m_injected;
    r.items_dropped += m_host_drops;
    return r;
  }

  static uint64_t plane_collisions(const SwitchDataplane& plane) {
    uint64_t total = 0;
    for (const LabelConfig& lc : plane.config().labels)
      total += plane.label_state(lc.label_index).collisions;
    return total;
  }

  const DataflowDag& m_dag;
  const Topology& m_topo;
  const PlacementPlan& m_plan;
  RunConfig m_cfg;

  std::map<int, SwitchDataplane> m_planes;
  std::vector<std::array<LinkDir, 2>> m_dirs;
  std::map<std::pair<int, int>, Port> m_ports;
  std::map<int, HostAgent> m_hosts;

  std::priority_queue<Event, std::vector<Event>, EventAfter> m_pq;
  uint64_t m_seq = 0;
  double m_now = 0;
  bool m_done = false;
  bool m_done_scheduled = false;
  double m_done_time = 0;
  double m_last_result = -1;

  // collection-host bookkeeping
  int m_expected_collects = 0;
  int m_collects_seen = 0;
  std::map<int, uint64_t> m_sum_final;       // sink label -> value
  std::map<uint64_t, uint64_t> m_wc_final;   // key item -> count
  uint64_t m_pending_key = 0;
  bool m_has_pending_key = false;

  // scenario 1
  std::vector<int> m_participants;
  int m_s1_sink = -1;
  bool m_s1_wordcount = false;

  uint64_t m_injected = 0;
  uint64_t m_host_drops = 0;
};

}  // namespace

JobReport run_job(const DataflowDag& dag, const Topology& topo,
                  const PlacementPlan& plan, const RoutingTables& tables,
                  const std::vector<SwitchConfig>& configs,
                  const RunConfig& config) {
  (void)tables;  // already baked into the per-switch configs
  Simulation sim(dag, topo, plan, configs, config);
  return sim.run();
}

}  // namespace p4mr
