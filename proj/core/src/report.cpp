#include "p4mr/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "p4mr/errors.hpp"

namespace p4mr {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

// tiny canonical-JSON builder: callers add keys in sorted order
class Obj {
 public:
  explicit Obj(std::string indent) : m_indent(std::move(indent)) {}

  void raw(const std::string& key, const std::string& value) {
    m_parts.push_back(m_indent + "  " + quote(key) + ": " + value);
  }
  void num(const std::string& key, uint64_t v) { raw(key, std::to_string(v)); }
  void num(const std::string& key, int v) { raw(key, std::to_string(v)); }
  void flt(const std::string& key, double v) { raw(key, fmt(v)); }
  void str(const std::string& key, const std::string& v) { raw(key, quote(v)); }

  std::string close() const {
    if (m_parts.empty()) return "{}";
    std::string out = "{\n";
    for (size_t i = 0; i < m_parts.size(); ++i)
      out += m_parts[i] + (i + 1 < m_parts.size() ? ",\n" : "\n");
    return out + m_indent + "}";
  }

 private:
  std::string m_indent;
  std::vector<std::string> m_parts;
};

template <typename M, typename F>
std::string map_obj(const M& map, const std::string& indent, F&& value) {
  Obj o(indent);
  for (const auto& [k, v] : map) o.raw(k, value(v));
  return o.close();
}

}  // namespace

std::vector<double> measure_throughput(const JobReport& report,
                                       const std::string& link,
                                       double window) {
  if (!(window > 0))
    throw Error(ErrKind::InvalidParams, "window must be positive");
  auto it = report.departures.find(link);
  if (it == report.departures.end())
    throw Error(ErrKind::EmptyTrace, "no trace recorded for " + link);
  double horizon = report.done_time;
  for (const auto& [t, bits] : it->second) horizon = std::max(horizon, t);
  size_t bins = std::max<size_t>(1, static_cast<size_t>(std::ceil(horizon / window)));
  std::vector<double> series(bins, 0.0);
  for (const auto& [t, bits] : it->second) {
    size_t bin = std::min(bins - 1, static_cast<size_t>(t / window));
    series[bin] += static_cast<double>(bits);
  }
  for (double& v : series) v /= window;
  return series;
}

std::string report_to_json(const JobReport& r) {
  Obj top("");
  top.num("collisions", r.collisions);
  top.flt("done_time", r.done_time);
  top.num("items_dropped", r.items_dropped);
  top.num("items_folded", r.items_folded);
  top.num("items_injected", r.items_injected);
  top.flt("jct", r.jct);
  top.raw("link_bytes", map_obj(r.link_bytes, "  ", [](uint64_t v) {
            return std::to_string(v);
          }));
  top.raw("port_queue_peak", map_obj(r.port_queue_peak, "  ", [](int v) {
            return std::to_string(v);
          }));
  top.raw("results", map_obj(r.results, "  ", [](uint64_t v) {
            return std::to_string(v);
          }));
  top.str("scenario", scenario_name(r.scenario));
  top.num("seed", r.seed);
  {
    Obj switches("  ");
    for (const auto& [name, c] : r.switch_counters) {
      Obj sw("    ");
      sw.num("dropped_frames", c.dropped_frames);
      sw.num("dropped_items", c.dropped_items);
      sw.num("excess_collections", c.excess_collections);
      sw.num("forwarded", c.forwarded);
      sw.num("frames_in", c.frames_in);
      sw.num("recirc_passes", c.recirc_passes);
      switches.raw(name, sw.close());
    }
    top.raw("switches", switches.close());
  }
  {
    Obj series("  ");
    for (const auto& [link, deps] : r.departures) {
      std::string arr = "[";
      std::vector<double> tp = measure_throughput(r, link, r.trace_window);
      for (size_t i = 0; i < tp.size(); ++i)
        arr += fmt(tp[i]) + (i + 1 < tp.size() ? ", " : "");
      series.raw(link, arr + "]");
    }
    top.raw("throughput", series.close());
  }
  top.flt("trace_window", r.trace_window);
  top.raw("word_counts", map_obj(r.word_counts, "  ", [](uint64_t v) {
            return std::to_string(v);
          }));
  return top.close() + "\n";
}

std::string report_to_csv(const JobReport& r) {
  std::ostringstream out;
  out << "metric,key,value\n";
  out << "collisions,," << r.collisions << '\n';
  out << "done_time,," << fmt(r.done_time) << '\n';
  out << "items_dropped,," << r.items_dropped << '\n';
  out << "items_folded,," << r.items_folded << '\n';
  out << "items_injected,," << r.items_injected << '\n';
  out << "jct,," << fmt(r.jct) << '\n';
  for (const auto& [k, v] : r.link_bytes) out << "link_bytes," << k << ',' << v << '\n';
  for (const auto& [k, v] : r.port_queue_peak)
    out << "port_queue_peak," << k << ',' << v << '\n';
  for (const auto& [k, v] : r.results) out << "result," << k << ',' << v << '\n';
  out << "scenario,," << scenario_name(r.scenario) << '\n';
  out << "seed,," << r.seed << '\n';
  for (const auto& [name, c] : r.switch_counters) {
    out << "switch_dropped_frames," << name << ',' << c.dropped_frames << '\n';
    out << "switch_dropped_items," << name << ',' << c.dropped_items << '\n';
    out << "switch_excess_collections," << name << ',' << c.excess_collections
        << '\n';
    out << "switch_forwarded," << name << ',' << c.forwarded << '\n';
    out << "switch_frames_in," << name << ',' << c.frames_in << '\n';
    out << "switch_recirc_passes," << name << ',' << c.recirc_passes << '\n';
  }
  for (const auto& [k, v] : r.word_counts)
    out << "word_count," << k << ',' << v << '\n';
  return out.str();
}

}  // namespace p4mr
