#include "p4mr/topology.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include <nlohmann/json.hpp>

#include "p4mr/errors.hpp"

namespace p4mr {

using nlohmann::json;

void Topology::finalize() {
  std::set<int> seen;
  for (const Host& h : hosts)
    if (!seen.insert(h.id).second)
      throw Error(ErrKind::DuplicateId, "node id " + std::to_string(h.id));
  for (const Switch& s : switches)
    if (!seen.insert(s.id).second)
      throw Error(ErrKind::DuplicateId, "node id " + std::to_string(s.id));

  for (const Switch& s : switches)
    if (s.capacity_bps <= 0)
      throw Error(ErrKind::NonPositiveCapacity,
                  "switch " + std::to_string(s.id));
  for (size_t i = 0; i < links.size(); ++i) {
    if (links[i].capacity_bps <= 0)
      throw Error(ErrKind::NonPositiveCapacity, "link " + std::to_string(i));
    if (links[i].delay_s < 0)
      throw Error(ErrKind::SchemaError,
                  "links[" + std::to_string(i) + "].delay_s");
    if (!seen.count(links[i].a) || !seen.count(links[i].b))
      throw Error(ErrKind::SchemaError,
                  "links[" + std::to_string(i) + "] endpoint");
  }

  for (const Host& h : hosts)
    if (!is_switch(h.attached_switch))
      throw Error(ErrKind::SchemaError,
                  "host " + h.name + ": attached switch " +
                      std::to_string(h.attached_switch) + " does not exist");
  if (!is_host(collection_host))
    throw Error(ErrKind::SchemaError, "collection_host");

  m_ids.clear();
  for (int id : seen) m_ids.push_back(id);

  m_incident.assign(m_ids.size(), {});
  for (size_t i = 0; i < links.size(); ++i) {
    m_incident[index_of(links[i].a)].push_back(static_cast<int>(i));
    m_incident[index_of(links[i].b)].push_back(static_cast<int>(i));
  }

  for (const Host& h : hosts) {
    bool linked = false;
    for (int li : m_incident[index_of(h.id)])
      if (other_end(li, h.id) == h.attached_switch) linked = true;
    if (!linked)
      throw Error(ErrKind::SchemaError,
                  "host " + h.name + " has no link to its attached switch");
  }

  // BFS from every node; also proves connectivity
  m_dist.assign(m_ids.size(), std::vector<int>(m_ids.size(), -1));
  for (size_t s = 0; s < m_ids.size(); ++s) {
    std::deque<int> q{m_ids[s]};
    m_dist[s][s] = 0;
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (int li : m_incident[index_of(u)]) {
        int v = other_end(li, u);
        if (m_dist[s][index_of(v)] < 0) {
          m_dist[s][index_of(v)] = m_dist[s][index_of(u)] + 1;
          q.push_back(v);
        }
      }
    }
    for (size_t t = 0; t < m_ids.size(); ++t)
      if (m_dist[s][t] < 0)
        throw Error(ErrKind::DisconnectedTopology,
                    "node " + std::to_string(m_ids[t]) +
                        " unreachable from " + std::to_string(m_ids[s]));
  }
}

bool Topology::is_host(int id) const {
  return std::any_of(hosts.begin(), hosts.end(),
                     [&](const Host& h) { return h.id == id; });
}

bool Topology::is_switch(int id) const {
  return std::any_of(switches.begin(), switches.end(),
                     [&](const Switch& s) { return s.id == id; });
}

const Host& Topology::host(int id) const {
  for (const Host& h : hosts)
    if (h.id == id) return h;
  throw Error(ErrKind::SchemaError, "no host with id " + std::to_string(id));
}

const Switch& Topology::switch_at(int id) const {
  for (const Switch& s : switches)
    if (s.id == id) return s;
  throw Error(ErrKind::SchemaError, "no switch with id " + std::to_string(id));
}

const Host* Topology::find_host_by_name(std::string_view name) const {
  for (const Host& h : hosts)
    if (h.name == name) return &h;
  return nullptr;
}

const std::vector<int>& Topology::links_of(int id) const {
  return m_incident[index_of(id)];
}

int Topology::other_end(int link_index, int id) const {
  const Link& l = links[link_index];
  return l.a == id ? l.b : l.a;
}

int Topology::host_link(int host_id) const {
  const Host& h = host(host_id);
  for (int li : links_of(host_id))
    if (other_end(li, host_id) == h.attached_switch) return li;
  throw Error(ErrKind::SchemaError, "host link missing");
}

int Topology::hop_distance(int from, int to) const {
  return m_dist[index_of(from)][index_of(to)];
}

int Topology::diameter() const {
  int d = 0;
  for (const auto& row : m_dist)
    for (int v : row) d = std::max(d, v);
  return d;
}

std::pair<int, int> Topology::next_hop(int from, int dest) const {
  int want = hop_distance(from, dest) - 1;
  int best_node = -1, best_link = -1;
  for (int li : links_of(from)) {
    int v = other_end(li, from);
    if (hop_distance(v, dest) == want && (best_node < 0 || v < best_node)) {
      best_node = v;
      best_link = li;
    }
  }
  return {best_node, best_link};
}

std::vector<int> Topology::node_ids() const { return m_ids; }

int Topology::index_of(int id) const {
  auto it = std::lower_bound(m_ids.begin(), m_ids.end(), id);
  return static_cast<int>(it - m_ids.begin());
}

namespace {

const json& need(const json& obj, const char* name) {
  if (!obj.is_object() || !obj.contains(name))
    throw Error(ErrKind::SchemaError, name);
  return obj.at(name);
}

double num(const json& obj, const char* name) {
  const json& v = need(obj, name);
  if (!v.is_number()) throw Error(ErrKind::SchemaError, name);
  return v.get<double>();
}

}  // namespace

Topology load_topology(std::string_view document) {
  json doc = json::parse(document, nullptr, false);
  if (doc.is_discarded()) throw Error(ErrKind::SchemaError, "<document>");

  Topology topo;
  for (const json& h : need(doc, "hosts")) {
    Host host;
    host.id = static_cast<int>(num(h, "id"));
    host.name = need(h, "name").get<std::string>();
    host.attached_switch = static_cast<int>(num(h, "switch"));
    topo.hosts.push_back(std::move(host));
  }
  for (const json& s : need(doc, "switches")) {
    Switch sw;
    sw.id = static_cast<int>(num(s, "id"));
    sw.name = need(s, "name").get<std::string>();
    sw.capacity_bps = num(s, "capacity_bps");
    topo.switches.push_back(std::move(sw));
  }
  for (const json& l : need(doc, "links")) {
    Link link;
    link.a = static_cast<int>(num(l, "a"));
    link.b = static_cast<int>(num(l, "b"));
    link.capacity_bps = num(l, "capacity_bps");
    link.delay_s = num(l, "delay_s");
    topo.links.push_back(link);
  }
  topo.collection_host = static_cast<int>(num(doc, "collection_host"));
  topo.finalize();
  return topo;
}

std::string topology_to_json(const Topology& topo) {
  json doc;
  doc["hosts"] = json::array();
  for (const Host& h : topo.hosts)
    doc["hosts"].push_back(
        {{"id", h.id}, {"name", h.name}, {"switch", h.attached_switch}});
  doc["switches"] = json::array();
  for (const Switch& s : topo.switches)
    doc["switches"].push_back(
        {{"id", s.id}, {"name", s.name}, {"capacity_bps", s.capacity_bps}});
  doc["links"] = json::array();
  for (const Link& l : topo.links)
    doc["links"].push_back({{"a", l.a},
                            {"b", l.b},
                            {"capacity_bps", l.capacity_bps},
                            {"delay_s", l.delay_s}});
  doc["collection_host"] = topo.collection_host;
  return doc.dump(2) + "\n";
}

}  // namespace p4mr
