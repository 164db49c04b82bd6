#ifndef P4MR_TOPOLOGY_HPP
#define P4MR_TOPOLOGY_HPP

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace p4mr {

struct Host {
  int id = 0;
  std::string name;
  int attached_switch = 0;
};

struct Switch {
  int id = 0;
  std::string name;
  double capacity_bps = 0;  // pipeline capacity of the match-action engine
};

struct Link {
  int a = 0;
  int b = 0;
  double capacity_bps = 0;
  double delay_s = 0;
};

// Network of hosts and switches. Node ids are unique across both sets;
// links are full duplex and indexed by position in `links`.
class Topology {
 public:
  std::vector<Host> hosts;
  std::vector<Switch> switches;
  std::vector<Link> links;
  int collection_host = 0;

  // Call after filling the public fields (load_topology does).
  // Validates and precomputes adjacency plus all-pairs hop distances.
  void finalize();

  bool is_host(int id) const;
  bool is_switch(int id) const;
  const Host& host(int id) const;
  const Switch& switch_at(int id) const;
  const Host* find_host_by_name(std::string_view name) const;

  // link indices incident to a node, ascending
  const std::vector<int>& links_of(int id) const;
  int other_end(int link_index, int id) const;

  // unique link between a host and its attached switch
  int host_link(int host_id) const;

  int hop_distance(int from, int to) const;
  int diameter() const;

  // Next node on a shortest path toward dest; among equal-length choices
  // the neighbor with the smallest id wins. Returns (next node, link index).
  std::pair<int, int> next_hop(int from, int dest) const;

  // all node ids, ascending
  std::vector<int> node_ids() const;

 private:
  int index_of(int id) const;  // dense index into the distance table
  std::vector<int> m_ids;      // sorted node ids
  std::vector<std::vector<int>> m_incident;  // per dense index
  std::vector<std::vector<int>> m_dist;      // hop counts, -1 unreachable
};

// Parse and validate the JSON topology document:
//   {"hosts":[{"id","name","switch"}],
//    "switches":[{"id","name","capacity_bps"}],
//    "links":[{"a","b","capacity_bps","delay_s"}],
//    "collection_host": id}
Topology load_topology(std::string_view document);

std::string topology_to_json(const Topology& topo);

}  // namespace p4mr

#endif
