// Undirected weighted co-authorship network plus structural operations
// (components, ego extraction, node collapsing, thresholding).
#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace coauthnet {

struct NetworkNode {
  std::string key;
  double fractional_size = 0.0;
  long long whole_size = 0;

  bool operator==(const NetworkNode&) const = default;
};

// Invariants: no self-loops, integer weights >= 1, at most one edge per
// pair. Networks are built once and treated as immutable snapshots; all
// statistics are pure reads.
class CoauthNetwork {
 public:
  int add_node(NetworkNode node);
  int add_node(std::string key) { return add_node(NetworkNode{std::move(key), 0.0, 0}); }
  void add_edge(int a, int b, long long weight = 1);
  void add_edge(std::string_view a, std::string_view b, long long weight = 1);

  int node_count() const { return static_cast<int>(nodes_.size()); }
  long long edge_count() const { return m_; }
  bool empty() const { return nodes_.empty(); }
  const NetworkNode& node(int i) const { return nodes_[i]; }
  NetworkNode& node(int i) { return nodes_[i]; }
  std::optional<int> find_node(std::string_view key) const;
  const std::map<int, long long>& neighbors(int i) const { return adj_[i]; }
  long long weight(int a, int b) const;
  int degree(int i) const { return static_cast<int>(adj_[i].size()); }
  long long strength(int i) const;
  long long total_weight() const { return total_weight_; }

  struct Edge {
    int a;  // a < b
    int b;
    long long weight;
    bool operator==(const Edge&) const = default;
  };
  std::vector<Edge> edges() const;  // sorted by (a, b)

  bool operator==(const CoauthNetwork& other) const;

 private:
  std::vector<NetworkNode> nodes_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::map<int, long long>> adj_;
  long long m_ = 0;
  long long total_weight_ = 0;
};

// Connected components on the unweighted skeleton; each component sorted
// by node index, components ordered by size descending then first node.
std::vector<std::vector<int>> components(const CoauthNetwork& net);

CoauthNetwork largest_component(const CoauthNetwork& net);

// Subnetwork induced on `nodes` (indices into `net`), preserving weights
// and node attributes; node order follows `nodes`.
CoauthNetwork induced_subnetwork(const CoauthNetwork& net, std::span<const int> nodes);

// k=1 neighborhood of `ego`. With remove_inside, all edges not incident
// to the ego are dropped, leaving a star with original weights.
CoauthNetwork ego_network(const CoauthNetwork& net, std::string_view ego, bool remove_inside);

// Collapses `group` into a single node labeled `label`; boundary weights
// and node sizes sum, intra-group edges vanish.
CoauthNetwork shrink(const CoauthNetwork& net, std::span<const std::string> group,
                     std::string_view label);

// Keeps nodes whose fractional_size passes min_node_fractional and edges
// whose weight passes min_edge_weight and whose endpoints survive.
// strict selects > rather than >=.
CoauthNetwork threshold_filter(const CoauthNetwork& net, double min_node_fractional,
                               long long min_edge_weight, bool strict);

}  // namespace coauthnet
