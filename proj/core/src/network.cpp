#include "coauthnet/network.hpp"

#include <algorithm>
#include <stdexcept>

namespace coauthnet {

int CoauthNetwork::add_node(NetworkNode node) {
  if (node.key.empty()) throw std::invalid_argument("add_node: empty key");
  auto [it, inserted] = index_.try_emplace(node.key, static_cast<int>(nodes_.size()));
  if (!inserted) throw std::invalid_argument("add_node: duplicate key '" + node.key + "'");
  nodes_.push_back(std::move(node));
  adj_.emplace_back();
  return it->second;
}

void CoauthNetwork::add_edge(int a, int b, long long weight) {
  if (a < 0 || b < 0 || a >= node_count() || b >= node_count())
    throw std::out_of_range("add_edge: node index out of range");
  if (a == b) throw std::invalid_argument("add_edge: self-loops are not allowed");
  if (weight < 1) throw std::invalid_argument("add_edge: weights must be >= 1");
  if (adj_[a].count(b)) throw std::invalid_argument("add_edge: duplicate edge");
  adj_[a].emplace(b, weight);
  adj_[b].emplace(a, weight);
  ++m_;
  total_weight_ += weight;
}

void CoauthNetwork::add_edge(std::string_view a, std::string_view b, long long weight) {
  auto ia = find_node(a);
  auto ib = find_node(b);
  if (!ia || !ib) throw std::invalid_argument("add_edge: unknown node key");
  add_edge(*ia, *ib, weight);
}

std::optional<int> CoauthNetwork::find_node(std::string_view key) const {
  auto it = index_.find(std::string(key));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

long long CoauthNetwork::weight(int a, int b) const {
  auto it = adj_[a].find(b);
  return it == adj_[a].end() ? 0 : it->second;
}

long long CoauthNetwork::strength(int i) const {
  long long s = 0;
  for (const auto& [_, w] : adj_[i]) s += w;
  return s;
}

std::vector<CoauthNetwork::Edge> CoauthNetwork::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<size_t>(m_));
  for (int a = 0; a < node_count(); ++a)
    for (const auto& [b, w] : adj_[a])
      if (a < b) out.push_back({a, b, w});
  return out;
}

bool CoauthNetwork::operator==(const CoauthNetwork& other) const {
  return nodes_ == other.nodes_ && edges() == other.edges();
}

std::vector<std::vector<int>> components(const CoauthNetwork& net) {
  int n = net.node_count();
  std::vector<int> label(n, -1);
  std::vector<std::vector<int>> comps;
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (label[s] != -1) continue;
    int id = static_cast<int>(comps.size());
    comps.emplace_back();
    label[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      comps[id].push_back(v);
      for (const auto& [u, _] : net.neighbors(v)) {
        if (label[u] == -1) {
          label[u] = id;
          stack.push_back(u);
        }
      }
    }
    std::sort(comps[id].begin(), comps[id].end());
  }
  std::stable_sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
  });
  return comps;
}

CoauthNetwork largest_component(const CoauthNetwork& net) {
  auto comps = components(net);
  if (comps.empty()) return {};
  return induced_subnetwork(net, comps.front());
}

CoauthNetwork induced_subnetwork(const CoauthNetwork& net, std::span<const int> nodes) {
  CoauthNetwork out;
  std::unordered_map<int, int> remap;
  remap.reserve(nodes.size());
  for (int v : nodes) {
    if (v < 0 || v >= net.node_count())
      throw std::out_of_range("induced_subnetwork: node index out of range");
    remap[v] = out.add_node(net.node(v));
  }
  for (int v : nodes)
    for (const auto& [u, w] : net.neighbors(v)) {
      auto it = remap.find(u);
      if (it != remap.end() && v < u) out.add_edge(remap[v], it->second, w);
    }
  return out;
}

CoauthNetwork ego_network(const CoauthNetwork& net, std::string_view ego, bool remove_inside) {
  auto e = net.find_node(ego);
  if (!e) throw std::invalid_argument("ego_network: unknown ego '" + std::string(ego) + "'");
  std::vector<int> keep{*e};
  for (const auto& [u, _] : net.neighbors(*e)) keep.push_back(u);
  std::sort(keep.begin(), keep.end());
  CoauthNetwork sub = induced_subnetwork(net, keep);
  if (!remove_inside) return sub;
  CoauthNetwork star;
  for (int i = 0; i < sub.node_count(); ++i) star.add_node(sub.node(i));
  int ego_idx = *sub.find_node(ego);
  for (const auto& [u, w] : sub.neighbors(ego_idx)) star.add_edge(ego_idx, u, w);
  return star;
}

CoauthNetwork shrink(const CoauthNetwork& net, std::span<const std::string> group,
                     std::string_view label) {
  if (group.empty()) throw std::invalid_argument("shrink: empty group");
  std::vector<bool> in_group(net.node_count(), false);
  for (const std::string& key : group) {
    auto idx = net.find_node(key);
    if (!idx) throw std::invalid_argument("shrink: unknown group member '" + key + "'");
    in_group[*idx] = true;
  }
  CoauthNetwork out;
  NetworkNode merged{std::string(label), 0.0, 0};
  for (int v = 0; v < net.node_count(); ++v) {
    if (!in_group[v]) continue;
    merged.fractional_size += net.node(v).fractional_size;
    merged.whole_size += net.node(v).whole_size;
  }
  std::vector<int> remap(net.node_count(), -1);
  int merged_idx = out.add_node(std::move(merged));
  for (int v = 0; v < net.node_count(); ++v)
    if (!in_group[v]) remap[v] = out.add_node(net.node(v));

  std::map<int, long long> boundary;  // outside node -> summed weight
  for (int v = 0; v < net.node_count(); ++v) {
    for (const auto& [u, w] : net.neighbors(v)) {
      if (in_group[v] && !in_group[u]) {
        boundary[remap[u]] += w;
      } else if (!in_group[v] && !in_group[u] && v < u) {
        out.add_edge(remap[v], remap[u], w);
      }
    }
  }
  for (const auto& [u, w] : boundary) out.add_edge(merged_idx, u, w);
  return out;
}

CoauthNetwork threshold_filter(const CoauthNetwork& net, double min_node_fractional,
                               long long min_edge_weight, bool strict) {
  auto node_passes = [&](const NetworkNode& n) {
    return strict ? n.fractional_size > min_node_fractional
                  : n.fractional_size >= min_node_fractional;
  };
  auto edge_passes = [&](long long w) {
    return strict ? w > min_edge_weight : w >= min_edge_weight;
  };
  std::vector<int> keep;
  for (int v = 0; v < net.node_count(); ++v)
    if (node_passes(net.node(v))) keep.push_back(v);
  CoauthNetwork sub = induced_subnetwork(net, keep);
  CoauthNetwork out;
  for (int v = 0; v < sub.node_count(); ++v) out.add_node(sub.node(v));
  for (const auto& e : sub.edges())
    if (edge_passes(e.weight)) out.add_edge(e.a, e.b, e.weight);
  return out;
}

}  // namespace coauthnet
