#include "coauthnet/community.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

namespace coauthnet {

namespace {

// Working graph for the optimization levels. Self-loops hold collapsed
// intra-community weight; a loop of weight l contributes 2l to its node's
// strength, which keeps Q invariant under aggregation.
struct LevelGraph {
  int n = 0;
  std::vector<std::vector<std::pair<int, double>>> adj;
  std::vector<double> loop;
  std::vector<double> strength;
  double two_m = 0.0;
};

LevelGraph level_graph_from(const CoauthNetwork& net, bool weighted) {
  LevelGraph g;
  g.n = net.node_count();
  g.adj.resize(g.n);
  g.loop.assign(g.n, 0.0);
  g.strength.assign(g.n, 0.0);
  for (int v = 0; v < g.n; ++v)
    for (const auto& [u, w] : net.neighbors(v)) {
      double weight = weighted ? static_cast<double>(w) : 1.0;
      g.adj[v].push_back({u, weight});
      g.strength[v] += weight;
    }
  for (int v = 0; v < g.n; ++v) g.two_m += g.strength[v];
  return g;
}

double modularity_of(const LevelGraph& g, const std::vector<int>& community, int k,
                     double resolution) {
  std::vector<double> intra(k, 0.0);   // ordered-pair weight within community
  std::vector<double> total(k, 0.0);   // community strength
  for (int v = 0; v < g.n; ++v) {
    int c = community[v];
    total[c] += g.strength[v] + 2.0 * g.loop[v];
    intra[c] += 2.0 * g.loop[v];
    for (const auto& [u, w] : g.adj[v])
      if (community[u] == c) intra[c] += w;
  }
  double two_m = g.two_m;
  for (int v = 0; v < g.n; ++v) two_m += 2.0 * g.loop[v];
  if (two_m <= 0.0) return 0.0;
  double q = 0.0;
  for (int c = 0; c < k; ++c) {
    double share = total[c] / two_m;
    q += intra[c] / two_m - resolution * share * share;
  }
  return q;
}

// One level of local moving; returns true when at least one node moved.
// The visit order is re-shuffled every pass.
bool local_moving(const LevelGraph& g, std::vector<int>& community, std::mt19937_64& rng,
                  double resolution) {
  double two_m = g.two_m;
  for (int v = 0; v < g.n; ++v) two_m += 2.0 * g.loop[v];
  if (two_m <= 0.0) return false;

  std::vector<double> tot(g.n, 0.0);  // community strengths, ids need not be dense
  for (int v = 0; v < g.n; ++v) tot[community[v]] += g.strength[v] + 2.0 * g.loop[v];

  std::vector<int> order(g.n);
  std::iota(order.begin(), order.end(), 0);

  std::vector<double> weight_to(g.n, 0.0);
  std::vector<int> touched;
  std::vector<int> tied;
  bool any_move = false;
  bool improved = true;
  while (improved) {
    improved = false;
    std::shuffle(order.begin(), order.end(), rng);
    for (int v : order) {
      int current = community[v];
      double k_v = g.strength[v] + 2.0 * g.loop[v];
      touched.clear();
      for (const auto& [u, w] : g.adj[v]) {
        int c = community[u];
        if (weight_to[c] == 0.0) touched.push_back(c);
        weight_to[c] += w;
      }
      tot[current] -= k_v;
      // Gain of joining community c relative to staying alone:
      //   weight_to[c] - resolution * tot[c] * k_v / two_m.
      // The node moves to a seeded-random choice among the strictly
      // improving communities; ties with the current community keep the
      // node in place. Random improving moves explore more basins than
      // always taking the maximum while still raising Q on every move.
      double current_gain = weight_to[current] - resolution * tot[current] * k_v / two_m;
      tied.clear();
      std::sort(touched.begin(), touched.end());
      for (int c : touched) {
        if (c == current) continue;
        double gain = weight_to[c] - resolution * tot[c] * k_v / two_m;
        if (gain > current_gain) tied.push_back(c);
      }
      int best = current;
      if (!tied.empty()) {
        size_t pick = tied.size() == 1
                          ? 0
                          : std::uniform_int_distribution<size_t>(0, tied.size() - 1)(rng);
        best = tied[pick];
      }
      tot[best] += k_v;
      for (int c : touched) weight_to[c] = 0.0;
      weight_to[current] = 0.0;
      if (best != current) {
        community[v] = best;
        improved = true;
        any_move = true;
      }
    }
  }
  return any_move;
}

LevelGraph aggregate(const LevelGraph& g, const std::vector<int>& community, int k) {
  LevelGraph next;
  next.n = k;
  next.adj.resize(k);
  next.loop.assign(k, 0.0);
  next.strength.assign(k, 0.0);
  std::vector<std::map<int, double>> merged(k);
  for (int v = 0; v < g.n; ++v) {
    int c = community[v];
    next.loop[c] += g.loop[v];
    for (const auto& [u, w] : g.adj[v]) {
      int d = community[u];
      if (d == c) {
        if (u > v) next.loop[c] += w;  // count each intra edge once
      } else {
        merged[c][d] += w;
      }
    }
  }
  for (int c = 0; c < k; ++c)
    for (const auto& [d, w] : merged[c]) {
      next.adj[c].push_back({d, w});
      next.strength[c] += w;
    }
  for (int c = 0; c < k; ++c) next.two_m += next.strength[c];
  return next;
}

int densify(std::vector<int>& community) {
  std::vector<int> remap(community.size(), -1);
  int k = 0;
  for (int& c : community) {
    if (remap[c] == -1) remap[c] = k++;
    c = remap[c];
  }
  return k;
}

}  // namespace

Partition Partition::from_labels(std::span<const int> labels) {
  Partition p;
  p.community.assign(labels.begin(), labels.end());
  std::map<int, int> remap;
  for (int& c : p.community) {
    auto [it, inserted] = remap.try_emplace(c, p.community_count);
    if (inserted) ++p.community_count;
    c = it->second;
  }
  return p;
}

std::vector<std::vector<int>> Partition::groups() const {
  std::vector<std::vector<int>> out(community_count);
  for (size_t v = 0; v < community.size(); ++v) out[community[v]].push_back(static_cast<int>(v));
  return out;
}

std::optional<double> modularity(const CoauthNetwork& net, const Partition& partition,
                                 bool weighted, double resolution) {
  if (static_cast<int>(partition.community.size()) != net.node_count())
    throw std::invalid_argument("modularity: partition must cover all nodes");
  for (int c : partition.community)
    if (c < 0 || c >= partition.community_count)
      throw std::invalid_argument("modularity: community ids must be dense");
  if (net.edge_count() == 0) return std::nullopt;
  LevelGraph g = level_graph_from(net, weighted);
  return modularity_of(g, partition.community, partition.community_count, resolution);
}

LouvainResult louvain(const CoauthNetwork& net, std::uint64_t seed, LouvainOptions options) {
  if (net.empty()) throw std::invalid_argument("louvain: empty network");
  std::mt19937_64 rng(seed);
  LevelGraph base = level_graph_from(net, options.weighted);

  std::vector<int> flat(net.node_count());
  std::iota(flat.begin(), flat.end(), 0);

  // Rounds of node-level moving on the base graph followed by the
  // multi-level aggregation phase; every accepted move strictly raises Q,
  // so the loop is finite. Later rounds let single nodes leave
  // communities that aggregation merged around them.
  for (int round = 0; round < 64; ++round) {
    bool moved_nodes = local_moving(base, flat, rng, options.resolution);
    int k = densify(flat);

    LevelGraph g = aggregate(base, flat, k);
    std::vector<int> membership(k);  // super-node -> community
    std::iota(membership.begin(), membership.end(), 0);
    bool moved_super = false;
    for (int level = 0; level < 128; ++level) {
      std::vector<int> community(g.n);
      std::iota(community.begin(), community.end(), 0);
      if (!local_moving(g, community, rng, options.resolution)) break;
      moved_super = true;
      int k2 = densify(community);
      for (int& c : membership) c = community[c];
      if (k2 == g.n) break;
      g = aggregate(g, community, k2);
    }
    for (int& c : flat) c = membership[c];
    if (!moved_nodes && !moved_super) break;
  }

  LouvainResult result;
  result.partition = Partition::from_labels(flat);
  result.q = modularity(net, result.partition, options.weighted, options.resolution);
  result.seed = seed;
  return result;
}

LouvainResult best_louvain(const CoauthNetwork& net, std::span<const std::uint64_t> seeds,
                           LouvainOptions options) {
  if (seeds.empty()) throw std::invalid_argument("best_louvain: no seeds");
  std::vector<std::future<LouvainResult>> runs;
  runs.reserve(seeds.size());
  for (std::uint64_t seed : seeds)
    runs.push_back(std::async(std::launch::async, [&net, seed, options] {
      return louvain(net, seed, options);
    }));
  std::optional<LouvainResult> best;
  for (auto& f : runs) {
    LouvainResult r = f.get();
    if (!best || r.q.value_or(0.0) > best->q.value_or(0.0) ||
        (r.q == best->q && r.seed < best->seed))
      best = std::move(r);
  }
  return *best;
}

std::pair<Partition, double> brute_force_best_partition(const CoauthNetwork& net, bool weighted) {
  int n = net.node_count();
  if (n == 0) throw std::invalid_argument("brute_force_best_partition: empty network");
  if (n > 12) throw std::invalid_argument("brute_force_best_partition: refuses more than 12 nodes");
  if (net.edge_count() == 0) throw std::invalid_argument("brute_force_best_partition: no edges");

  std::vector<double> strength(n, 0.0);
  struct E {
    int a, b;
    double w;
  };
  std::vector<E> edges;
  double total_weight = 0.0;
  for (const auto& e : net.edges()) {
    double w = weighted ? static_cast<double>(e.weight) : 1.0;
    edges.push_back({e.a, e.b, w});
    strength[e.a] += w;
    strength[e.b] += w;
    total_weight += w;
  }

  std::vector<int> assign(n, 0);
  std::vector<int> prefix_max(n, 0);  // restricted-growth bound
  std::vector<double> intra(n, 0.0), tot(n, 0.0);

  auto evaluate = [&](int k) {
    std::fill(intra.begin(), intra.begin() + k, 0.0);
    std::fill(tot.begin(), tot.begin() + k, 0.0);
    for (int v = 0; v < n; ++v) tot[assign[v]] += strength[v];
    for (const E& e : edges)
      if (assign[e.a] == assign[e.b]) intra[assign[e.a]] += e.w;
    double q = 0.0;
    for (int c = 0; c < k; ++c) {
      double share = tot[c] / (2.0 * total_weight);
      q += intra[c] / total_weight - share * share;
    }
    return q;
  };

  Partition best_partition;
  double best_q = -2.0;
  int best_k = n + 1;
  while (true) {
    int k = *std::max_element(assign.begin(), assign.end()) + 1;
    double q = evaluate(k);
    if (q > best_q || (q == best_q && k < best_k)) {
      best_q = q;
      best_k = k;
      best_partition.community = assign;
      best_partition.community_count = k;
    }
    // next restricted-growth string in lexicographic order
    int i = n - 1;
    for (; i >= 1; --i) {
      if (assign[i] <= prefix_max[i - 1]) break;
    }
    if (i < 1) break;
    ++assign[i];
    prefix_max[i] = std::max(prefix_max[i - 1], assign[i]);
    for (int j = i + 1; j < n; ++j) {
      assign[j] = 0;
      prefix_max[j] = prefix_max[j - 1];
    }
  }
  return {best_partition, best_q};
}

}  // namespace coauthnet
