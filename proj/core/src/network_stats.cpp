#include "coauthnet/network_stats.hpp"

#include <algorithm>
#include <span>

#include "parallel.hpp"

namespace coauthnet {

namespace {

// Flat CSR view of the unweighted skeleton; neighbor lists sorted.
struct FlatAdjacency {
  std::vector<int> offsets;
  std::vector<int> neighbors;

  std::span<const int> of(int v) const {
    return {neighbors.data() + offsets[v],
            static_cast<size_t>(offsets[v + 1] - offsets[v])};
  }
};

FlatAdjacency flatten(const CoauthNetwork& net) {
  int n = net.node_count();
  FlatAdjacency flat;
  flat.offsets.resize(n + 1, 0);
  for (int v = 0; v < n; ++v) flat.offsets[v + 1] = flat.offsets[v] + net.degree(v);
  flat.neighbors.resize(flat.offsets[n]);
  for (int v = 0; v < n; ++v) {
    int at = flat.offsets[v];
    for (const auto& [u, _] : net.neighbors(v)) flat.neighbors[at++] = u;
  }
  return flat;
}

// Brandes single-source pass on the unweighted skeleton, accumulating
// pair dependencies into `acc`. Scratch buffers come from the caller so a
// chunk of sources reuses them.
struct BrandesScratch {
  std::vector<int> dist, order, queue;
  std::vector<double> sigma, delta;
  std::vector<std::vector<int>> preds;

  explicit BrandesScratch(int n) : dist(n), order(), queue(), sigma(n), delta(n), preds(n) {
    order.reserve(n);
    queue.reserve(n);
  }
};

void accumulate_from_source(const FlatAdjacency& adj, int n, int source,
                            BrandesScratch& scratch, std::vector<double>& acc) {
  std::fill(scratch.dist.begin(), scratch.dist.end(), -1);
  std::fill(scratch.sigma.begin(), scratch.sigma.end(), 0.0);
  std::fill(scratch.delta.begin(), scratch.delta.end(), 0.0);
  for (auto& p : scratch.preds) p.clear();
  scratch.order.clear();
  scratch.queue.clear();

  scratch.dist[source] = 0;
  scratch.sigma[source] = 1.0;
  scratch.queue.push_back(source);
  for (size_t head = 0; head < scratch.queue.size(); ++head) {
    int v = scratch.queue[head];
    scratch.order.push_back(v);
    for (int u : adj.of(v)) {
      if (scratch.dist[u] == -1) {
        scratch.dist[u] = scratch.dist[v] + 1;
        scratch.queue.push_back(u);
      }
      if (scratch.dist[u] == scratch.dist[v] + 1) {
        scratch.sigma[u] += scratch.sigma[v];
        scratch.preds[u].push_back(v);
      }
    }
  }
  for (auto it = scratch.order.rbegin(); it != scratch.order.rend(); ++it) {
    int w = *it;
    for (int v : scratch.preds[w])
      scratch.delta[v] += scratch.sigma[v] / scratch.sigma[w] * (1.0 + scratch.delta[w]);
    if (w != source) acc[w] += scratch.delta[w];
  }
  (void)n;
}

std::vector<double> betweenness_raw(const CoauthNetwork& net) {
  int n = net.node_count();
  std::vector<double> total(n, 0.0);
  if (n == 0) return total;
  FlatAdjacency adj = flatten(net);
  int chunks = std::min(n, 64);
  std::vector<std::vector<double>> partial(chunks, std::vector<double>(n, 0.0));
  detail::run_chunks(n, chunks, [&](int chunk, long long begin, long long end) {
    BrandesScratch scratch(n);
    for (long long s = begin; s < end; ++s)
      accumulate_from_source(adj, n, static_cast<int>(s), scratch, partial[chunk]);
  });
  for (int c = 0; c < chunks; ++c)
    for (int v = 0; v < n; ++v) total[v] += partial[c][v];
  for (double& v : total) v /= 2.0;  // each unordered pair visited from both ends
  return total;
}

}  // namespace

std::optional<double> density(const CoauthNetwork& net, DensityVariant variant) {
  double n = static_cast<double>(net.node_count());
  double m = static_cast<double>(net.edge_count());
  switch (variant) {
    case DensityVariant::simple:
      if (net.node_count() < 2) return std::nullopt;
      return 2.0 * m / (n * (n - 1.0));
    case DensityVariant::loops:
      if (net.node_count() < 1) return std::nullopt;
      return 2.0 * m / (n * n);
  }
  return std::nullopt;
}

std::optional<double> average_degree(const CoauthNetwork& net) {
  if (net.node_count() < 1) return std::nullopt;
  return 2.0 * static_cast<double>(net.edge_count()) / static_cast<double>(net.node_count());
}

std::vector<double> betweenness(const CoauthNetwork& net, bool normalized) {
  std::vector<double> raw = betweenness_raw(net);
  if (!normalized) return raw;
  int n = net.node_count();
  if (n < 3) return std::vector<double>(n, 0.0);
  double pairs = static_cast<double>(n - 1) * static_cast<double>(n - 2) / 2.0;
  for (double& v : raw) v /= pairs;
  return raw;
}

std::optional<double> betweenness_centralization(const CoauthNetwork& net) {
  CoauthNetwork giant = largest_component(net);
  int n = giant.node_count();
  if (n < 3) return std::nullopt;
  std::vector<double> values = betweenness(giant, true);
  double best = *std::max_element(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += best - v;
  return sum / static_cast<double>(n - 1);
}

std::vector<std::optional<double>> closeness(const CoauthNetwork& net) {
  int n = net.node_count();
  std::vector<std::optional<double>> result(n);
  if (n == 0) return result;
  FlatAdjacency adj = flatten(net);
  std::vector<std::pair<long long, long long>> sums(n);  // distance sum, reached count
  int chunks = std::min(n, 64);
  detail::run_chunks(n, chunks, [&](int, long long begin, long long end) {
    std::vector<int> dist(n);
    std::vector<int> queue;
    queue.reserve(n);
    for (long long s = begin; s < end; ++s) {
      std::fill(dist.begin(), dist.end(), -1);
      queue.clear();
      dist[s] = 0;
      queue.push_back(static_cast<int>(s));
      long long total = 0, reached = 0;
      for (size_t head = 0; head < queue.size(); ++head) {
        int v = queue[head];
        if (v != s) {
          total += dist[v];
          ++reached;
        }
        for (int u : adj.of(v)) {
          if (dist[u] == -1) {
            dist[u] = dist[v] + 1;
            queue.push_back(u);
          }
        }
      }
      sums[s] = {total, reached};
    }
  });
  for (int v = 0; v < n; ++v) {
    if (sums[v].second == 0) continue;  // isolate
    result[v] = static_cast<double>(sums[v].second) / static_cast<double>(sums[v].first);
  }
  return result;
}

ClusteringCoefficients clustering(const CoauthNetwork& net) {
  int n = net.node_count();
  FlatAdjacency adj = flatten(net);
  // links(v) = |edges among N(v)| via sorted-list intersections:
  // sum_u |N(v) cap N(u)| over neighbors u counts each such edge twice.
  std::vector<long long> links(n, 0);
  int chunks = std::min(n, 64);
  detail::run_chunks(n, chunks, [&](int, long long begin, long long end) {
    for (long long v = begin; v < end; ++v) {
      auto nv = adj.of(static_cast<int>(v));
      if (nv.size() < 2) continue;
      long long twice = 0;
      for (int u : nv) {
        auto nu = adj.of(u);
        size_t i = 0, j = 0;
        while (i < nv.size() && j < nu.size()) {
          if (nv[i] < nu[j]) ++i;
          else if (nv[i] > nu[j]) ++j;
          else {
            ++twice;
            ++i;
            ++j;
          }
        }
      }
      links[v] = twice / 2;
    }
  });
  long long triangle_link_sum = 0;
  long long triple_count = 0;
  double local_sum = 0.0;
  long long local_nodes = 0;
  for (int v = 0; v < n; ++v) {
    long long d = net.degree(v);
    if (d < 2) continue;
    triangle_link_sum += links[v];
    triple_count += d * (d - 1) / 2;
    local_sum += 2.0 * static_cast<double>(links[v]) / (static_cast<double>(d) * (d - 1));
    ++local_nodes;
  }
  ClusteringCoefficients out;
  if (local_nodes > 0) out.average_local = local_sum / static_cast<double>(local_nodes);
  if (triple_count > 0)
    out.transitivity = static_cast<double>(triangle_link_sum) / static_cast<double>(triple_count);
  return out;
}

CentralityReport centrality_report(const CoauthNetwork& net) {
  CentralityReport report;
  int n = net.node_count();
  std::vector<double> btw = betweenness(net, true);
  std::vector<std::optional<double>> cls = closeness(net);
  report.per_node.reserve(n);
  for (int v = 0; v < n; ++v) {
    CentralityReport::NodeRow row;
    row.key = net.node(v).key;
    row.degree = net.degree(v);
    row.normalized_degree = n > 1 ? static_cast<double>(row.degree) / (n - 1) : 0.0;
    row.betweenness = btw[v];
    row.closeness = cls[v];
    report.per_node.push_back(std::move(row));
  }
  report.density_simple = density(net, DensityVariant::simple);
  report.density_loops = density(net, DensityVariant::loops);
  report.average_degree = average_degree(net);
  report.betweenness_centralization = betweenness_centralization(net);
  ClusteringCoefficients cc = clustering(net);
  report.clustering_average_local = cc.average_local;
  report.transitivity = cc.transitivity;
  return report;
}

}  // namespace coauthnet
