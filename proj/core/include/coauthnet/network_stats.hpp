// Per-network statistics: density, average degree, shortest-path
// centralities with Freeman-style centralization, and clustering.
// All distance-based measures run on the unweighted skeleton.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coauthnet/network.hpp"

namespace coauthnet {

enum class DensityVariant {
  simple,  // 2m / (n(n-1)), needs n >= 2
  loops,   // 2m / n^2, needs n >= 1
};

std::optional<double> density(const CoauthNetwork& net, DensityVariant variant);

std::optional<double> average_degree(const CoauthNetwork& net);  // 2m/n, n >= 1

// Shortest-path betweenness via per-source BFS dependency accumulation.
// Normalized values divide by (n-1)(n-2)/2; disconnected pairs contribute
// nothing. With fewer than 3 nodes the normalized vector is all zeros.
std::vector<double> betweenness(const CoauthNetwork& net, bool normalized = true);

// Freeman centralization of normalized betweenness, computed on the
// largest component: sum of (max - c_i) / (n-1). Undefined below 3 nodes.
std::optional<double> betweenness_centralization(const CoauthNetwork& net);

// Classical closeness within each component: (n_comp - 1) / sum of
// distances. Undefined for isolates.
std::vector<std::optional<double>> closeness(const CoauthNetwork& net);

struct ClusteringCoefficients {
  // Mean local clustering over nodes with degree >= 2; absent when no
  // such node exists.
  std::optional<double> average_local;
  // 3 * triangles / connected triples; absent when there is no triple.
  std::optional<double> transitivity;
};

ClusteringCoefficients clustering(const CoauthNetwork& net);

struct CentralityReport {
  struct NodeRow {
    std::string key;
    int degree = 0;
    double normalized_degree = 0.0;
    double betweenness = 0.0;
    std::optional<double> closeness;
  };
  std::vector<NodeRow> per_node;  // network node order
  std::optional<double> density_simple;
  std::optional<double> density_loops;
  std::optional<double> average_degree;
  std::optional<double> betweenness_centralization;
  std::optional<double> clustering_average_local;
  std::optional<double> transitivity;
};

CentralityReport centrality_report(const CoauthNetwork& net);

}  // namespace coauthnet
