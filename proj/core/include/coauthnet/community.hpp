// Modularity and Louvain community optimization, plus an exhaustive
// set-partition search for small networks.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "coauthnet/network.hpp"

namespace coauthnet {

struct Partition {
  std::vector<int> community;  // node index -> community id, dense 0..k-1
  int community_count = 0;

  // Renumbers arbitrary labels densely in order of first appearance.
  static Partition from_labels(std::span<const int> labels);

  std::vector<std::vector<int>> groups() const;
  bool operator==(const Partition&) const = default;
};

// Q = sum_c [ W_c/W - (S_c/2W)^2 ] with W the total edge weight, W_c the
// intra-community weight and S_c the community strength. Unweighted mode
// treats every edge as 1. Undefined on an empty edge set.
std::optional<double> modularity(const CoauthNetwork& net, const Partition& partition,
                                 bool weighted, double resolution = 1.0);

struct LouvainOptions {
  bool weighted = true;
  double resolution = 1.0;
};

struct LouvainResult {
  Partition partition;
  std::optional<double> q;
  std::uint64_t seed = 0;
};

// Two-phase local moving + aggregation until no move improves Q. Node
// visit order is shuffled by `seed`; runs are deterministic per seed.
// Gain ties keep the current community.
LouvainResult louvain(const CoauthNetwork& net, std::uint64_t seed, LouvainOptions options = {});

// Independent seeded runs in parallel; returns the best-Q partition, ties
// resolved toward the lowest seed.
LouvainResult best_louvain(const CoauthNetwork& net, std::span<const std::uint64_t> seeds,
                           LouvainOptions options = {});

// Exhaustive Bell-number enumeration over all set partitions; refuses
// networks above 12 nodes. Ties break toward fewer communities, then the
// lexicographically first assignment.
std::pair<Partition, double> brute_force_best_partition(const CoauthNetwork& net,
                                                        bool weighted = true);

}  // namespace coauthnet
