// Deterministic graph generators for tests and acceptance runs.
#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "coauthnet/community.hpp"
#include "coauthnet/network.hpp"

namespace testgen {

inline std::string node_key(int i) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "N%03d", i);
  return buf;
}

// G(n, p); weights uniform in [1, max_weight].
inline coauthnet::CoauthNetwork gnp(int n, double p, std::uint64_t seed, int max_weight = 1) {
  coauthnet::CoauthNetwork net;
  for (int i = 0; i < n; ++i) net.add_node(node_key(i));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> weight(1, max_weight);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng) < p) net.add_edge(i, j, weight(rng));
  return net;
}

inline coauthnet::CoauthNetwork random_tree(int n, std::uint64_t seed) {
  coauthnet::CoauthNetwork net;
  for (int i = 0; i < n; ++i) net.add_node(node_key(i));
  std::mt19937_64 rng(seed);
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> parent(0, i - 1);
    net.add_edge(parent(rng), i, 1);
  }
  return net;
}

struct Planted {
  coauthnet::CoauthNetwork net;
  coauthnet::Partition partition;
};

// Dense blocks, sparse cross links.
inline Planted planted_blocks(int blocks, int block_size, double p_in, double p_out,
                              std::uint64_t seed) {
  Planted out;
  int n = blocks * block_size;
  std::vector<int> labels(n);
  for (int i = 0; i < n; ++i) {
    out.net.add_node(node_key(i));
    labels[i] = i / block_size;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double p = labels[i] == labels[j] ? p_in : p_out;
      if (coin(rng) < p) out.net.add_edge(i, j, 1);
    }
  out.partition = coauthnet::Partition::from_labels(labels);
  return out;
}

// A connected graph on `core` nodes plus `isolates` extra nodes.
inline coauthnet::CoauthNetwork connected_with_isolates(int core, int isolates,
                                                        std::uint64_t seed) {
  coauthnet::CoauthNetwork net = random_tree(core, seed);
  std::mt19937_64 rng(seed ^ 0x9E3779B97F4A7C15ULL);
  std::uniform_int_distribution<int> pick(0, core - 1);
  for (int extra = 0; extra < core; ++extra) {
    int a = pick(rng), b = pick(rng);
    if (a != b && net.weight(a, b) == 0) net.add_edge(a, b, 1);
  }
  for (int i = 0; i < isolates; ++i) net.add_node("ISO" + std::to_string(i));
  return net;
}

}  // namespace testgen
