// Statistical comparison of two networks or marginal distributions:
// QAP permutation correlation, Jaccard overlap, two-proportion z-tests
// with Bonferroni adjustment, share tables, Pearson/Spearman.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coauthnet/network.hpp"

namespace coauthnet {

// Two symmetric weight matrices over the union of node sets, aligned by
// key with zero fill; diagonals are structural zeros.
struct MatrixPair {
  std::vector<std::string> keys;  // sorted union
  std::vector<std::vector<double>> a;
  std::vector<std::vector<double>> b;

  static MatrixPair from_networks(const CoauthNetwork& first, const CoauthNetwork& second);
  size_t size() const { return keys.size(); }
};

struct QapResult {
  double r = 0.0;
  double p = 1.0;
  int n_permutations = 0;
  std::uint64_t seed = 0;
};

// Pearson correlation over upper-triangle cells; the p-value counts node
// relabelings of the second matrix with r at least the observed one,
// add-one corrected. Undefined when either triangle has zero variance.
// Permutations are evaluated with per-permutation derived seeds, so the
// p-value is independent of the thread count.
std::optional<QapResult> qap_correlation(const MatrixPair& pair, int n_permutations,
                                         std::uint64_t seed);

// |A and B| / |A or B| over binarized upper-triangle cells; undefined
// when both supports are empty.
std::optional<double> jaccard_index(const MatrixPair& pair);

struct ZTestResult {
  double z = 0.0;
  double p_two_sided = 1.0;
  double significant_at = 0.05;  // the (possibly adjusted) alpha in force
};

// Pooled two-proportion z-test. Exactly equal proportions give z = 0,
// which also covers the degenerate pooled estimates of 0 or 1.
ZTestResult two_proportion_z(long long x1, long long n1, long long x2, long long n2,
                             double alpha = 0.05);

double bonferroni_alpha(double alpha, int m);

struct ShareRow {
  std::string entity;
  long long count_a = 0;
  long long count_b = 0;
  double share_a = 0.0;
  double share_b = 0.0;
  double z = 0.0;
};

// Per-entity shares of two count distributions with a z-score per entity;
// rows sorted by z descending. The z-tests run at `alpha` Bonferroni-
// adjusted for the number of entities compared.
std::vector<ShareRow> share_table(const std::map<std::string, long long>& totals_a,
                                  const std::map<std::string, long long>& totals_b,
                                  double alpha = 0.05);

std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys);

// Pearson on mid-ranks (ties get the average rank).
std::optional<double> spearman(std::span<const double> xs, std::span<const double> ys);

}  // namespace coauthnet
