#include "coauthnet/compare.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "parallel.hpp"

namespace coauthnet {

namespace {

// Correlation with value-sorted accumulation: the result depends only on
// the multiset of (x, y) pairs, so simultaneous relabelings reproduce it
// bit for bit.
std::optional<double> pearson_canonical(std::vector<std::pair<double, double>> pairs) {
  std::sort(pairs.begin(), pairs.end());
  size_t n = pairs.size();
  if (n < 2) return std::nullopt;
  long double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (const auto& [x, y] : pairs) {
    sx += x;
    sy += y;
    sxx += static_cast<long double>(x) * x;
    syy += static_cast<long double>(y) * y;
    sxy += static_cast<long double>(x) * y;
  }
  long double nn = static_cast<long double>(n);
  long double vx = nn * sxx - sx * sx;
  long double vy = nn * syy - sy * sy;
  long double cov = nn * sxy - sx * sy;
  if (vx <= 0 || vy <= 0) return std::nullopt;
  if (cov == vx && cov == vy) return 1.0;  // Cauchy-Schwarz equality, e.g. identical cells
  return static_cast<double>(cov / (std::sqrt(vx) * std::sqrt(vy)));
}

double standard_normal_two_sided_p(double z) {
  return std::erfc(std::abs(z) / std::sqrt(2.0));
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::vector<double> midranks(std::span<const double> xs) {
  size_t n = xs.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(n);
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j + 1 < n && xs[order[j + 1]] == xs[order[i]]) ++j;
    double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

MatrixPair MatrixPair::from_networks(const CoauthNetwork& first, const CoauthNetwork& second) {
  std::set<std::string> keys;
  for (int v = 0; v < first.node_count(); ++v) keys.insert(first.node(v).key);
  for (int v = 0; v < second.node_count(); ++v) keys.insert(second.node(v).key);
  MatrixPair pair;
  pair.keys.assign(keys.begin(), keys.end());
  size_t n = pair.keys.size();
  pair.a.assign(n, std::vector<double>(n, 0.0));
  pair.b.assign(n, std::vector<double>(n, 0.0));
  auto fill = [&](const CoauthNetwork& net, std::vector<std::vector<double>>& m) {
    std::vector<int> at(net.node_count());
    for (int v = 0; v < net.node_count(); ++v) {
      auto it = std::lower_bound(pair.keys.begin(), pair.keys.end(), net.node(v).key);
      at[v] = static_cast<int>(it - pair.keys.begin());
    }
    for (const auto& e : net.edges()) {
      m[at[e.a]][at[e.b]] = static_cast<double>(e.weight);
      m[at[e.b]][at[e.a]] = static_cast<double>(e.weight);
    }
  };
  fill(first, pair.a);
  fill(second, pair.b);
  return pair;
}

std::optional<QapResult> qap_correlation(const MatrixPair& pair, int n_permutations,
                                         std::uint64_t seed) {
  if (n_permutations < 1) throw std::invalid_argument("qap_correlation: n_permutations must be >= 1");
  size_t n = pair.size();
  std::vector<std::pair<double, double>> cells;
  cells.reserve(n * (n - 1) / 2);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) cells.push_back({pair.a[i][j], pair.b[i][j]});
  auto observed = pearson_canonical(cells);
  if (!observed) return std::nullopt;
  double r_obs = *observed;

  // Plain accumulation is enough inside the permutation loop; only the
  // count of r_perm >= r_obs feeds the p-value.
  auto permuted_r = [&](std::uint64_t perm_seed) {
    std::mt19937_64 rng(perm_seed);
    std::vector<size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    long double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    size_t count = 0;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) {
        double x = pair.a[i][j];
        double y = pair.b[perm[i]][perm[j]];
        sx += x;
        sy += y;
        sxx += static_cast<long double>(x) * x;
        syy += static_cast<long double>(y) * y;
        sxy += static_cast<long double>(x) * y;
        ++count;
      }
    long double nn = static_cast<long double>(count);
    long double vx = nn * sxx - sx * sx;
    long double vy = nn * syy - sy * sy;
    if (vx <= 0 || vy <= 0) return 1.0;  // constant matrix: correlation degenerate
    return static_cast<double>((nn * sxy - sx * sy) / (std::sqrt(vx) * std::sqrt(vy)));
  };

  int chunks = std::min(n_permutations, 64);
  std::vector<long long> hits(chunks, 0);
  detail::run_chunks(n_permutations, chunks, [&](int chunk, long long begin, long long end) {
    for (long long k = begin; k < end; ++k)
      if (permuted_r(splitmix64(seed ^ static_cast<std::uint64_t>(k))) >= r_obs) ++hits[chunk];
  });
  long long total_hits = std::accumulate(hits.begin(), hits.end(), 0LL);

  QapResult result;
  result.r = r_obs;
  result.p = (1.0 + static_cast<double>(total_hits)) / (1.0 + static_cast<double>(n_permutations));
  result.n_permutations = n_permutations;
  result.seed = seed;
  return result;
}

std::optional<double> jaccard_index(const MatrixPair& pair) {
  size_t n = pair.size();
  long long both = 0, either = 0;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      bool in_a = pair.a[i][j] > 0;
      bool in_b = pair.b[i][j] > 0;
      if (in_a && in_b) ++both;
      if (in_a || in_b) ++either;
    }
  if (either == 0) return std::nullopt;
  return static_cast<double>(both) / static_cast<double>(either);
}

ZTestResult two_proportion_z(long long x1, long long n1, long long x2, long long n2,
                             double alpha) {
  if (n1 <= 0 || n2 <= 0) throw std::invalid_argument("two_proportion_z: sample sizes must be > 0");
  if (x1 < 0 || x1 > n1 || x2 < 0 || x2 > n2)
    throw std::invalid_argument("two_proportion_z: counts must lie in [0, n]");
  ZTestResult result;
  result.significant_at = alpha;
  if (x1 * n2 == x2 * n1) {  // equal proportions, includes pooled 0 and 1
    result.z = 0.0;
    result.p_two_sided = 1.0;
    return result;
  }
  double p1 = static_cast<double>(x1) / static_cast<double>(n1);
  double p2 = static_cast<double>(x2) / static_cast<double>(n2);
  double pooled = static_cast<double>(x1 + x2) / static_cast<double>(n1 + n2);
  double se = std::sqrt(pooled * (1.0 - pooled) *
                        (1.0 / static_cast<double>(n1) + 1.0 / static_cast<double>(n2)));
  result.z = (p1 - p2) / se;
  result.p_two_sided = standard_normal_two_sided_p(result.z);
  return result;
}

double bonferroni_alpha(double alpha, int m) {
  if (m < 1) throw std::invalid_argument("bonferroni_alpha: m must be >= 1");
  return alpha / static_cast<double>(m);
}

std::vector<ShareRow> share_table(const std::map<std::string, long long>& totals_a,
                                  const std::map<std::string, long long>& totals_b, double alpha) {
  if (totals_a.empty() || totals_b.empty())
    throw std::invalid_argument("share_table: both totals must be nonempty");
  long long grand_a = 0, grand_b = 0;
  std::set<std::string> keys;
  for (const auto& [k, v] : totals_a) {
    grand_a += v;
    keys.insert(k);
  }
  for (const auto& [k, v] : totals_b) {
    grand_b += v;
    keys.insert(k);
  }
  if (grand_a <= 0 || grand_b <= 0)
    throw std::invalid_argument("share_table: grand totals must be positive");
  double adjusted = bonferroni_alpha(alpha, static_cast<int>(keys.size()));
  std::vector<ShareRow> rows;
  rows.reserve(keys.size());
  for (const std::string& key : keys) {
    ShareRow row;
    row.entity = key;
    auto ia = totals_a.find(key);
    auto ib = totals_b.find(key);
    row.count_a = ia == totals_a.end() ? 0 : ia->second;
    row.count_b = ib == totals_b.end() ? 0 : ib->second;
    row.share_a = static_cast<double>(row.count_a) / static_cast<double>(grand_a);
    row.share_b = static_cast<double>(row.count_b) / static_cast<double>(grand_b);
    row.z = two_proportion_z(row.count_a, grand_a, row.count_b, grand_b, adjusted).z;
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(), [](const ShareRow& a, const ShareRow& b) {
    if (a.z != b.z) return a.z > b.z;
    return a.entity < b.entity;
  });
  return rows;
}

std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("pearson: length mismatch");
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) pairs.push_back({xs[i], ys[i]});
  return pearson_canonical(std::move(pairs));
}

std::optional<double> spearman(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("spearman: length mismatch");
  std::vector<double> rx = midranks(xs);
  std::vector<double> ry = midranks(ys);
  return pearson(rx, ry);
}

}  // namespace coauthnet
