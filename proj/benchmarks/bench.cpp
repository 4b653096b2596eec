// Microbenchmarks for the hot paths: tagged parsing, centralities,
// community detection, QAP permutations, co-occurrence assembly.
#include <random>
#include <sstream>

#include <benchmark/benchmark.h>

#include "coauthnet/community.hpp"
#include "coauthnet/compare.hpp"
#include "coauthnet/corpus.hpp"
#include "coauthnet/counting.hpp"
#include "coauthnet/network_stats.hpp"

using namespace coauthnet;

namespace {

CoauthNetwork random_graph(int n, double p, std::uint64_t seed, int max_weight = 5) {
  CoauthNetwork net;
  for (int i = 0; i < n; ++i) net.add_node("N" + std::to_string(i));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> weight(1, max_weight);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng) < p) net.add_edge(i, j, weight(rng));
  return net;
}

std::string tagged_corpus(int n_docs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> n_addr(1, 4);
  std::uniform_int_distribution<int> country(0, 39);
  std::ostringstream out;
  for (int d = 0; d < n_docs; ++d) {
    out << "PT J\nAU Writer, W.\n   Second, S.\nTI Title " << d
        << "\nSO JOURNAL\nDT Article\nLA English\n";
    int k = n_addr(rng);
    for (int a = 0; a < k; ++a)
      out << "C1 Org " << (d % 311) << ", City, COUNTRY-" << country(rng) << "\n";
    out << "UT ID:" << d << "\nER\n";
  }
  out << "EF\n";
  return out.str();
}

void BM_parse_tagged(benchmark::State& state) {
  std::string corpus = tagged_corpus(static_cast<int>(state.range(0)), 7);
  for (auto _ : state) {
    std::istringstream in(corpus);
    ParseDiagnostics diags;
    auto docs = parse_corpus(in, {}, diags);
    benchmark::DoNotOptimize(docs);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_parse_tagged)->Arg(2000)->Arg(10000);

void BM_betweenness(benchmark::State& state) {
  CoauthNetwork net = random_graph(static_cast<int>(state.range(0)), 0.05, 11);
  for (auto _ : state) {
    auto values = betweenness(net, true);
    benchmark::DoNotOptimize(values);
  }
}
BENCHMARK(BM_betweenness)->Arg(200)->Arg(500);

void BM_louvain(benchmark::State& state) {
  CoauthNetwork net = random_graph(static_cast<int>(state.range(0)), 0.04, 13, 4);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto result = louvain(net, seed++);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_louvain)->Arg(300)->Arg(800);

void BM_qap(benchmark::State& state) {
  CoauthNetwork a = random_graph(150, 0.15, 17, 50);
  CoauthNetwork b = random_graph(150, 0.15, 18, 50);
  MatrixPair pair = MatrixPair::from_networks(a, b);
  for (auto _ : state) {
    auto result = qap_correlation(pair, static_cast<int>(state.range(0)), 5);
    benchmark::DoNotOptimize(result);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_qap)->Arg(100)->Arg(500);

void BM_cooccurrence(benchmark::State& state) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> n_addr(1, 5);
  std::uniform_int_distribution<int> country(0, 149);
  int n_docs = static_cast<int>(state.range(0));
  std::vector<Document> docs(n_docs);
  std::vector<std::vector<Affiliation>> affs(n_docs);
  for (int d = 0; d < n_docs; ++d) {
    docs[d].id = "D" + std::to_string(d);
    docs[d].doc_type = DocType::article;
    int k = n_addr(rng);
    for (int a = 0; a < k; ++a) {
      Affiliation aff;
      aff.org_key = "ORG";
      aff.country = "C" + std::to_string(country(rng));
      affs[d].push_back(aff);
    }
  }
  for (auto _ : state) {
    auto net = build_cooccurrence(build_incidence(docs, affs, entity_country()));
    benchmark::DoNotOptimize(net);
  }
  state.SetItemsProcessed(state.iterations() * n_docs);
}
BENCHMARK(BM_cooccurrence)->Arg(20000);

}  // namespace

BENCHMARK_MAIN();
