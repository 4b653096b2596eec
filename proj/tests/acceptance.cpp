// Acceptance suite: one pass/fail line per criterion, nonzero exit when
// any fails. argv[1] must point at the CLI binary (used by the end-to-end
// criterion); argv[2] optionally overrides the scratch directory.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "coauthnet/community.hpp"
#include "coauthnet/compare.hpp"
#include "coauthnet/corpus.hpp"
#include "coauthnet/counting.hpp"
#include "coauthnet/divergence.hpp"
#include "coauthnet/network.hpp"
#include "coauthnet/network_stats.hpp"
#include "coauthnet/pajek.hpp"
#include "coauthnet/svg_render.hpp"
#include "coauthnet/text.hpp"
#include "support/oracles.hpp"
#include "support/random_graphs.hpp"
#include "support/synthetic.hpp"

namespace fs = std::filesystem;
using namespace coauthnet;
using Clock = std::chrono::steady_clock;

namespace {

std::string g_cli_path;
fs::path g_scratch;

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      if (!detail.str().empty()) detail << "; ";
      detail << what;
    }
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// ---- 1: corpus summary arithmetic --------------------------------------

void criterion_table1(Check& check) {
  auto start = Clock::now();
  CorpusSummary s = CorpusSummary::from_counts(193338, 157932, 128785, 305816, 559321, 26667,
                                               95442, 138063);
  check.expect(s.pct_international.has_value(), "pct_international absent");
  check.expect(format_fixed(*s.pct_international, 1) == "16.9",
               "pct_international " + format_fixed(*s.pct_international, 1) + " != 16.9");
  check.expect(format_fixed(*s.pct_addresses_international, 1) == "31.2",
               "pct_addresses " + format_fixed(*s.pct_addresses_international, 1) + " != 31.2");
  check.expect(format_fixed(*s.pct_authors_international, 1) == "24.7",
               "pct_authors " + format_fixed(*s.pct_authors_international, 1) + " != 24.7");
  check.expect(seconds_since(start) < 1.0, "exceeded 1 s");
}

// ---- 2: network parameter arithmetic ------------------------------------

void criterion_table3(Check& check) {
  auto start = Clock::now();
  CoauthNetwork net;
  for (int i = 0; i < 187; ++i) net.add_node(testgen::node_key(i));
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> pick(0, 186);
  long long added = 0;
  while (added < 2695) {
    int a = pick(rng), b = pick(rng);
    if (a == b || net.weight(a, b) != 0) continue;
    net.add_edge(a, b, 1);
    ++added;
  }
  auto avg = average_degree(net);
  auto dens = density(net, DensityVariant::loops);
  check.expect(avg.has_value() && std::abs(*avg - 28.82) <= 0.005,
               "average degree " + format_double(avg.value_or(-1)));
  check.expect(dens.has_value() && std::abs(*dens - 0.154) <= 0.0005,
               "density(loops) " + format_double(dens.value_or(-1)));
  check.expect(seconds_since(start) < 1.0, "exceeded 1 s");
}

// ---- 3: alpha adjustment -------------------------------------------------

void criterion_bonferroni(Check& check) {
  check.expect(bonferroni_alpha(0.05, 200) == 0.00025, "0.05/200 != 0.00025 exactly");
}

// ---- 4: counting rules ----------------------------------------------------

void criterion_counting(Check& check) {
  std::vector<Document> docs(1);
  docs[0].id = "D0";
  docs[0].doc_type = DocType::article;
  Affiliation us1{"ORG-1", {}, {}, "USA"};
  Affiliation us2{"ORG-2", {}, {}, "USA"};
  Affiliation nl{"ORG-3", {}, {}, "NETHERLANDS"};
  std::vector<std::vector<Affiliation>> affs{{us1, us2, nl}};
  IncidenceMatrix m = build_incidence(docs, affs, entity_country());
  EntityTotals totals = fractional_totals(m);
  double usa = -1, netherlands = -1;
  for (const auto& row : totals.rows) {
    if (row.entity == "USA") usa = row.fractional_count;
    if (row.entity == "NETHERLANDS") netherlands = row.fractional_count;
  }
  check.expect(usa == 2.0 / 3.0, "USA share != 2/3");
  check.expect(netherlands == 1.0 / 3.0, "NETHERLANDS share != 1/3");

  // 3 addresses in A and 2 in B: one relation, not six
  std::vector<Document> pair_doc(1);
  pair_doc[0].id = "P0";
  pair_doc[0].doc_type = DocType::article;
  Affiliation a{"OA", {}, {}, "AAA"};
  Affiliation b{"OB", {}, {}, "BBB"};
  std::vector<std::vector<Affiliation>> pair_affs{{a, a, a, b, b}};
  CoauthNetwork net = build_cooccurrence(build_incidence(pair_doc, pair_affs, entity_country()));
  check.expect(net.edge_count() == 1, "expected a single edge");
  check.expect(net.weight(*net.find_node("AAA"), *net.find_node("BBB")) == 1,
               "weight must be 1, not 3 x 2");

  // shares sum to one per document over 10,000 random documents
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> n_addr(1, 8);
  std::uniform_int_distribution<int> country(0, 40);
  std::vector<Document> many(10000);
  std::vector<std::vector<Affiliation>> many_affs(10000);
  for (int d = 0; d < 10000; ++d) {
    many[d].id = "R" + std::to_string(d);
    many[d].doc_type = DocType::article;
    int k = n_addr(rng);
    for (int i = 0; i < k; ++i) {
      Affiliation aff{"ORG", {}, {}, "C" + std::to_string(country(rng))};
      many_affs[d].push_back(aff);
    }
  }
  IncidenceMatrix big = build_incidence(many, many_affs, entity_country());
  bool all_one = true;
  for (size_t d = 0; d < big.rows.size(); ++d) {
    double share_sum = 0.0;
    double row_sum = static_cast<double>(big.row_sum(d));
    for (const auto& [_, count] : big.rows[d]) share_sum += static_cast<double>(count) / row_sum;
    if (std::abs(share_sum - 1.0) > 1e-9) all_one = false;
  }
  check.expect(all_one, "per-document shares drifted from 1");
  EntityTotals big_totals = fractional_totals(big);
  double grand = 0.0;
  for (const auto& row : big_totals.rows) grand += row.fractional_count;
  check.expect(std::abs(grand - static_cast<double>(big.doc_ids.size())) <= 1e-9 * 10000,
               "fractional totals do not conserve the document count");
}

// ---- 5: centrality oracle equivalence -------------------------------------

void criterion_centrality_oracles(Check& check) {
  auto start = Clock::now();
  std::mt19937_64 rng(555);
  int compared = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<int> size(3, 8);
    std::uniform_real_distribution<double> density_pick(0.2, 0.8);
    int n = size(rng);
    CoauthNetwork net = testgen::gnp(n, density_pick(rng), 7000 + trial);
    std::vector<double> btw = betweenness(net, true);
    auto btw_oracle = oracle::betweenness_normalized(net);
    for (int v = 0; v < n; ++v)
      check.expect(std::abs(btw[v] - btw_oracle[v].to_double()) <= 1e-9,
                   "betweenness mismatch, trial " + std::to_string(trial));
    auto cls = closeness(net);
    auto cls_oracle = oracle::closeness(net);
    for (int v = 0; v < n; ++v) {
      check.expect(cls[v].has_value() == cls_oracle[v].has_value(),
                   "closeness definedness mismatch, trial " + std::to_string(trial));
      if (cls[v] && cls_oracle[v])
        check.expect(std::abs(*cls[v] - cls_oracle[v]->to_double()) <= 1e-9,
                     "closeness mismatch, trial " + std::to_string(trial));
    }
    ClusteringCoefficients cc = clustering(net);
    auto cc_oracle = oracle::clustering(net);
    check.expect(cc.average_local.has_value() == cc_oracle.average_local.has_value(),
                 "clustering definedness mismatch, trial " + std::to_string(trial));
    if (cc.average_local && cc_oracle.average_local)
      check.expect(std::abs(*cc.average_local - cc_oracle.average_local->to_double()) <= 1e-9,
                   "clustering mismatch, trial " + std::to_string(trial));
    if (cc.transitivity && cc_oracle.transitivity)
      check.expect(std::abs(*cc.transitivity - cc_oracle.transitivity->to_double()) <= 1e-9,
                   "transitivity mismatch, trial " + std::to_string(trial));
    ++compared;
    if (!check.ok) break;
  }
  check.expect(compared == 200 || !check.ok, "did not reach 200 graphs");
  check.expect(seconds_since(start) < 30.0, "exceeded 30 s");
}

// ---- 6: Louvain quality ----------------------------------------------------

void criterion_louvain(Check& check) {
  auto start = Clock::now();
  std::mt19937_64 rng(606);
  int graphs = 0;
  for (int trial = 0; graphs < 50; ++trial) {
    std::uniform_int_distribution<int> size(4, 10);
    std::uniform_real_distribution<double> p(0.3, 0.7);
    CoauthNetwork net = testgen::gnp(size(rng), p(rng), 8000 + trial);
    if (net.edge_count() == 0) continue;
    ++graphs;
    auto [_, optimum] = brute_force_best_partition(net);
    double best = -2.0;
    for (std::uint64_t seed = 0; seed < 5; ++seed)
      best = std::max(best, louvain(net, seed).q.value_or(-2.0));
    check.expect(best >= optimum - 0.02,
                 "graph " + std::to_string(trial) + ": louvain " + format_double(best) +
                     " vs optimum " + format_double(optimum));
  }

  int recovered = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto planted = testgen::planted_blocks(4, 10, 0.9, 0.03, 9000 + seed);
    auto result = louvain(planted.net, seed);
    auto ga = result.partition.groups();
    auto gb = planted.partition.groups();
    std::sort(ga.begin(), ga.end());
    std::sort(gb.begin(), gb.end());
    if (ga == gb) ++recovered;
  }
  check.expect(recovered >= 95, "block recovery " + std::to_string(recovered) + "/100 < 95");
  check.expect(seconds_since(start) < 60.0, "exceeded 60 s");
}

// ---- 7: KL divergence and verdicts -----------------------------------------

void criterion_kl(Check& check) {
  std::vector<double> q{0.5, 0.5};
  check.expect(kl_divergence(q, q) == 0.0, "KL(q||q) != 0");
  std::vector<double> p{0.25, 0.75};
  double mbits = 1000.0 * kl_divergence(q, p);
  check.expect(std::abs(mbits - 207.5187496394219) <= 1e-6,
               "KL mbits " + format_double(mbits));

  OrgProfile a{"A", "U", 13, 8, 5};
  OrgProfile b{"B", "U", 7, 2, 5};
  std::vector<OrgProfile> unit{a, b};
  auto pair = predictor_test(unit);
  check.expect(pair.has_value(), "two-org unit ineligible");
  if (pair) {
    check.expect(std::abs(pair->i_dom_given_int_mbits - 278.0719051126378) <= 1.0,
                 "I(dom|int) " + format_double(pair->i_dom_given_int_mbits));
    check.expect(std::abs(pair->i_int_given_dom_mbits - 321.9280948873622) <= 1.0,
                 "I(int|dom) " + format_double(pair->i_int_given_dom_mbits));
    check.expect(pair->i_dom_given_int_mbits < pair->i_int_given_dom_mbits, "ordering flipped");
    check.expect(pair->verdict == Verdict::international, "verdict must be international");
  }

  OrgProfile t1{"T1", "U", 8, 4, 4};
  OrgProfile t2{"T2", "U", 12, 6, 6};
  std::vector<OrgProfile> tie{t1, t2};
  auto tie_pair = predictor_test(tie);
  check.expect(tie_pair.has_value() && tie_pair->verdict == Verdict::domestic,
               "tie must resolve to domestic");
}

// ---- 8: eligibility rules ---------------------------------------------------

void criterion_eligibility(Check& check) {
  std::vector<Document> docs;
  std::vector<std::vector<Affiliation>> affs;
  auto add_doc = [&](const std::string& org, const std::string& country, bool international,
                     int copy) {
    Document d;
    d.id = org + ":" + std::to_string(copy);
    d.doc_type = DocType::article;
    docs.push_back(d);
    std::vector<Affiliation> list{{org, {}, {}, country}};
    if (international) list.push_back({"PARTNER", {}, {}, "ELSEWHERE"});
    affs.push_back(list);
  };
  for (int i = 0; i < 10; ++i) add_doc("ORG-TEN", "EDGELAND", i < 3, i);       // exactly 10
  for (int i = 0; i < 11; ++i) add_doc("ORG-ELEVEN", "EDGELAND", i < 3, i);    // kept
  for (int i = 0; i < 74; ++i) add_doc("UNIV-ISLAND", "ISLANDIA", i < 62, i);  // footnote shape

  auto profiles = build_profiles(docs, affs, ProfileLevel::country, 10);
  bool has_ten = false, has_eleven = false;
  for (const auto& p : profiles) {
    if (p.org_key == "ORG-TEN") has_ten = true;
    if (p.org_key == "ORG-ELEVEN") has_eleven = true;
  }
  check.expect(!has_ten, "org with exactly 10 items must be excluded");
  check.expect(has_eleven, "org with 11 items must be kept");

  DecomposeResult result = decompose(docs, affs, ProfileLevel::country, 10);
  bool islandia_ineligible = false;
  for (const auto& u : result.ineligible)
    if (u.unit == "ISLANDIA") islandia_ineligible = true;
  check.expect(islandia_ineligible, "single-eligible-org unit must be reported ineligible");
  for (const auto& v : result.verdicts)
    check.expect(v.unit != "ISLANDIA", "ISLANDIA must not receive a verdict");
}

// ---- 9: comparison statistics ----------------------------------------------

void criterion_comparison(Check& check) {
  CoauthNetwork net = testgen::gnp(14, 0.35, 42, 9);
  MatrixPair self = MatrixPair::from_networks(net, net);
  auto qap = qap_correlation(self, 30, 5);
  check.expect(qap.has_value() && qap->r == 1.0, "QAP r(A,A) != 1 exactly");

  CoauthNetwork a = testgen::gnp(11, 0.4, 43, 6);
  CoauthNetwork b = testgen::gnp(11, 0.45, 44, 6);
  std::vector<int> perm{4, 2, 9, 0, 7, 1, 10, 3, 8, 5, 6};
  auto relabel = [&](const CoauthNetwork& src) {
    CoauthNetwork out;
    std::vector<int> inverse(src.node_count());
    for (int i = 0; i < src.node_count(); ++i) inverse[perm[i]] = i;
    for (int i = 0; i < src.node_count(); ++i) out.add_node(src.node(perm[i]).key);
    for (const auto& e : src.edges()) out.add_edge(inverse[e.a], inverse[e.b], e.weight);
    return out;
  };
  auto base = qap_correlation(MatrixPair::from_networks(a, b), 1, 1);
  auto permuted = qap_correlation(MatrixPair::from_networks(relabel(a), relabel(b)), 1, 1);
  check.expect(base.has_value() && permuted.has_value() && base->r == permuted->r,
               "QAP r not invariant under simultaneous relabeling");

  ZTestResult z = two_proportion_z(30, 100, 40, 200);
  check.expect(std::abs(z.z - 1.9305) <= 0.001, "z " + format_double(z.z));

  CoauthNetwork ja, jb;
  for (const char* k : {"a", "b", "c", "d"}) {
    ja.add_node(k);
    jb.add_node(k);
  }
  ja.add_edge("a", "b", 1);
  ja.add_edge("b", "c", 1);
  jb.add_edge("b", "c", 1);
  jb.add_edge("c", "d", 1);
  auto jac = jaccard_index(MatrixPair::from_networks(ja, jb));
  check.expect(jac.has_value() && *jac == 1.0 / 3.0, "jaccard {ab,bc} vs {bc,cd} != 1/3");
  auto jac_self = jaccard_index(MatrixPair::from_networks(ja, ja));
  check.expect(jac_self.has_value() && *jac_self == 1.0, "jaccard(A,A) != 1");
  CoauthNetwork jc;
  for (const char* k : {"a", "b", "c", "d"}) jc.add_node(k);
  jc.add_edge("a", "d", 1);
  auto jac_disjoint = jaccard_index(MatrixPair::from_networks(ja, jc));
  check.expect(jac_disjoint.has_value() && *jac_disjoint == 0.0, "disjoint jaccard != 0");
}

// ---- 10: format round trips and deterministic rendering ----------------------

void criterion_roundtrips(Check& check) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    int n = 3 + static_cast<int>(seed % 20);
    CoauthNetwork net = testgen::gnp(n, 0.3, 100 + seed, 25);
    std::ostringstream first;
    write_net(net, first);
    std::istringstream in(first.str());
    CoauthNetwork again = read_net(in);
    if (!(again == net)) {
      check.expect(false, "net round trip failed at seed " + std::to_string(seed));
      break;
    }
    std::ostringstream second;
    write_net(again, second);
    if (first.str() != second.str()) {
      check.expect(false, "write-read-write bytes differ at seed " + std::to_string(seed));
      break;
    }
  }
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CoauthNetwork net = testgen::gnp(9, 0.5, 300 + seed);
    auto result = louvain(net, seed);
    std::ostringstream out;
    write_partition(result.partition, net.node_count(), out);
    std::istringstream in(out.str());
    Partition back = read_partition(in);
    if (!(back == result.partition)) {
      check.expect(false, "partition round trip failed at seed " + std::to_string(seed));
      break;
    }
  }
  CoauthNetwork net = testgen::gnp(30, 0.2, 777, 40);
  LayoutConfig config;
  config.seed = 4;
  config.iterations = 80;
  check.expect(render_network_svg(net, config) == render_network_svg(net, config),
               "SVG bytes differ across runs with an equal seed");
}

// ---- 11: end-to-end scale -----------------------------------------------------

void criterion_end_to_end(Check& check) {
  if (g_cli_path.empty()) {
    check.expect(false, "no CLI path provided (argv[1])");
    return;
  }
  fs::path dir = g_scratch / "e2e";
  fs::create_directories(dir);
  testgen::SyntheticSpec spec;  // 100,000 docs, 150 countries, 3,000 orgs
  {
    std::ofstream corpus(dir / "corpus.txt", std::ios::binary);
    testgen::write_synthetic_corpus(spec, corpus);
    std::ofstream table(dir / "table.cfg", std::ios::binary);
    testgen::write_synthetic_table(spec, table);
  }
  std::string command = g_cli_path + " run --input " + (dir / "corpus.txt").string() +
                        " --input-b " + (dir / "corpus.txt").string() + " --table " +
                        (dir / "table.cfg").string() + " --out " + (dir / "out").string() +
                        " > " + (dir / "stdout.txt").string() + " 2>&1";
  auto start = Clock::now();
  int status = std::system(command.c_str());
  double elapsed = seconds_since(start);
  int exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  check.expect(exit_code == 0, "pipeline exit code " + std::to_string(exit_code));
  check.expect(elapsed < 60.0, "pipeline took " + format_fixed(elapsed, 1) + " s");

  std::ifstream report_file(dir / "out" / "run_report.json", std::ios::binary);
  check.expect(report_file.good(), "run_report.json missing");
  if (!report_file.good()) return;
  auto report = nlohmann::json::parse(report_file, nullptr, false);
  check.expect(!report.is_discarded(), "run_report.json is not valid json");
  if (report.is_discarded()) return;
  for (const char* key : {"header", "summary", "network", "centrality", "communities",
                          "comparison", "divergence", "artifacts"})
    check.expect(report.contains(key) && !report[key].is_null(),
                 std::string("run report missing section: ") + key);
  if (check.ok) {
    check.expect(report["summary"]["n_records"].get<long long>() == spec.n_docs,
                 "record count mismatch");
    check.expect(report["network"]["n_nodes"].get<long long>() == spec.n_countries,
                 "expected one node per country");
    check.expect(report["comparison"]["r"].get<double>() == 1.0, "self comparison r != 1");
    check.expect(!report["divergence"]["units"].empty(), "no divergence verdicts at scale");
    check.expect(!report["divergence"]["aggregate"].is_null(), "missing aggregate divergence");
  }
  for (const char* artifact : {"country.net", "totals.csv", "communities.clu", "verdicts.csv",
                               "map_network.svg", "map_verdicts.svg", "corpus.jsonl"})
    check.expect(fs::exists(dir / "out" / artifact), std::string("missing artifact ") + artifact);
}

struct Criterion {
  std::string name;
  std::function<void(Check&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli_path = argv[1];
  g_scratch = argc > 2 ? fs::path(argv[2])
                       : fs::temp_directory_path() / "coauthnet_acceptance";
  fs::create_directories(g_scratch);

  std::vector<Criterion> criteria{
      {"corpus summary percentages (16.9 / 31.2 / 24.7)", criterion_table1},
      {"network arithmetic on n=187 m=2695 (28.82, 0.154)", criterion_table3},
      {"alpha adjustment 0.05/200 = 0.00025 exactly", criterion_bonferroni},
      {"counting rules (2/3+1/3, binary relation, share sums)", criterion_counting},
      {"centralities match rational oracles on 200 graphs", criterion_centrality_oracles},
      {"louvain within 0.02 of exhaustive optimum; block recovery", criterion_louvain},
      {"KL divergence values and predictor verdicts", criterion_kl},
      {"eligibility thresholds and single-org exclusion", criterion_eligibility},
      {"comparison statistics (QAP, z, jaccard)", criterion_comparison},
      {"format round trips and deterministic SVG", criterion_roundtrips},
      {"end-to-end pipeline on 100k synthetic documents < 60 s", criterion_end_to_end},
  };

  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Check check;
    auto start = Clock::now();
    try {
      criteria[i].run(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    double elapsed = seconds_since(start);
    std::cout << (check.ok ? "[PASS] " : "[FAIL] ") << (i + 1) << ". " << criteria[i].name << " ("
              << format_fixed(elapsed, 2) << " s)";
    if (!check.ok) {
      std::cout << " -- " << check.detail.str();
      ++failures;
    }
    std::cout << '\n';
  }
  if (failures > 0) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}
