// coauthnet command-line front door: config-driven, reproducible runs of
// the corpus-to-report pipeline and its individual stages.
#include <filesystem>
#include <fstream>
#include <functional>
#include <algorithm>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "coauthnet/address.hpp"
#include "coauthnet/community.hpp"
#include "coauthnet/compare.hpp"
#include "coauthnet/corpus.hpp"
#include "coauthnet/counting.hpp"
#include "coauthnet/divergence.hpp"
#include "coauthnet/network.hpp"
#include "coauthnet/network_stats.hpp"
#include "coauthnet/pajek.hpp"
#include "coauthnet/report.hpp"
#include "coauthnet/svg_render.hpp"
#include "coauthnet/text.hpp"

namespace fs = std::filesystem;
using namespace coauthnet;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIneligible = 1;
constexpr int kExitInputError = 2;

class InputError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fingerprint(const std::vector<std::pair<std::string, std::string>>& fields) {
  std::vector<std::string> lines;
  lines.reserve(fields.size());
  for (const auto& [k, v] : fields) lines.push_back(k + "=" + v);
  std::sort(lines.begin(), lines.end());
  std::string blob;
  for (const auto& line : lines) {
    blob += line;
    blob += '\n';
  }
  return fnv1a64_hex(blob);
}

void write_file(const fs::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failure: " + path.string());
}

void write_json(const fs::path& path, const Json& j) { write_file(path, j.dump(2) + "\n"); }

// Expands every "--config FILE" into the file's key=value entries, keys
// mapped to long options (underscores become dashes). Options already on
// the command line win; injected options go to the end, which keeps them
// inside the active subcommand.
std::vector<std::string> expand_config_args(std::vector<std::string> args) {
  std::vector<std::string> out;
  std::vector<std::string> injected;
  for (size_t i = 0; i < args.size(); ++i) {
    std::string file;
    if (args[i] == "--config" && i + 1 < args.size()) {
      file = args[i + 1];
      ++i;
    } else if (args[i].rfind("--config=", 0) == 0) {
      file = args[i].substr(9);
    } else {
      out.push_back(args[i]);
      continue;
    }
    std::ifstream in(file, std::ios::binary);
    if (!in) throw InputError("cannot open config file: " + file);
    std::string line;
    long long line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      std::string_view s = trim(line);
      if (s.empty() || s.front() == '#') continue;
      size_t eq = s.find('=');
      if (eq == std::string_view::npos)
        throw InputError(file + " line " + std::to_string(line_no) + ": expected key=value");
      std::string key(trim(s.substr(0, eq)));
      std::string value(trim(s.substr(eq + 1)));
      for (char& c : key)
        if (c == '_') c = '-';
      if (key.empty())
        throw InputError(file + " line " + std::to_string(line_no) + ": empty key");
      std::string flag = "--" + key;
      bool present = false;
      for (const std::string& arg : args)
        if (arg == flag || arg.rfind(flag + "=", 0) == 0) present = true;
      if (!present) injected.push_back(flag + "=" + value);
    }
  }
  out.insert(out.end(), injected.begin(), injected.end());
  return out;
}

CorpusFormat detect_format(const fs::path& input, const std::string& explicit_format) {
  if (explicit_format == "tagged") return CorpusFormat::tagged;
  if (explicit_format == "jsonl") return CorpusFormat::jsonl;
  if (!explicit_format.empty()) throw InputError("unknown format '" + explicit_format + "'");
  return input.extension() == ".jsonl" ? CorpusFormat::jsonl : CorpusFormat::tagged;
}

NormalizationTable load_table(const std::string& path) {
  if (path.empty()) return default_normalization_table();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open normalization table: " + path);
  return load_normalization_table(in);
}

std::vector<Document> load_corpus(const fs::path& input, CorpusFormat format, bool dedup,
                                  ParseDiagnostics& diags) {
  std::ifstream in(input, std::ios::binary);
  if (!in) throw InputError("cannot open input: " + input.string());
  ParseOptions options;
  options.format = format;
  options.dedup_ids = dedup;
  return parse_corpus(in, options, diags);
}

EntityKeyFn entity_fn_for(const std::string& level) {
  if (level == "country") return entity_country();
  if (level == "us_state") return entity_us_state();
  if (level == "org") return entity_org_country();
  throw InputError("unknown level '" + level + "'");
}

CoauthNetwork read_net_checked(const std::string& path) {
  if (!fs::exists(path)) throw InputError("cannot open network file: " + path);
  return read_net_file(path);
}

struct BuiltNetwork {
  CoauthNetwork net;
  EntityTotals totals;
  long long docs_counted = 0;
};

BuiltNetwork build_network(std::span<const Document> docs,
                           std::span<const std::vector<Affiliation>> affs,
                           const std::string& level) {
  std::vector<Document> citable;
  std::vector<std::vector<Affiliation>> citable_affs;
  for (size_t i = 0; i < docs.size(); ++i) {
    if (!is_citable(docs[i])) continue;
    citable.push_back(docs[i]);
    citable_affs.push_back(affs[i]);
  }
  IncidenceMatrix m = build_incidence(citable, citable_affs, entity_fn_for(level));
  BuiltNetwork built;
  built.totals = fractional_totals(m);
  built.net = build_cooccurrence(m);
  built.docs_counted = static_cast<long long>(m.doc_ids.size());
  return built;
}

// --- subcommand options ------------------------------------------------

struct IngestOpts {
  std::string input, format, table, out;
  bool dedup = false;
};

struct NetworkOpts {
  std::string input, format, table, out;
  std::string level = "country";
  double min_node_fractional = 0.0;
  long long min_edge_weight = 0;
  bool strict = false;
  bool apply_thresholds = false;
  int top_k = 10;
};

struct CommunitiesOpts {
  std::string net, out;
  std::uint64_t seed = 42;
  int runs = 5;
  bool unweighted = false;
  bool drop_isolates = false;
  double resolution = 1.0;
};

struct CompareOpts {
  std::string net_a, net_b, out;
  int permutations = 1000;
  std::uint64_t seed = 7;
  double alpha = 0.05;
};

struct EgoOpts {
  std::string net, ego, out;
  bool remove_inside = false;
};

struct ShrinkOpts {
  std::string net, group, label, out;
};

struct KltestOpts {
  std::string input, format, table, out;
  std::string level = "country";
  long long min_items = 10;
};

struct MapOpts {
  std::string net, partition, verdicts, geometry, out;
  std::uint64_t seed = 1;
  int iterations = 200;
  std::string node_size = "log";
  long long min_edge_weight = -1;
  int top_k_edges = -1;
  std::string labels = "all";
  int label_count = 20;
};

struct RunOpts {
  std::string input, input_b, format, table, out, geometry;
  std::string level = "country";
  long long min_items = 10;
  std::uint64_t seed_louvain = 42;
  int louvain_runs = 5;
  bool drop_isolates = false;
  std::uint64_t seed_qap = 7;
  int permutations = 1000;
  std::uint64_t seed_layout = 1;
  int iterations = 200;
  double alpha = 0.05;
  int top_k = 10;
};

// --- commands -----------------------------------------------------------

int cmd_ingest(const IngestOpts& o) {
  std::string hash = fingerprint({{"cmd", "ingest"},
                                  {"input", o.input},
                                  {"format", o.format},
                                  {"table", o.table},
                                  {"dedup_ids", o.dedup ? "1" : "0"}});
  NormalizationTable table = load_table(o.table);
  ParseDiagnostics diags;
  std::vector<Document> docs = load_corpus(o.input, detect_format(o.input, o.format), o.dedup, diags);
  NormalizedCorpus normalized = normalize_corpus(docs, table);
  std::vector<bool> flags = international_flags(normalized.per_doc);
  CorpusSummary summary = corpus_summary(docs, flags);

  fs::create_directories(o.out);
  {
    std::ofstream jsonl(fs::path(o.out) / "corpus.jsonl", std::ios::binary);
    if (!jsonl) throw std::runtime_error("cannot write corpus.jsonl");
    write_jsonl(docs, jsonl);
  }
  Json report;
  report["header"] = report_header(hash, Json::object());
  report["summary"] = to_json(summary);
  report["diagnostics"] = to_json(diags);
  report["normalization"] = Json{{"n_addresses", normalized.n_addresses},
                                 {"n_unresolved", normalized.n_unresolved},
                                 {"warnings", normalized.warnings}};
  write_json(fs::path(o.out) / "ingest_summary.json", report);
  return kExitOk;
}

int cmd_network(const NetworkOpts& o) {
  std::string hash = fingerprint({{"cmd", "network"},
                                  {"input", o.input},
                                  {"format", o.format},
                                  {"table", o.table},
                                  {"level", o.level},
                                  {"min_node_fractional", format_double(o.min_node_fractional)},
                                  {"min_edge_weight", std::to_string(o.min_edge_weight)},
                                  {"strict", o.strict ? "1" : "0"},
                                  {"apply_thresholds", o.apply_thresholds ? "1" : "0"}});
  NormalizationTable table = load_table(o.table);
  ParseDiagnostics diags;
  std::vector<Document> docs = load_corpus(o.input, detect_format(o.input, o.format), false, diags);
  NormalizedCorpus normalized = normalize_corpus(docs, table);
  BuiltNetwork built = build_network(docs, normalized.per_doc, o.level);
  CoauthNetwork net = o.apply_thresholds
                          ? threshold_filter(built.net, o.min_node_fractional, o.min_edge_weight,
                                             o.strict)
                          : std::move(built.net);

  fs::create_directories(o.out);
  Json report;
  report["header"] = report_header(hash, Json::object());
  report["level"] = o.level;
  report["docs_counted"] = built.docs_counted;
  if (net.empty()) {
    report["network"] = nullptr;
    report["note"] = "no network: no documents with resolvable entities at this level";
    write_json(fs::path(o.out) / "network_stats.json", report);
    return kExitIneligible;
  }
  write_net_file(net, fs::path(o.out) / (o.level + ".net"));
  {
    std::ofstream csv(fs::path(o.out) / "totals.csv", std::ios::binary);
    write_totals_csv(built.totals, csv);
  }
  report["network"] = network_parameters_json(net);
  report["centrality"] = centrality_json(centrality_report(net), o.top_k);
  write_json(fs::path(o.out) / "network_stats.json", report);
  return kExitOk;
}

int cmd_communities(const CommunitiesOpts& o) {
  std::string hash = fingerprint({{"cmd", "communities"},
                                  {"net", o.net},
                                  {"seed", std::to_string(o.seed)},
                                  {"runs", std::to_string(o.runs)},
                                  {"unweighted", o.unweighted ? "1" : "0"},
                                  {"drop_isolates", o.drop_isolates ? "1" : "0"},
                                  {"resolution", format_double(o.resolution)}});
  CoauthNetwork net = read_net_checked(o.net);
  if (o.drop_isolates) {
    std::vector<int> keep;
    for (int v = 0; v < net.node_count(); ++v)
      if (net.degree(v) > 0) keep.push_back(v);
    net = induced_subnetwork(net, keep);
  }
  fs::create_directories(o.out);
  if (net.empty()) {
    Json report;
    report["header"] = report_header(hash, Json{{"louvain", o.seed}});
    report["note"] = "no network: nothing to cluster";
    write_json(fs::path(o.out) / "communities.json", report);
    return kExitIneligible;
  }
  std::vector<std::uint64_t> seeds;
  for (int i = 0; i < std::max(1, o.runs); ++i) seeds.push_back(o.seed + static_cast<std::uint64_t>(i));
  LouvainResult result = best_louvain(net, seeds, {.weighted = !o.unweighted,
                                                   .resolution = o.resolution});
  write_partition_file(result.partition, net.node_count(), fs::path(o.out) / "communities.clu");
  Json report;
  report["header"] = report_header(hash, Json{{"louvain", o.seed}});
  report["communities"] = communities_json(net, result.partition, result.q, result.seed,
                                           !o.unweighted);
  write_json(fs::path(o.out) / "communities.json", report);
  return kExitOk;
}

Json build_comparison(const CoauthNetwork& a, const CoauthNetwork& b, int permutations,
                      std::uint64_t seed, double alpha, bool& ineligible) {
  MatrixPair pair = MatrixPair::from_networks(a, b);
  auto qap = qap_correlation(pair, permutations, seed);
  auto jac = jaccard_index(pair);
  std::map<std::string, long long> strengths_a, strengths_b;
  for (int v = 0; v < a.node_count(); ++v)
    if (a.strength(v) > 0) strengths_a[a.node(v).key] = a.strength(v);
  for (int v = 0; v < b.node_count(); ++v)
    if (b.strength(v) > 0) strengths_b[b.node(v).key] = b.strength(v);
  std::vector<ShareRow> shares;
  if (!strengths_a.empty() && !strengths_b.empty())
    shares = share_table(strengths_a, strengths_b, alpha);
  ineligible = !qap.has_value();
  return comparison_json(qap, jac, shares);
}

int cmd_compare(const CompareOpts& o) {
  std::string hash = fingerprint({{"cmd", "compare"},
                                  {"net_a", o.net_a},
                                  {"net_b", o.net_b},
                                  {"permutations", std::to_string(o.permutations)},
                                  {"seed", std::to_string(o.seed)},
                                  {"alpha", format_double(o.alpha)}});
  CoauthNetwork a = read_net_checked(o.net_a);
  CoauthNetwork b = read_net_checked(o.net_b);
  fs::create_directories(o.out);
  bool ineligible = false;
  Json report;
  report["header"] = report_header(hash, Json{{"qap", o.seed}});
  report["comparison"] = build_comparison(a, b, o.permutations, o.seed, o.alpha, ineligible);
  write_json(fs::path(o.out) / "compare.json", report);
  return ineligible ? kExitIneligible : kExitOk;
}

int cmd_ego(const EgoOpts& o) {
  CoauthNetwork net = read_net_checked(o.net);
  if (!net.find_node(o.ego)) throw InputError("unknown ego '" + o.ego + "'");
  CoauthNetwork ego = ego_network(net, o.ego, o.remove_inside);
  fs::create_directories(fs::path(o.out).parent_path().empty() ? "." : fs::path(o.out).parent_path());
  write_net_file(ego, o.out);
  return kExitOk;
}

int cmd_shrink(const ShrinkOpts& o) {
  CoauthNetwork net = read_net_checked(o.net);
  std::ifstream group_in(o.group, std::ios::binary);
  if (!group_in) throw InputError("cannot open group file: " + o.group);
  std::vector<std::string> group;
  std::string line;
  while (std::getline(group_in, line)) {
    std::string_view key = trim(line);
    if (!key.empty() && key.front() != '#') group.emplace_back(key);
  }
  if (group.empty()) throw InputError("group file is empty: " + o.group);
  for (const std::string& key : group)
    if (!net.find_node(key)) throw InputError("unknown group member '" + key + "'");
  CoauthNetwork shrunk = shrink(net, group, o.label);
  fs::create_directories(fs::path(o.out).parent_path().empty() ? "." : fs::path(o.out).parent_path());
  write_net_file(shrunk, o.out);
  return kExitOk;
}

struct KltestOutcome {
  DecomposeResult decomposition;
  std::optional<DivergencePair> aggregate_restricted;
  std::optional<DivergencePair> aggregate_all;
};

KltestOutcome run_kltest(std::span<const Document> docs,
                         std::span<const std::vector<Affiliation>> affs, ProfileLevel level,
                         long long min_items) {
  KltestOutcome outcome;
  outcome.decomposition = decompose(docs, affs, level, min_items);
  std::vector<OrgProfile> restricted = build_profiles(docs, affs, level, min_items);
  std::vector<OrgProfile> all = build_profiles(docs, affs, level, 0);
  outcome.aggregate_restricted = aggregate_test(restricted);
  outcome.aggregate_all = aggregate_test(all);
  return outcome;
}

int cmd_kltest(const KltestOpts& o) {
  if (o.level != "country" && o.level != "us_state")
    throw InputError("kltest level must be country or us_state");
  std::string hash = fingerprint({{"cmd", "kltest"},
                                  {"input", o.input},
                                  {"format", o.format},
                                  {"table", o.table},
                                  {"level", o.level},
                                  {"min_items", std::to_string(o.min_items)}});
  NormalizationTable table = load_table(o.table);
  ParseDiagnostics diags;
  std::vector<Document> docs = load_corpus(o.input, detect_format(o.input, o.format), false, diags);
  NormalizedCorpus normalized = normalize_corpus(docs, table);
  ProfileLevel level = o.level == "country" ? ProfileLevel::country : ProfileLevel::us_state;
  KltestOutcome outcome = run_kltest(docs, normalized.per_doc, level, o.min_items);

  fs::create_directories(o.out);
  {
    std::ofstream csv(fs::path(o.out) / "verdicts.csv", std::ios::binary);
    write_verdicts_csv(outcome.decomposition, csv);
  }
  {
    std::ofstream csv(fs::path(o.out) / "ineligible.csv", std::ios::binary);
    write_ineligible_csv(outcome.decomposition, csv);
  }
  Json report;
  report["header"] = report_header(hash, Json::object());
  report["level"] = o.level;
  report["min_items"] = o.min_items;
  report["divergence"] = divergence_json(outcome.decomposition, outcome.aggregate_restricted,
                                         outcome.aggregate_all);
  write_json(fs::path(o.out) / "kltest.json", report);
  return outcome.decomposition.verdicts.empty() ? kExitIneligible : kExitOk;
}

LayoutConfig layout_from(const MapOpts& o) {
  LayoutConfig config;
  config.seed = o.seed;
  config.iterations = o.iterations;
  config.node_size_rule = o.node_size == "constant" ? NodeSizeRule::constant
                                                    : NodeSizeRule::log_fractional;
  if (o.min_edge_weight >= 0) config.min_edge_weight = o.min_edge_weight;
  if (o.top_k_edges >= 0) config.top_k_edges = o.top_k_edges;
  if (o.labels == "none") config.label_mode = LabelMode::none;
  else if (o.labels == "topk") config.label_mode = LabelMode::top_k;
  else config.label_mode = LabelMode::all;
  config.label_count = o.label_count;
  return config;
}

ChoroplethInput choropleth_from_kltest_report(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open verdicts report: " + path.string());
  Json j = Json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.contains("divergence"))
    throw InputError("not a kltest report: " + path.string());
  ChoroplethInput input;
  for (const auto& unit : j["divergence"]["units"])
    input.verdicts[unit["unit"].get<std::string>()] =
        unit["verdict"].get<std::string>() == "international" ? Verdict::international
                                                              : Verdict::domestic;
  for (const auto& unit : j["divergence"]["ineligible"])
    input.ineligible.insert(unit["unit"].get<std::string>());
  return input;
}

int cmd_map(const MapOpts& o) {
  if (o.net.empty() == o.verdicts.empty())
    throw InputError("map needs exactly one of --net or --verdicts");
  fs::path out_path(o.out);
  if (!out_path.parent_path().empty()) fs::create_directories(out_path.parent_path());
  if (!o.net.empty()) {
    CoauthNetwork net = read_net_checked(o.net);
    const Partition* partition_ptr = nullptr;
    Partition partition;
    if (!o.partition.empty()) {
      partition = read_partition_file(o.partition);
      partition_ptr = &partition;
    }
    write_file(out_path, render_network_svg(net, layout_from(o), partition_ptr));
    return kExitOk;
  }
  ChoroplethInput input = choropleth_from_kltest_report(o.verdicts);
  std::optional<UnitGeometry> geometry;
  if (!o.geometry.empty()) {
    std::ifstream in(o.geometry, std::ios::binary);
    if (!in) throw InputError("cannot open geometry: " + o.geometry);
    geometry = load_geometry(in);
  }
  ChoroplethResult rendered = render_choropleth_svg(input, geometry ? &*geometry : nullptr);
  for (const std::string& w : rendered.warnings) std::cerr << "warning: " << w << '\n';
  write_file(out_path, rendered.svg);
  return kExitOk;
}

int cmd_run(const RunOpts& o) {
  std::string hash = fingerprint({{"cmd", "run"},
                                  {"input", o.input},
                                  {"input_b", o.input_b},
                                  {"format", o.format},
                                  {"table", o.table},
                                  {"level", o.level},
                                  {"min_items", std::to_string(o.min_items)},
                                  {"seed_louvain", std::to_string(o.seed_louvain)},
                                  {"louvain_runs", std::to_string(o.louvain_runs)},
                                  {"drop_isolates", o.drop_isolates ? "1" : "0"},
                                  {"seed_qap", std::to_string(o.seed_qap)},
                                  {"permutations", std::to_string(o.permutations)},
                                  {"seed_layout", std::to_string(o.seed_layout)},
                                  {"iterations", std::to_string(o.iterations)},
                                  {"alpha", format_double(o.alpha)},
                                  {"geometry", o.geometry}});
  Json seeds{{"louvain", o.seed_louvain}, {"qap", o.seed_qap}, {"layout", o.seed_layout}};
  NormalizationTable table = load_table(o.table);
  fs::path out_dir(o.out);
  fs::create_directories(out_dir);

  // ingest
  ParseDiagnostics diags;
  std::vector<Document> docs = load_corpus(o.input, detect_format(o.input, o.format), false, diags);
  NormalizedCorpus normalized = normalize_corpus(docs, table);
  std::vector<bool> flags = international_flags(normalized.per_doc);
  CorpusSummary summary = corpus_summary(docs, flags);
  {
    std::ofstream jsonl(out_dir / "corpus.jsonl", std::ios::binary);
    write_jsonl(docs, jsonl);
  }

  Json report;
  report["header"] = report_header(hash, seeds);
  report["summary"] = to_json(summary);
  report["diagnostics"] = to_json(diags);

  int exit_code = kExitOk;

  // network
  BuiltNetwork built = build_network(docs, normalized.per_doc, o.level);
  CoauthNetwork& net = built.net;
  if (net.empty()) {
    report["network"] = nullptr;
    report["note"] = "no network at level " + o.level;
    write_json(out_dir / "run_report.json", report);
    return kExitIneligible;
  }
  write_net_file(net, out_dir / (o.level + ".net"));
  {
    std::ofstream csv(out_dir / "totals.csv", std::ios::binary);
    write_totals_csv(built.totals, csv);
  }

  // communities
  std::vector<std::uint64_t> louvain_seeds;
  for (int i = 0; i < std::max(1, o.louvain_runs); ++i)
    louvain_seeds.push_back(o.seed_louvain + static_cast<std::uint64_t>(i));
  CoauthNetwork detection_net = net;
  if (o.drop_isolates) {
    std::vector<int> keep;
    for (int v = 0; v < net.node_count(); ++v)
      if (net.degree(v) > 0) keep.push_back(v);
    detection_net = induced_subnetwork(net, keep);
  }
  LouvainResult communities = best_louvain(detection_net, louvain_seeds, {});
  write_partition_file(communities.partition, detection_net.node_count(),
                       out_dir / "communities.clu");

  report["network"] = network_parameters_json(net, communities.partition.community_count);
  report["centrality"] = centrality_json(centrality_report(net), o.top_k);
  report["communities"] = communities_json(detection_net, communities.partition, communities.q,
                                           communities.seed, true);

  // comparison (optional second corpus)
  if (!o.input_b.empty()) {
    ParseDiagnostics diags_b;
    std::vector<Document> docs_b =
        load_corpus(o.input_b, detect_format(o.input_b, o.format), false, diags_b);
    NormalizedCorpus normalized_b = normalize_corpus(docs_b, table);
    BuiltNetwork built_b = build_network(docs_b, normalized_b.per_doc, o.level);
    bool cmp_ineligible = false;
    report["comparison"] = build_comparison(net, built_b.net, o.permutations, o.seed_qap, o.alpha,
                                            cmp_ineligible);
    if (cmp_ineligible) exit_code = kExitIneligible;
  }

  // divergence test
  ProfileLevel kl_level = o.level == "us_state" ? ProfileLevel::us_state : ProfileLevel::country;
  KltestOutcome kl = run_kltest(docs, normalized.per_doc, kl_level, o.min_items);
  {
    std::ofstream csv(out_dir / "verdicts.csv", std::ios::binary);
    write_verdicts_csv(kl.decomposition, csv);
  }
  {
    std::ofstream csv(out_dir / "ineligible.csv", std::ios::binary);
    write_ineligible_csv(kl.decomposition, csv);
  }
  report["divergence"] = divergence_json(kl.decomposition, kl.aggregate_restricted,
                                         kl.aggregate_all);
  if (kl.decomposition.verdicts.empty()) exit_code = kExitIneligible;

  // maps
  LayoutConfig layout;
  layout.seed = o.seed_layout;
  layout.iterations = o.iterations;
  layout.label_mode = net.node_count() > 60 ? LabelMode::top_k : LabelMode::all;
  write_file(out_dir / "map_network.svg", render_network_svg(net, layout,
                                                             o.drop_isolates ? nullptr
                                                                             : &communities.partition));
  ChoroplethInput choropleth;
  for (const auto& v : kl.decomposition.verdicts) choropleth.verdicts[v.unit] = v.pair.verdict;
  for (const auto& u : kl.decomposition.ineligible) choropleth.ineligible.insert(u.unit);
  std::optional<UnitGeometry> geometry;
  if (!o.geometry.empty()) {
    std::ifstream in(o.geometry, std::ios::binary);
    if (!in) throw InputError("cannot open geometry: " + o.geometry);
    geometry = load_geometry(in);
  }
  ChoroplethResult rendered = render_choropleth_svg(choropleth, geometry ? &*geometry : nullptr);
  write_file(out_dir / "map_verdicts.svg", rendered.svg);
  report["map_warnings"] = rendered.warnings;

  report["artifacts"] = Json{{"corpus", "corpus.jsonl"},
                             {"network", o.level + ".net"},
                             {"totals", "totals.csv"},
                             {"communities", "communities.clu"},
                             {"verdicts", "verdicts.csv"},
                             {"ineligible", "ineligible.csv"},
                             {"network_map", "map_network.svg"},
                             {"verdict_map", "map_verdicts.svg"}};
  write_json(out_dir / "run_report.json", report);
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"co-authorship network toolkit"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  std::function<int()> action;
  std::string config_doc;  // --config is expanded before CLI11 parses

  IngestOpts ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "parse a corpus, write canonical jsonl + summary");
  ingest_cmd->add_option("--config", config_doc, "key=value config file; explicit flags win");
  ingest_cmd->add_option("--input", ingest.input, "corpus file")->required();
  ingest_cmd->add_option("--format", ingest.format, "tagged or jsonl (default: by extension)");
  ingest_cmd->add_option("--table", ingest.table, "normalization table file");
  ingest_cmd->add_flag("--dedup-ids", ingest.dedup, "drop records with repeated ids");
  ingest_cmd->add_option("--out", ingest.out, "output directory")->required();
  ingest_cmd->callback([&] { action = [&] { return cmd_ingest(ingest); }; });

  NetworkOpts network;
  auto* network_cmd = app.add_subcommand("network", "build the co-authorship network and stats");
  network_cmd->add_option("--config", config_doc, "key=value config file; explicit flags win");
  network_cmd->add_option("--input", network.input, "corpus file")->required();
  network_cmd->add_option("--format", network.format, "tagged or jsonl (default: by extension)");
  network_cmd->add_option("--table", network.table, "normalization table file");
  network_cmd->add_option("--level", network.level, "country, us_state or org");
  network_cmd->add_option("--min-node-fractional", network.min_node_fractional,
                          "node threshold on fractional counts");
  network_cmd->add_option("--min-edge-weight", network.min_edge_weight, "edge weight threshold");
  network_cmd->add_flag("--strict", network.strict, "thresholds use > instead of >=");
  network_cmd->add_flag("--apply-thresholds", network.apply_thresholds,
                        "filter the network before export and stats");
  network_cmd->add_option("--top-k", network.top_k, "length of centrality rankings");
  network_cmd->add_option("--out", network.out, "output directory")->required();
  network_cmd->callback([&] { action = [&] { return cmd_network(network); }; });

  CommunitiesOpts communities;
  auto* communities_cmd = app.add_subcommand("communities", "Louvain community detection");
  communities_cmd->add_option("--config", config_doc, "key=value config file; explicit flags win");
  communities_cmd->add_option("--net", communities.net, "network file (.net)")->required();
  communities_cmd->add_option("--seed", communities.seed, "base seed");
  communities_cmd->add_option("--runs", communities.runs, "seeded runs, best Q wins");
  communities_cmd->add_flag("--unweighted", communities.unweighted, "ignore edge weights");
  communities_cmd->add_flag("--drop-isolates", communities.drop_isolates,
                            "remove isolates before detection");
  communities_cmd->add_option("--resolution", communities.resolution, "resolution parameter");
  communities_cmd->add_option("--out", communities.out, "output directory")->required();
  communities_cmd->callback([&] { action = [&] { return cmd_communities(communities); }; });

  CompareOpts compare;
  auto* compare_cmd = app.add_subcommand("compare", "QAP/Jaccard/share comparison of two networks");
  compare_cmd->add_option("--config", config_doc, "key=value config file; explicit flags win");
  compare_cmd->add_option("--net-a", compare.net_a, "first network (.net)")->required();
  compare_cmd->add_option("--net-b", compare.net_b, "second network (.net)")->required();
  compare_cmd->add_option("--permutations", compare.permutations, "QAP permutations");
  compare_cmd->add_option("--seed", compare.seed, "QAP seed");
  compare_cmd->add_option("--alpha", compare.alpha, "family-wise alpha before adjustment");
  compare_cmd->add_option("--out", compare.out, "output directory")->required();
  compare_cmd->callback([&] { action = [&] { return cmd_compare(compare); }; });

  EgoOpts ego;
  auto* ego_cmd = app.add_subcommand("ego", "extract a k=1 ego network");
  ego_cmd->add_option("--config", config_doc, "key=value config file; explicit flags win");
  ego_cmd->add_option("--net", ego.net, "network file (.net)")->required();
  ego_cmd->add_option("--ego", ego.ego, "focal node key")->required();
  ego_cmd->add_flag("--remove-inside", ego.remove_inside, "drop edges among the neighbors");
  ego_cmd->add_option("--out", ego.out, "output .net path")->required();
  ego_cmd->callback([&] { action = [&] { return cmd_ego(ego); }; });

  ShrinkOpts shrink_opts;
  auto* shrink_cmd = app.add_subcommand("shrink", "collapse a node group into one node");
  shrink_cmd->add_option("--config", config_doc, "key=value config file; explicit flags win");
  shrink_cmd->add_option("--net", shrink_opts.net, "network file (.net)")->required();
  shrink_cmd->add_option("--group", shrink_opts.group, "file with one node key per line")->required();
  shrink_cmd->add_option("--label", shrink_opts.label, "label for the merged node")->required();
  shrink_cmd->add_option("--out", shrink_opts.out, "output .net path")->required();
  shrink_cmd->callback([&] { action = [&] { return cmd_shrink(shrink_opts); }; });

  KltestOpts kltest;
  auto* kltest_cmd = app.add_subcommand("kltest", "domestic vs international predictor test");
  kltest_cmd->add_option("--config", config_doc, "key=value config file; explicit flags win");
  kltest_cmd->add_option("--input", kltest.input, "corpus file")->required();
  kltest_cmd->add_option("--format", kltest.format, "tagged or jsonl (default: by extension)");
  kltest_cmd->add_option("--table", kltest.table, "normalization table file");
  kltest_cmd->add_option("--level", kltest.level, "country or us_state");
  kltest_cmd->add_option("--min-items", kltest.min_items, "keep orgs with more items than this");
  kltest_cmd->add_option("--out", kltest.out, "output directory")->required();
  kltest_cmd->callback([&] { action = [&] { return cmd_kltest(kltest); }; });

  MapOpts map_opts;
  auto* map_cmd = app.add_subcommand("map", "render a network plot or verdict choropleth");
  map_cmd->add_option("--config", config_doc, "key=value config file; explicit flags win");
  map_cmd->add_option("--net", map_opts.net, "network file (.net)");
  map_cmd->add_option("--partition", map_opts.partition, "partition file (.clu) for colors");
  map_cmd->add_option("--verdicts", map_opts.verdicts, "kltest.json report for a choropleth");
  map_cmd->add_option("--geometry", map_opts.geometry, "unit polygon file (json)");
  map_cmd->add_option("--seed", map_opts.seed, "layout seed");
  map_cmd->add_option("--iterations", map_opts.iterations, "layout iterations");
  map_cmd->add_option("--node-size", map_opts.node_size, "log or constant");
  map_cmd->add_option("--min-edge-weight", map_opts.min_edge_weight,
                      "show edges with weight strictly above this");
  map_cmd->add_option("--top-k-edges", map_opts.top_k_edges, "show the k heaviest edges");
  map_cmd->add_option("--labels", map_opts.labels, "all, none or topk");
  map_cmd->add_option("--label-count", map_opts.label_count, "labels for --labels topk");
  map_cmd->add_option("--out", map_opts.out, "output .svg path")->required();
  map_cmd->callback([&] { action = [&] { return cmd_map(map_opts); }; });

  RunOpts run;
  auto* run_cmd = app.add_subcommand("run", "full pipeline with a bundled run report");
  run_cmd->add_option("--config", config_doc, "key=value config file; explicit flags win");
  run_cmd->add_option("--input", run.input, "corpus file")->required();
  run_cmd->add_option("--input-b", run.input_b, "second corpus for the comparison section");
  run_cmd->add_option("--format", run.format, "tagged or jsonl (default: by extension)");
  run_cmd->add_option("--table", run.table, "normalization table file");
  run_cmd->add_option("--level", run.level, "country, us_state or org");
  run_cmd->add_option("--min-items", run.min_items, "divergence org threshold");
  run_cmd->add_option("--seed-louvain", run.seed_louvain, "community detection base seed");
  run_cmd->add_option("--louvain-runs", run.louvain_runs, "seeded detection runs");
  run_cmd->add_flag("--drop-isolates", run.drop_isolates, "remove isolates before detection");
  run_cmd->add_option("--seed-qap", run.seed_qap, "QAP permutation seed");
  run_cmd->add_option("--permutations", run.permutations, "QAP permutations");
  run_cmd->add_option("--seed-layout", run.seed_layout, "map layout seed");
  run_cmd->add_option("--iterations", run.iterations, "map layout iterations");
  run_cmd->add_option("--alpha", run.alpha, "family-wise alpha before adjustment");
  run_cmd->add_option("--top-k", run.top_k, "length of centrality rankings");
  run_cmd->add_option("--geometry", run.geometry, "unit polygon file (json)");
  run_cmd->add_option("--out", run.out, "output directory")->required();
  run_cmd->callback([&] { action = [&] { return cmd_run(run); }; });

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    args = expand_config_args(std::move(args));
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    return action ? action() : kExitInputError;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}
