#include "coauthnet/report.hpp"

#include <algorithm>

#include "coauthnet/text.hpp"

namespace coauthnet {

namespace {

Json opt(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

Json report_header(std::string_view config_hash, const Json& seeds) {
  Json j;
  j["tool"] = "coauthnet";
  j["version"] = std::string(kVersion);
  j["config_hash"] = std::string(config_hash);
  j["seeds"] = seeds;
  return j;
}

Json to_json(const CorpusSummary& s) {
  Json j;
  j["n_records"] = s.n_records;
  j["n_citable"] = s.n_citable;
  j["n_citable_with_addresses"] = s.n_citable_with_addresses;
  j["n_addresses"] = s.n_addresses;
  j["n_authors"] = s.n_authors;
  j["n_international"] = s.n_international;
  j["n_international_addresses"] = s.n_international_addresses;
  j["n_international_authors"] = s.n_international_authors;
  j["pct_international"] = s.pct_international ? Json(format_fixed(*s.pct_international, 1))
                                               : Json(nullptr);
  j["pct_addresses_international"] =
      s.pct_addresses_international ? Json(format_fixed(*s.pct_addresses_international, 1))
                                    : Json(nullptr);
  j["pct_authors_international"] = s.pct_authors_international
                                       ? Json(format_fixed(*s.pct_authors_international, 1))
                                       : Json(nullptr);
  return j;
}

Json to_json(const ParseDiagnostics& d, size_t max_messages) {
  Json j;
  j["records_ok"] = d.records_ok;
  j["records_dropped"] = d.records_dropped;
  Json msgs = Json::array();
  for (size_t i = 0; i < d.messages.size() && i < max_messages; ++i) msgs.push_back(d.messages[i]);
  j["messages"] = std::move(msgs);
  j["messages_truncated"] = d.messages.size() > max_messages;
  return j;
}

Json network_parameters_json(const CoauthNetwork& net, std::optional<long long> communities) {
  Json j;
  j["n_nodes"] = net.node_count();
  j["n_lines"] = net.edge_count();
  auto comps = components(net);
  j["n_components"] = comps.size();
  j["largest_component"] = comps.empty() ? 0 : static_cast<long long>(comps.front().size());
  j["density_simple"] = opt(density(net, DensityVariant::simple));
  j["density_loops"] = opt(density(net, DensityVariant::loops));
  j["density_variant_reported"] = "loops";
  j["average_degree"] = opt(average_degree(net));
  j["betweenness_centralization"] = opt(betweenness_centralization(net));
  ClusteringCoefficients cc = clustering(net);
  j["clustering_average_local"] = opt(cc.average_local);
  j["clustering_transitivity"] = opt(cc.transitivity);
  j["clustering_reported"] = "average_local";
  if (communities) j["communities"] = *communities;
  return j;
}

Json centrality_json(const CentralityReport& report, int top_k) {
  Json j;
  Json rows = Json::array();
  for (const auto& row : report.per_node) {
    Json r;
    r["key"] = row.key;
    r["degree"] = row.degree;
    r["normalized_degree"] = row.normalized_degree;
    r["betweenness"] = row.betweenness;
    r["closeness"] = opt(row.closeness);
    rows.push_back(std::move(r));
  }
  j["per_node"] = std::move(rows);

  auto ranking = [&](auto value_of) {
    std::vector<size_t> order(report.per_node.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      return value_of(report.per_node[a]) > value_of(report.per_node[b]);
    });
    Json list = Json::array();
    for (size_t i = 0; i < order.size() && i < static_cast<size_t>(top_k); ++i) {
      const auto& row = report.per_node[order[i]];
      list.push_back(Json{{"key", row.key}, {"value", value_of(row)}});
    }
    return list;
  };
  j["top_degree"] = ranking([](const auto& r) { return static_cast<double>(r.degree); });
  j["top_betweenness"] = ranking([](const auto& r) { return r.betweenness; });
  j["top_closeness"] = ranking([](const auto& r) { return r.closeness.value_or(0.0); });
  return j;
}

Json communities_json(const CoauthNetwork& net, const Partition& partition,
                      std::optional<double> q, std::uint64_t seed, bool weighted) {
  Json j;
  j["seed"] = seed;
  j["weighted"] = weighted;
  j["q"] = opt(q);
  j["n_communities"] = partition.community_count;
  long long isolate_singletons = 0;
  auto groups = partition.groups();
  for (const auto& group : groups)
    if (group.size() == 1 && net.degree(group.front()) == 0) ++isolate_singletons;
  j["n_communities_excluding_isolates"] = partition.community_count - isolate_singletons;
  Json members = Json::array();
  for (const auto& group : groups) {
    Json keys = Json::array();
    for (int v : group) keys.push_back(net.node(v).key);
    members.push_back(std::move(keys));
  }
  j["members"] = std::move(members);
  return j;
}

Json divergence_json(const DecomposeResult& result,
                     const std::optional<DivergencePair>& aggregate_restricted,
                     const std::optional<DivergencePair>& aggregate_all) {
  Json j;
  auto pair_json = [](const DivergencePair& p) {
    Json r;
    r["i_dom_given_int_mbits"] = p.i_dom_given_int_mbits;
    r["i_int_given_dom_mbits"] = p.i_int_given_dom_mbits;
    r["n_orgs_used"] = p.n_orgs_used;
    r["verdict"] = std::string(to_string(p.verdict));
    return r;
  };
  j["aggregate"] = aggregate_restricted ? pair_json(*aggregate_restricted) : Json(nullptr);
  j["aggregate_all_records"] = aggregate_all ? pair_json(*aggregate_all) : Json(nullptr);
  Json units = Json::array();
  for (const auto& v : result.verdicts) {
    Json u = pair_json(v.pair);
    u["unit"] = v.unit;
    u["color"] = std::string(verdict_color(v.pair.verdict));
    units.push_back(std::move(u));
  }
  j["units"] = std::move(units);
  j["n_international_led"] = result.n_international_led;
  j["n_domestic_led"] = result.n_domestic_led;
  Json inel = Json::array();
  for (const auto& u : result.ineligible)
    inel.push_back(Json{{"unit", u.unit}, {"reason", u.reason}});
  j["ineligible"] = std::move(inel);
  return j;
}

Json comparison_json(const std::optional<QapResult>& qap, const std::optional<double>& jaccard,
                     const std::vector<ShareRow>& shares) {
  Json j;
  j["r"] = qap ? Json(qap->r) : Json(nullptr);
  j["p"] = qap ? Json(qap->p) : Json(nullptr);
  j["n_permutations"] = qap ? Json(qap->n_permutations) : Json(nullptr);
  j["seed"] = qap ? Json(qap->seed) : Json(nullptr);
  j["jaccard"] = jaccard ? Json(*jaccard) : Json(nullptr);
  Json rows = Json::array();
  for (const auto& row : shares) {
    Json r;
    r["entity"] = row.entity;
    r["count_a"] = row.count_a;
    r["count_b"] = row.count_b;
    r["share_a"] = row.share_a;
    r["share_b"] = row.share_b;
    r["z"] = row.z;
    rows.push_back(std::move(r));
  }
  j["per_entity_z"] = std::move(rows);
  return j;
}

}  // namespace coauthnet
