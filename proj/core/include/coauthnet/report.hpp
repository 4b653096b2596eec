// JSON report assembly: corpus summaries, network parameter blocks,
// community listings, divergence verdict tables, comparison reports and
// the bundled run report.
#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "coauthnet/community.hpp"
#include "coauthnet/compare.hpp"
#include "coauthnet/corpus.hpp"
#include "coauthnet/divergence.hpp"
#include "coauthnet/network.hpp"
#include "coauthnet/network_stats.hpp"

namespace coauthnet {

using Json = nlohmann::ordered_json;

// version / config_hash / named seeds block embedded in every report.
Json report_header(std::string_view config_hash, const Json& seeds);

Json to_json(const CorpusSummary& summary);
Json to_json(const ParseDiagnostics& diags, size_t max_messages = 50);

// Network parameter block: node/line counts, largest component, both
// density variants (labeled), average degree, betweenness centralization
// and both clustering coefficients; optionally a community count.
Json network_parameters_json(const CoauthNetwork& net,
                             std::optional<long long> communities = std::nullopt);

// Per-node centralities plus top-k rankings by degree, betweenness and
// closeness.
Json centrality_json(const CentralityReport& report, int top_k = 10);

Json communities_json(const CoauthNetwork& net, const Partition& partition,
                      std::optional<double> q, std::uint64_t seed, bool weighted);

Json divergence_json(const DecomposeResult& result,
                     const std::optional<DivergencePair>& aggregate_restricted,
                     const std::optional<DivergencePair>& aggregate_all);

// {r, p, n_permutations, seed, jaccard, per_entity_z: [...]}.
Json comparison_json(const std::optional<QapResult>& qap, const std::optional<double>& jaccard,
                     const std::vector<ShareRow>& shares);

}  // namespace coauthnet
