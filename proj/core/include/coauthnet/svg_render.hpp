// Deterministic SVG emission: seeded force-directed network plots and
// verdict choropleths (polygon geometry or labeled tile fallback).
#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "coauthnet/community.hpp"
#include "coauthnet/divergence.hpp"
#include "coauthnet/network.hpp"

namespace coauthnet {

enum class NodeSizeRule { log_fractional, constant };
enum class LabelMode { all, none, top_k };

struct LayoutConfig {
  std::uint64_t seed = 1;
  int iterations = 200;  // must be >= 1
  NodeSizeRule node_size_rule = NodeSizeRule::log_fractional;
  // Display filters; both may apply. min_edge_weight keeps edges with
  // weight strictly greater; top_k_edges keeps the k heaviest including
  // everything tied at the cut.
  std::optional<long long> min_edge_weight;
  std::optional<int> top_k_edges;
  LabelMode label_mode = LabelMode::all;
  int label_count = 20;  // for LabelMode::top_k, by fractional size
  double width = 960.0;
  double height = 720.0;
};

// Identical (net, config, partition) inputs produce identical bytes; no
// clock or locale dependence. Community colors come from the partition
// when one is given.
std::string render_network_svg(const CoauthNetwork& net, const LayoutConfig& config,
                               const Partition* partition = nullptr);

// Unit id -> polygons (each polygon a closed ring of x,y points).
struct UnitGeometry {
  std::map<std::string, std::vector<std::vector<std::array<double, 2>>>> polygons;
};

// JSON object mapping unit id to an array of polygons, a polygon being an
// array of [x, y] pairs.
UnitGeometry load_geometry(std::istream& in);

struct ChoroplethInput {
  std::map<std::string, Verdict> verdicts;
  std::set<std::string> ineligible;  // rendered hatched grey
};

struct ChoroplethResult {
  std::string svg;
  std::vector<std::string> warnings;  // e.g. units missing from the geometry
};

// With geometry, polygons are filled white (international) or blue
// (domestic); units missing a shape fall back to the no-data style and a
// warning. Without geometry, a labeled tile grid carries the same colors.
// An empty verdict set yields a legend-only document.
ChoroplethResult render_choropleth_svg(const ChoroplethInput& input,
                                       const UnitGeometry* geometry = nullptr);

}  // namespace coauthnet
