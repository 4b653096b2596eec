#include "coauthnet/svg_render.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "coauthnet/text.hpp"
#include "json.hpp"

namespace coauthnet {

namespace {

constexpr double kMinRadius = 3.0;
constexpr double kMargin = 40.0;

constexpr std::array<const char*, 12> kPalette = {
    "#4878a8", "#e49444", "#d1605e", "#85b6b2", "#6a9f58", "#e7ca60",
    "#a87c9f", "#f1a2a9", "#967662", "#b8b0ac", "#7b6fa0", "#5fa2ce",
};

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string num(double v) { return format_fixed(v, 2); }

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Fruchterman-Reingold spring embedder with seeded initial placement and
// a linear cooling schedule. Forces accumulate in node-index order so the
// result is reproducible.
std::vector<Point> force_layout(const CoauthNetwork& net, const LayoutConfig& config) {
  int n = net.node_count();
  std::vector<Point> pos(n);
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double w = config.width - 2 * kMargin;
  double h = config.height - 2 * kMargin;
  for (Point& p : pos) {
    p.x = unit(rng) * w;
    p.y = unit(rng) * h;
  }
  if (n <= 1) {
    for (Point& p : pos) {
      p.x = w / 2;
      p.y = h / 2;
    }
  } else {
    double k = std::sqrt(w * h / n);
    std::vector<Point> disp(n);
    auto edges = net.edges();
    for (int iter = 0; iter < config.iterations; ++iter) {
      double t = 0.1 * std::min(w, h) * (1.0 - static_cast<double>(iter) / config.iterations);
      for (Point& d : disp) d = {0.0, 0.0};
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          double dx = pos[i].x - pos[j].x;
          double dy = pos[i].y - pos[j].y;
          double dist2 = dx * dx + dy * dy;
          if (dist2 < 1e-9) {  // coincident nodes: deterministic nudge
            dx = 1e-3 * (1 + (i * 31 + j) % 7);
            dy = 1e-3 * (1 + (i * 17 + j) % 5);
            dist2 = dx * dx + dy * dy;
          }
          double dist = std::sqrt(dist2);
          double force = k * k / dist;
          disp[i].x += dx / dist * force;
          disp[i].y += dy / dist * force;
          disp[j].x -= dx / dist * force;
          disp[j].y -= dy / dist * force;
        }
      for (const auto& e : edges) {
        double dx = pos[e.a].x - pos[e.b].x;
        double dy = pos[e.a].y - pos[e.b].y;
        double dist = std::sqrt(dx * dx + dy * dy);
        if (dist < 1e-9) continue;
        double force = dist * dist / k;
        disp[e.a].x -= dx / dist * force;
        disp[e.a].y -= dy / dist * force;
        disp[e.b].x += dx / dist * force;
        disp[e.b].y += dy / dist * force;
      }
      for (int i = 0; i < n; ++i) {
        double len = std::sqrt(disp[i].x * disp[i].x + disp[i].y * disp[i].y);
        if (len < 1e-12) continue;
        double cap = std::min(len, t);
        pos[i].x += disp[i].x / len * cap;
        pos[i].y += disp[i].y / len * cap;
        pos[i].x = std::clamp(pos[i].x, 0.0, w);
        pos[i].y = std::clamp(pos[i].y, 0.0, h);
      }
    }
  }
  // Rescale to fill the drawing box.
  double min_x = 0, max_x = 1, min_y = 0, max_y = 1;
  if (n > 0) {
    min_x = max_x = pos[0].x;
    min_y = max_y = pos[0].y;
    for (const Point& p : pos) {
      min_x = std::min(min_x, p.x);
      max_x = std::max(max_x, p.x);
      min_y = std::min(min_y, p.y);
      max_y = std::max(max_y, p.y);
    }
  }
  double span_x = std::max(max_x - min_x, 1e-9);
  double span_y = std::max(max_y - min_y, 1e-9);
  for (Point& p : pos) {
    p.x = kMargin + (p.x - min_x) / span_x * w;
    p.y = kMargin + (p.y - min_y) / span_y * h;
  }
  return pos;
}

double node_radius(const NetworkNode& node, NodeSizeRule rule) {
  if (rule == NodeSizeRule::constant) return 5.0;
  if (node.fractional_size <= 0.0) return kMinRadius;
  return kMinRadius + 4.0 * std::log(1.0 + node.fractional_size);
}

std::vector<CoauthNetwork::Edge> display_edges(const CoauthNetwork& net,
                                               const LayoutConfig& config) {
  std::vector<CoauthNetwork::Edge> edges = net.edges();
  if (config.min_edge_weight) {
    std::erase_if(edges, [&](const auto& e) { return e.weight <= *config.min_edge_weight; });
  }
  if (config.top_k_edges && static_cast<int>(edges.size()) > *config.top_k_edges) {
    if (*config.top_k_edges <= 0) {
      edges.clear();
      return edges;
    }
    std::vector<long long> weights;
    weights.reserve(edges.size());
    for (const auto& e : edges) weights.push_back(e.weight);
    std::sort(weights.begin(), weights.end(), std::greater<>());
    long long cut = weights[static_cast<size_t>(*config.top_k_edges) - 1];
    std::erase_if(edges, [&](const auto& e) { return e.weight < cut; });  // ties at the cut stay
  }
  return edges;
}

const char* kSvgHeader = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";

std::string svg_open(double width, double height) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" +
         num(height) + "\" viewBox=\"0 0 " + num(width) + " " + num(height) + "\">\n";
}

constexpr const char* kHatchDef =
    "<defs>\n"
    "<pattern id=\"hatch\" width=\"6\" height=\"6\" patternUnits=\"userSpaceOnUse\" "
    "patternTransform=\"rotate(45)\">\n"
    "<rect width=\"6\" height=\"6\" fill=\"#d9d9d9\"/>\n"
    "<line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"6\" stroke=\"#8c8c8c\" stroke-width=\"2\"/>\n"
    "</pattern>\n"
    "</defs>\n";

constexpr const char* kFillInternational = "#ffffff";
constexpr const char* kFillDomestic = "#2166ac";
constexpr const char* kFillNoData = "#cccccc";

std::string choropleth_legend(double x, double y) {
  std::ostringstream out;
  auto entry = [&](double row, const char* fill, const char* label, bool hatch) {
    out << "<rect x=\"" << num(x) << "\" y=\"" << num(y + row * 22) << "\" width=\"16\" "
        << "height=\"16\" fill=\"" << (hatch ? "url(#hatch)" : fill)
        << "\" stroke=\"#333333\"/>\n";
    out << "<text x=\"" << num(x + 22) << "\" y=\"" << num(y + row * 22 + 13)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << label << "</text>\n";
  };
  entry(0, kFillInternational, "international predictor", false);
  entry(1, kFillDomestic, "domestic predictor", false);
  entry(2, kFillNoData, "ineligible / no data", true);
  return out.str();
}

}  // namespace

std::string render_network_svg(const CoauthNetwork& net, const LayoutConfig& config,
                               const Partition* partition) {
  if (config.iterations < 1)
    throw std::invalid_argument("render_network_svg: iterations must be >= 1");
  if (net.empty()) throw std::invalid_argument("render_network_svg: empty network");
  if (partition && static_cast<int>(partition->community.size()) != net.node_count())
    throw std::invalid_argument("render_network_svg: partition does not cover the network");

  std::vector<Point> pos = force_layout(net, config);
  std::vector<CoauthNetwork::Edge> edges = display_edges(net, config);
  long long max_w = 1;
  for (const auto& e : edges) max_w = std::max(max_w, e.weight);

  std::ostringstream out;
  out << kSvgHeader << svg_open(config.width, config.height);
  out << "<rect width=\"" << num(config.width) << "\" height=\"" << num(config.height)
      << "\" fill=\"#ffffff\"/>\n";

  out << "<g stroke=\"#999999\" stroke-opacity=\"0.6\">\n";
  for (const auto& e : edges) {
    double sw = 0.5 + 2.5 * static_cast<double>(e.weight) / static_cast<double>(max_w);
    out << "<line x1=\"" << num(pos[e.a].x) << "\" y1=\"" << num(pos[e.a].y) << "\" x2=\""
        << num(pos[e.b].x) << "\" y2=\"" << num(pos[e.b].y) << "\" stroke-width=\"" << num(sw)
        << "\"/>\n";
  }
  out << "</g>\n";

  out << "<g stroke=\"#333333\" stroke-width=\"0.75\">\n";
  for (int v = 0; v < net.node_count(); ++v) {
    const char* fill = kPalette[0];
    if (partition) fill = kPalette[static_cast<size_t>(partition->community[v]) % kPalette.size()];
    out << "<circle cx=\"" << num(pos[v].x) << "\" cy=\"" << num(pos[v].y) << "\" r=\""
        << num(node_radius(net.node(v), config.node_size_rule)) << "\" fill=\"" << fill
        << "\"/>\n";
  }
  out << "</g>\n";

  std::vector<int> labeled;
  if (config.label_mode == LabelMode::all) {
    for (int v = 0; v < net.node_count(); ++v) labeled.push_back(v);
  } else if (config.label_mode == LabelMode::top_k) {
    for (int v = 0; v < net.node_count(); ++v) labeled.push_back(v);
    std::sort(labeled.begin(), labeled.end(), [&](int a, int b) {
      if (net.node(a).fractional_size != net.node(b).fractional_size)
        return net.node(a).fractional_size > net.node(b).fractional_size;
      return net.node(a).key < net.node(b).key;
    });
    if (static_cast<int>(labeled.size()) > config.label_count)
      labeled.resize(static_cast<size_t>(config.label_count));
    std::sort(labeled.begin(), labeled.end());
  }
  if (!labeled.empty()) {
    out << "<g font-family=\"sans-serif\" font-size=\"10\" fill=\"#111111\">\n";
    for (int v : labeled)
      out << "<text x=\"" << num(pos[v].x + 6) << "\" y=\"" << num(pos[v].y - 6) << "\">"
          << xml_escape(net.node(v).key) << "</text>\n";
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

UnitGeometry load_geometry(std::istream& in) {
  nlohmann::json j = nlohmann::json::parse(in);
  if (!j.is_object()) throw std::runtime_error("geometry: top level must be an object");
  UnitGeometry geo;
  for (const auto& [unit, polys] : j.items()) {
    if (!polys.is_array()) throw std::runtime_error("geometry: '" + unit + "' must be an array");
    std::vector<std::vector<std::array<double, 2>>> shapes;
    for (const auto& poly : polys) {
      if (!poly.is_array() || poly.size() < 3)
        throw std::runtime_error("geometry: polygons need at least 3 points");
      std::vector<std::array<double, 2>> ring;
      for (const auto& pt : poly) {
        if (!pt.is_array() || pt.size() != 2 || !pt[0].is_number() || !pt[1].is_number())
          throw std::runtime_error("geometry: points must be [x, y]");
        ring.push_back({pt[0].get<double>(), pt[1].get<double>()});
      }
      shapes.push_back(std::move(ring));
    }
    geo.polygons[unit] = std::move(shapes);
  }
  return geo;
}

ChoroplethResult render_choropleth_svg(const ChoroplethInput& input, const UnitGeometry* geometry) {
  ChoroplethResult result;
  std::ostringstream out;

  std::vector<std::string> units;
  for (const auto& [unit, _] : input.verdicts) units.push_back(unit);
  for (const std::string& unit : input.ineligible)
    if (!input.verdicts.count(unit)) units.push_back(unit);
  std::sort(units.begin(), units.end());

  auto fill_for = [&](const std::string& unit) -> std::string {
    if (input.ineligible.count(unit)) return "url(#hatch)";
    auto it = input.verdicts.find(unit);
    if (it == input.verdicts.end()) return kFillNoData;
    return it->second == Verdict::international ? kFillInternational : kFillDomestic;
  };

  if (units.empty()) {
    double width = 240, height = 110;
    out << kSvgHeader << svg_open(width, height) << kHatchDef;
    out << "<rect width=\"" << num(width) << "\" height=\"" << num(height)
        << "\" fill=\"#ffffff\"/>\n";
    out << choropleth_legend(16, 16);
    out << "</svg>\n";
    result.svg = out.str();
    return result;
  }

  if (geometry) {
    // Bounding box over every shape; y flips into screen coordinates.
    double min_x = 0, max_x = 1, min_y = 0, max_y = 1;
    bool first = true;
    for (const auto& [_, shapes] : geometry->polygons)
      for (const auto& ring : shapes)
        for (const auto& pt : ring) {
          if (first) {
            min_x = max_x = pt[0];
            min_y = max_y = pt[1];
            first = false;
          }
          min_x = std::min(min_x, pt[0]);
          max_x = std::max(max_x, pt[0]);
          min_y = std::min(min_y, pt[1]);
          max_y = std::max(max_y, pt[1]);
        }
    double span_x = std::max(max_x - min_x, 1e-9);
    double span_y = std::max(max_y - min_y, 1e-9);
    double width = 960, height = 600, legend_h = 80;
    double scale = std::min((width - 2 * kMargin) / span_x, (height - 2 * kMargin) / span_y);
    auto tx = [&](double x) { return kMargin + (x - min_x) * scale; };
    auto ty = [&](double y) { return kMargin + (max_y - y) * scale; };

    out << kSvgHeader << svg_open(width, height + legend_h) << kHatchDef;
    out << "<rect width=\"" << num(width) << "\" height=\"" << num(height + legend_h)
        << "\" fill=\"#ffffff\"/>\n";
    std::vector<std::string> missing;
    for (const std::string& unit : units) {
      auto shapes = geometry->polygons.find(unit);
      if (shapes == geometry->polygons.end()) {
        missing.push_back(unit);
        result.warnings.push_back("no geometry for unit '" + unit + "'");
        continue;
      }
      for (const auto& ring : shapes->second) {
        out << "<path d=\"M";
        for (size_t i = 0; i < ring.size(); ++i) {
          if (i) out << " L";
          out << num(tx(ring[i][0])) << ' ' << num(ty(ring[i][1]));
        }
        out << " Z\" fill=\"" << fill_for(unit) << "\" stroke=\"#333333\" stroke-width=\"0.8\">"
            << "<title>" << xml_escape(unit) << "</title></path>\n";
      }
    }
    // Units without shapes fall back to small labeled tiles under the map.
    double mx = kMargin, my = height - 10;
    for (const std::string& unit : missing) {
      out << "<rect x=\"" << num(mx) << "\" y=\"" << num(my) << "\" width=\"16\" height=\"16\" "
          << "fill=\"" << kFillNoData << "\" stroke=\"#333333\"/>\n";
      out << "<text x=\"" << num(mx) << "\" y=\"" << num(my + 28)
          << "\" font-family=\"sans-serif\" font-size=\"9\">" << xml_escape(unit) << "</text>\n";
      mx += 70;
    }
    out << choropleth_legend(width - 220, height + 8);
    out << "</svg>\n";
    result.svg = out.str();
    return result;
  }

  // Tile-grid fallback: one labeled square per unit.
  int columns = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(units.size()))));
  double tile = 84, gap = 10, label_h = 16;
  double width = 2 * kMargin + columns * (tile + gap) - gap;
  int rows = (static_cast<int>(units.size()) + columns - 1) / columns;
  double legend_h = 90;
  double height = 2 * kMargin + rows * (tile + label_h + gap) - gap + legend_h;
  out << kSvgHeader << svg_open(width, height) << kHatchDef;
  out << "<rect width=\"" << num(width) << "\" height=\"" << num(height)
      << "\" fill=\"#ffffff\"/>\n";
  for (size_t i = 0; i < units.size(); ++i) {
    double x = kMargin + static_cast<double>(i % columns) * (tile + gap);
    double y = kMargin + static_cast<double>(i / columns) * (tile + label_h + gap);
    out << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(tile)
        << "\" height=\"" << num(tile) << "\" fill=\"" << fill_for(units[i])
        << "\" stroke=\"#333333\"/>\n";
    out << "<text x=\"" << num(x + tile / 2) << "\" y=\"" << num(y + tile + 12)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
        << xml_escape(units[i]) << "</text>\n";
  }
  out << choropleth_legend(kMargin, height - legend_h + 14);
  out << "</svg>\n";
  result.svg = out.str();
  return result;
}

}  // namespace coauthnet
