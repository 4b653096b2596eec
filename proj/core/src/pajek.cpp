#include "coauthnet/pajek.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "coauthnet/text.hpp"

namespace coauthnet {

namespace {

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    char ca = a[i] >= 'a' && a[i] <= 'z' ? static_cast<char>(a[i] - 32) : a[i];
    char cb = b[i] >= 'a' && b[i] <= 'z' ? static_cast<char>(b[i] - 32) : b[i];
    if (ca != cb) return false;
  }
  return true;
}

std::optional<long long> parse_ll(std::string_view s) {
  long long value = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

struct LineReader {
  std::istream& in;
  long long line_no = 0;

  // Next non-blank line with trailing CR stripped; false at EOF.
  bool next(std::string& out) {
    while (std::getline(in, out)) {
      ++line_no;
      if (!out.empty() && out.back() == '\r') out.pop_back();
      if (!trim(out).empty()) return true;
    }
    return false;
  }
};

long long parse_vertices_header(const std::string& line, long long line_no) {
  std::string_view s = trim(line);
  constexpr std::string_view kTag = "*Vertices";
  if (s.size() < kTag.size() || !iequals(s.substr(0, kTag.size()), kTag))
    throw PajekParseError(line_no, "expected '*Vertices N' header");
  auto count = parse_ll(trim(s.substr(kTag.size())));
  if (!count || *count < 0) throw PajekParseError(line_no, "invalid vertex count");
  return *count;
}

}  // namespace

void write_net(const CoauthNetwork& net, std::ostream& out) {
  for (int v = 0; v < net.node_count(); ++v)
    if (net.node(v).key.find('"') != std::string::npos)
      throw std::invalid_argument("write_net: node label contains a quote: " + net.node(v).key);
  out << "*Vertices " << net.node_count() << '\n';
  for (int v = 0; v < net.node_count(); ++v)
    out << (v + 1) << " \"" << net.node(v).key << "\"\n";
  out << "*Edges\n";
  for (const auto& e : net.edges()) out << (e.a + 1) << ' ' << (e.b + 1) << ' ' << e.weight << '\n';
}

CoauthNetwork read_net(std::istream& in) {
  LineReader reader{in};
  std::string line;
  if (!reader.next(line)) throw PajekParseError(1, "empty network file");
  long long n = parse_vertices_header(line, reader.line_no);

  CoauthNetwork net;
  std::vector<bool> defined(static_cast<size_t>(n), false);
  std::vector<std::string> labels(static_cast<size_t>(n));
  long long vertices_seen = 0;
  bool in_edges = false;

  while (reader.next(line)) {
    std::string_view s = trim(line);
    if (!s.empty() && s.front() == '*') {
      if (iequals(s, "*Edges")) {
        if (in_edges) throw PajekParseError(reader.line_no, "duplicate *Edges section");
        if (vertices_seen != n)
          throw PajekParseError(reader.line_no, "vertex lines do not match the declared count");
        in_edges = true;
        for (long long v = 0; v < n; ++v) net.add_node(labels[static_cast<size_t>(v)]);
        continue;
      }
      throw PajekParseError(reader.line_no, "unsupported section '" + std::string(s) + "'");
    }
    if (!in_edges) {
      // vertex line: index "label" [ignored trailing fields]
      size_t sp = s.find(' ');
      if (sp == std::string_view::npos)
        throw PajekParseError(reader.line_no, "malformed vertex line");
      auto idx = parse_ll(s.substr(0, sp));
      if (!idx || *idx < 1 || *idx > n)
        throw PajekParseError(reader.line_no, "vertex index out of range");
      size_t open = s.find('"', sp);
      if (open == std::string_view::npos)
        throw PajekParseError(reader.line_no, "vertex label must be quoted");
      size_t close = s.find('"', open + 1);
      if (close == std::string_view::npos)
        throw PajekParseError(reader.line_no, "unterminated vertex label");
      size_t at = static_cast<size_t>(*idx - 1);
      if (defined[at]) throw PajekParseError(reader.line_no, "duplicate vertex index");
      defined[at] = true;
      labels[at] = std::string(s.substr(open + 1, close - open - 1));
      ++vertices_seen;
      continue;
    }
    std::istringstream fields{std::string(s)};
    std::string fa, fb, fw, extra;
    fields >> fa >> fb >> fw;
    if (fields >> extra) throw PajekParseError(reader.line_no, "trailing content on edge line");
    auto a = parse_ll(fa);
    auto b = parse_ll(fb);
    auto w = parse_ll(fw);
    if (!a || !b || !w) throw PajekParseError(reader.line_no, "expected 'i j w' edge line");
    if (*a < 1 || *a > n || *b < 1 || *b > n)
      throw PajekParseError(reader.line_no, "edge endpoint index out of range");
    if (*a == *b) throw PajekParseError(reader.line_no, "self-loops are not allowed");
    if (*w < 1) throw PajekParseError(reader.line_no, "edge weight must be >= 1");
    int ia = static_cast<int>(*a - 1);
    int ib = static_cast<int>(*b - 1);
    if (net.weight(ia, ib) != 0) throw PajekParseError(reader.line_no, "duplicate edge");
    net.add_edge(ia, ib, *w);
  }
  if (!in_edges) {
    if (vertices_seen != n)
      throw PajekParseError(reader.line_no + 1, "vertex lines do not match the declared count");
    for (long long v = 0; v < n; ++v) net.add_node(labels[static_cast<size_t>(v)]);
  }
  return net;
}

void write_net_file(const CoauthNetwork& net, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  write_net(net, out);
  if (!out) throw std::runtime_error("write failure: " + path.string());
}

CoauthNetwork read_net_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path.string());
  return read_net(in);
}

void write_partition(const Partition& partition, int expected_nodes, std::ostream& out) {
  if (static_cast<int>(partition.community.size()) != expected_nodes)
    throw std::invalid_argument("write_partition: partition does not cover the node order");
  out << "*Vertices " << expected_nodes << '\n';
  for (int c : partition.community) out << (c + 1) << '\n';
}

Partition read_partition(std::istream& in) {
  LineReader reader{in};
  std::string line;
  if (!reader.next(line)) throw PajekParseError(1, "empty partition file");
  long long n = parse_vertices_header(line, reader.line_no);
  Partition partition;
  partition.community.reserve(static_cast<size_t>(n));
  std::set<int> ids;
  while (reader.next(line)) {
    auto id = parse_ll(trim(line));
    if (!id || *id < 1) throw PajekParseError(reader.line_no, "expected a 1-based community id");
    partition.community.push_back(static_cast<int>(*id - 1));
    ids.insert(static_cast<int>(*id - 1));
  }
  if (static_cast<long long>(partition.community.size()) != n)
    throw PajekParseError(reader.line_no + 1, "id lines do not match the declared count");
  partition.community_count = ids.empty() ? 0 : *ids.rbegin() + 1;
  if (static_cast<int>(ids.size()) != partition.community_count)
    throw PajekParseError(reader.line_no, "community ids must be dense");
  return partition;
}

void write_partition_file(const Partition& partition, int expected_nodes,
                          const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  write_partition(partition, expected_nodes, out);
  if (!out) throw std::runtime_error("write failure: " + path.string());
}

Partition read_partition_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path.string());
  return read_partition(in);
}

}  // namespace coauthnet
