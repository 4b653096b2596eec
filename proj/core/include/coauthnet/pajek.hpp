// Pajek-style network (.net) and partition (.clu) readers and writers.
// write then read is the identity; write-read-write is byte identical.
#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "coauthnet/community.hpp"
#include "coauthnet/network.hpp"

namespace coauthnet {

// Parse failures carry the offending 1-based line number.
class PajekParseError : public std::runtime_error {
 public:
  PajekParseError(long long line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  long long line() const { return line_; }

 private:
  long long line_;
};

// "*Vertices N", one `i "label"` line per node (1-based), "*Edges",
// then `i j w` lines sorted by (i, j). Node labels must not contain
// quotes. Node sizes are not carried by the format.
void write_net(const CoauthNetwork& net, std::ostream& out);
CoauthNetwork read_net(std::istream& in);

void write_net_file(const CoauthNetwork& net, const std::filesystem::path& path);
CoauthNetwork read_net_file(const std::filesystem::path& path);

// "*Vertices N" then one 1-based community id per line, in node order.
// `expected_nodes` guards against coverage gaps.
void write_partition(const Partition& partition, int expected_nodes, std::ostream& out);
Partition read_partition(std::istream& in);

void write_partition_file(const Partition& partition, int expected_nodes,
                          const std::filesystem::path& path);
Partition read_partition_file(const std::filesystem::path& path);

}  // namespace coauthnet
