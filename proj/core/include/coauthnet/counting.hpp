// Document x entity incidence under raw address counts, whole and
// fractional entity totals, and the binary-per-document co-occurrence
// network.
#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coauthnet/address.hpp"
#include "coauthnet/corpus.hpp"
#include "coauthnet/network.hpp"

namespace coauthnet {

// Maps a normalized affiliation to an entity key, or nothing when the
// affiliation does not participate at this level.
using EntityKeyFn = std::function<std::optional<std::string>(const Affiliation&)>;

EntityKeyFn entity_country();
// Organizations are keyed per country: "ORG-KEY|COUNTRY".
EntityKeyFn entity_org_country();
// USA addresses carrying a resolved state code; everything else is skipped.
EntityKeyFn entity_us_state();

struct IncidenceMatrix {
  std::vector<std::string> doc_ids;   // rows; docs with no resolvable address excluded
  std::vector<std::string> entities;  // columns, in order of first appearance
  // Row cells sorted by entity index; values are address counts >= 1.
  std::vector<std::vector<std::pair<int, long long>>> rows;

  long long row_sum(size_t row) const;
};

IncidenceMatrix build_incidence(std::span<const Document> docs,
                                std::span<const std::vector<Affiliation>> affiliations,
                                const EntityKeyFn& entity_of);

struct EntityTotals {
  struct Row {
    std::string entity;
    long long whole_count = 0;      // documents mentioning the entity
    double fractional_count = 0.0;  // sum of address shares
    bool operator==(const Row&) const = default;
  };
  std::vector<Row> rows;  // sorted by entity key
};

EntityTotals fractional_totals(const IncidenceMatrix& matrix);

void write_totals_csv(const EntityTotals& totals, std::ostream& out);

// Undirected network over all entities of the matrix (isolates included);
// w(A,B) = number of documents naming both, regardless of address
// multiplicity. Node sizes carry the whole/fractional totals.
CoauthNetwork build_cooccurrence(const IncidenceMatrix& matrix);

// True iff the resolvable addresses span at least two distinct canonical
// countries.
bool is_international(std::span<const Affiliation> affiliations);

std::vector<bool> international_flags(std::span<const std::vector<Affiliation>> affiliations);

}  // namespace coauthnet
