#include "coauthnet/counting.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <unordered_map>

#include "coauthnet/text.hpp"

namespace coauthnet {

EntityKeyFn entity_country() {
  return [](const Affiliation& a) -> std::optional<std::string> {
    if (!a.resolved()) return std::nullopt;
    return a.country;
  };
}

EntityKeyFn entity_org_country() {
  return [](const Affiliation& a) -> std::optional<std::string> {
    if (!a.resolved() || a.org_key.empty()) return std::nullopt;
    return a.org_key + "|" + a.country;
  };
}

EntityKeyFn entity_us_state() {
  return [](const Affiliation& a) -> std::optional<std::string> {
    if (a.country != "USA" || !a.us_state) return std::nullopt;
    return *a.us_state;
  };
}

long long IncidenceMatrix::row_sum(size_t row) const {
  long long sum = 0;
  for (const auto& [_, count] : rows[row]) sum += count;
  return sum;
}

IncidenceMatrix build_incidence(std::span<const Document> docs,
                                std::span<const std::vector<Affiliation>> affiliations,
                                const EntityKeyFn& entity_of) {
  if (docs.size() != affiliations.size())
    throw std::invalid_argument("build_incidence: affiliations must align with docs");
  IncidenceMatrix m;
  std::unordered_map<std::string, int> entity_index;
  for (size_t d = 0; d < docs.size(); ++d) {
    std::map<int, long long> row;
    for (const Affiliation& a : affiliations[d]) {
      auto key = entity_of(a);
      if (!key) continue;
      auto [it, inserted] = entity_index.try_emplace(*key, static_cast<int>(m.entities.size()));
      if (inserted) m.entities.push_back(*key);
      ++row[it->second];
    }
    if (row.empty()) continue;  // nothing resolvable at this level
    m.doc_ids.push_back(docs[d].id);
    m.rows.emplace_back(row.begin(), row.end());
  }
  return m;
}

EntityTotals fractional_totals(const IncidenceMatrix& matrix) {
  std::vector<EntityTotals::Row> rows(matrix.entities.size());
  for (size_t e = 0; e < matrix.entities.size(); ++e) rows[e].entity = matrix.entities[e];
  for (size_t d = 0; d < matrix.rows.size(); ++d) {
    double row_sum = static_cast<double>(matrix.row_sum(d));
    for (const auto& [e, count] : matrix.rows[d]) {
      rows[e].whole_count += 1;
      rows[e].fractional_count += static_cast<double>(count) / row_sum;
    }
  }
  EntityTotals totals;
  totals.rows = std::move(rows);
  std::sort(totals.rows.begin(), totals.rows.end(),
            [](const auto& a, const auto& b) { return a.entity < b.entity; });
  return totals;
}

void write_totals_csv(const EntityTotals& totals, std::ostream& out) {
  out << "entity,whole_count,fractional_count\n";
  for (const auto& row : totals.rows)
    out << row.entity << ',' << row.whole_count << ',' << format_double(row.fractional_count)
        << '\n';
}

CoauthNetwork build_cooccurrence(const IncidenceMatrix& matrix) {
  EntityTotals totals = fractional_totals(matrix);
  std::unordered_map<std::string, int> column_of;
  column_of.reserve(matrix.entities.size());
  for (size_t e = 0; e < matrix.entities.size(); ++e)
    column_of.emplace(matrix.entities[e], static_cast<int>(e));
  CoauthNetwork net;
  std::vector<int> node_of_entity(matrix.entities.size(), -1);
  for (const auto& row : totals.rows) {  // sorted keys give a canonical node order
    int e = column_of.at(row.entity);
    node_of_entity[e] =
        net.add_node(NetworkNode{row.entity, row.fractional_count, row.whole_count});
  }
  std::map<std::pair<int, int>, long long> pair_docs;
  for (const auto& row : matrix.rows) {
    for (size_t i = 0; i < row.size(); ++i)
      for (size_t j = i + 1; j < row.size(); ++j) {
        int a = node_of_entity[row[i].first];
        int b = node_of_entity[row[j].first];
        if (a > b) std::swap(a, b);
        ++pair_docs[{a, b}];
      }
  }
  for (const auto& [pair, weight] : pair_docs) net.add_edge(pair.first, pair.second, weight);
  return net;
}

bool is_international(std::span<const Affiliation> affiliations) {
  std::string first;
  for (const Affiliation& a : affiliations) {
    if (!a.resolved()) continue;
    if (first.empty())
      first = a.country;
    else if (a.country != first)
      return true;
  }
  return false;
}

std::vector<bool> international_flags(std::span<const std::vector<Affiliation>> affiliations) {
  std::vector<bool> flags(affiliations.size());
  for (size_t i = 0; i < affiliations.size(); ++i) flags[i] = is_international(affiliations[i]);
  return flags;
}

}  // namespace coauthnet
