// Address normalization: raw byline address strings into
// (organization key, city, US state, country) tuples under an
// editable alias/override table.
#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coauthnet/corpus.hpp"

namespace coauthnet {

inline constexpr std::string_view kUnknownCountry = "UNKNOWN";

struct Affiliation {
  // Uppercased first comma-subfield with internal spaces hyphenated.
  std::string org_key;
  std::optional<std::string> city;
  std::optional<std::string> us_state;  // present only when country == USA
  std::string country;                  // canonical uppercase name, or UNKNOWN

  bool resolved() const { return country != kUnknownCountry; }
  bool operator==(const Affiliation&) const = default;
};

class NormalizationTable {
 public:
  // Aliases are stored uppercased; inserting an alias also pins its
  // canonical target to itself, which keeps the mapping idempotent.
  void add_country_alias(std::string_view alias, std::string_view canonical);
  void add_org_override(std::string_view org_key, std::string_view from_country,
                        std::string_view to_country);
  void add_state_code(std::string_view code);

  std::optional<std::string> canonical_country(std::string_view raw) const;
  std::optional<std::string> org_override(const std::string& org_key,
                                          const std::string& country) const;
  bool is_state_code(std::string_view code) const;

  // Chases alias chains (a -> b, b -> c becomes a -> c) so the mapping is
  // idempotent even when a loaded entry remaps an existing canonical name.
  // Cycles throw. Called by load_normalization_table.
  void resolve_alias_chains();

  const std::map<std::string, std::string>& country_aliases() const { return country_aliases_; }
  const std::map<std::pair<std::string, std::string>, std::string>& org_overrides() const {
    return org_overrides_;
  }
  const std::set<std::string>& state_codes() const { return state_codes_; }

 private:
  std::map<std::string, std::string> country_aliases_;
  std::map<std::pair<std::string, std::string>, std::string> org_overrides_;
  std::set<std::string> state_codes_;
};

// Built-in table: a standard country vocabulary (constituent UK countries
// fold into UK), US state/territory codes, no org overrides.
const NormalizationTable& default_normalization_table();

// Plain-text config with [countries] / [overrides] / [states] sections,
// one "alias = canonical" pair per line ('#' comments). Overrides use
// "ORG-KEY|FROM = TO"; state lines may be bare codes. Entries extend the
// built-in defaults unless `extend_default` is false.
NormalizationTable load_normalization_table(std::istream& in, bool extend_default = true);

// First subfield becomes the organization key; the final subfield resolves
// the country, with "<city>, XX <zip> USA" byline shapes yielding USA plus
// a state code. Org overrides are applied last. Unresolvable countries
// come back as UNKNOWN.
Affiliation parse_address(std::string_view raw, const NormalizationTable& table);

// Canonical single-line rendering; parse_address(render_address(a)) == a
// for round-trippable affiliations.
std::string render_address(const Affiliation& a);

// Sorted unique canonical names, UNKNOWN excluded.
std::vector<std::string> distinct_countries(std::span<const Affiliation> affiliations);

struct NormalizedCorpus {
  // Aligned with the input documents; one entry per raw address.
  std::vector<std::vector<Affiliation>> per_doc;
  long long n_addresses = 0;
  long long n_unresolved = 0;
  std::vector<std::string> warnings;  // capped; n_unresolved is the full count
};

NormalizedCorpus normalize_corpus(std::span<const Document> docs, const NormalizationTable& table,
                                  size_t max_warnings = 100);

}  // namespace coauthnet
