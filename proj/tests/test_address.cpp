#include <sstream>

#include "doctest.h"

#include "coauthnet/address.hpp"

using namespace coauthnet;

TEST_SUITE("address") {

TEST_CASE("org override relabels the parsed country") {
  NormalizationTable table = default_normalization_table();
  table.add_org_override("HARVARD-UNIV", "CANADA", "USA");
  Affiliation a = parse_address("Harvard Univ, Sch Med, Vancouver, BC, Canada", table);
  CHECK(a.org_key == "HARVARD-UNIV");
  CHECK(a.country == "USA");
  CHECK(!a.us_state.has_value());
}

TEST_CASE("plain european address resolves org key and country") {
  Affiliation a = parse_address("Univ Amsterdam, Kloveniersburgwal 48, Amsterdam, Netherlands",
                                default_normalization_table());
  CHECK(a.org_key == "UNIV-AMSTERDAM");
  CHECK(a.country == "NETHERLANDS");
  CHECK(a.city == "AMSTERDAM");
  CHECK(!a.us_state.has_value());
}

TEST_CASE("zip code pattern yields USA plus a state code") {
  Affiliation a =
      parse_address("Ohio State Univ, Columbus, OH 43210 USA", default_normalization_table());
  CHECK(a.org_key == "OHIO-STATE-UNIV");
  CHECK(a.country == "USA");
  REQUIRE(a.us_state.has_value());
  CHECK(*a.us_state == "OH");
  CHECK(a.city == "COLUMBUS");
}

TEST_CASE("city tokens may live inside the final subfield") {
  Affiliation a =
      parse_address("Harvard Univ, Boston MA 02115 USA", default_normalization_table());
  CHECK(a.country == "USA");
  REQUIRE(a.us_state.has_value());
  CHECK(*a.us_state == "MA");
  CHECK(a.city == "BOSTON");
}

TEST_CASE("bare USA keeps the state absent") {
  Affiliation a = parse_address("RAND Corp, Santa Monica, USA", default_normalization_table());
  CHECK(a.country == "USA");
  CHECK(!a.us_state.has_value());
}

TEST_CASE("unresolvable country comes back UNKNOWN") {
  Affiliation a = parse_address("Univ Nowhere, Atlantis", default_normalization_table());
  CHECK(a.country == kUnknownCountry);
  CHECK(!a.resolved());
}

TEST_CASE("UK constituents canonicalize to UK") {
  const NormalizationTable& table = default_normalization_table();
  for (const char* raw : {"England", "Scotland", "Wales", "North Ireland"}) {
    Affiliation a = parse_address(std::string("Univ X, Town, ") + raw, table);
    CHECK(a.country == "UK");
  }
}

TEST_CASE("distinct_countries sorts, dedupes and skips UNKNOWN") {
  std::vector<Affiliation> affs{
      {"A", {}, {}, "USA"}, {"B", {}, {}, "USA"}, {"C", {}, {}, "NETHERLANDS"},
      {"D", {}, {}, std::string(kUnknownCountry)}};
  auto countries = distinct_countries(affs);
  REQUIRE(countries.size() == 2);
  CHECK(countries[0] == "NETHERLANDS");
  CHECK(countries[1] == "USA");
  CHECK(distinct_countries({}).empty());
}

TEST_CASE("alias spellings collapse to one canonical name") {
  const NormalizationTable& table = default_normalization_table();
  std::vector<Affiliation> affs;
  for (const char* raw : {"Org A, X, Germany", "Org B, X, W Germany", "Org C, X, France",
                          "Org D, X, Holland", "Org E, X, Netherlands", "Org F, X, Japan",
                          "Org G, X, Spain"})
    affs.push_back(parse_address(raw, table));
  CHECK(distinct_countries(affs).size() == 5);
}

TEST_CASE("alias mapping is idempotent") {
  const NormalizationTable& table = default_normalization_table();
  for (const auto& [alias, canonical] : table.country_aliases()) {
    auto once = table.canonical_country(alias);
    REQUIRE(once.has_value());
    auto twice = table.canonical_country(*once);
    REQUIRE(twice.has_value());
    CHECK(*twice == *once);
    CHECK(*once == canonical);
  }
}

TEST_CASE("us_state is always a known code") {
  const NormalizationTable& table = default_normalization_table();
  for (const char* raw :
       {"A, B, OH 1 USA", "A, Boston MA USA", "A, B, ZZ 99 USA", "A, B, USA", "A, B, TX USA"}) {
    Affiliation aff = parse_address(raw, table);
    if (aff.us_state) CHECK(table.is_state_code(*aff.us_state));
  }
}

TEST_CASE("render then parse reproduces the affiliation") {
  const NormalizationTable& table = default_normalization_table();
  std::vector<Affiliation> fixtures{
      {"OHIO-STATE-UNIV", "COLUMBUS", "OH", "USA"},
      {"UNIV-AMSTERDAM", "AMSTERDAM", {}, "NETHERLANDS"},
      {"RAND-CORP", {}, {}, "USA"},
      {"UNIV-TOKYO", "TOKYO", {}, "JAPAN"},
  };
  for (const Affiliation& aff : fixtures) {
    CAPTURE(render_address(aff));
    CHECK(parse_address(render_address(aff), table) == aff);
  }
}

TEST_CASE("table file extends the defaults") {
  std::istringstream in(
      "# test table\n"
      "[countries]\n"
      "RURITANIA = RURITANIA\n"
      "KINGDOM OF RURITANIA = RURITANIA\n"
      "[overrides]\n"
      "UNIV-BORDER|RURITANIA = FRANCE\n"
      "[states]\n"
      "OH\n"
      "ZZ = ZZ\n");
  NormalizationTable table = load_normalization_table(in);
  CHECK(parse_address("Univ X, Town, Kingdom of Ruritania", table).country == "RURITANIA");
  CHECK(parse_address("Univ Border, Town, Ruritania", table).country == "FRANCE");
  CHECK(parse_address("Univ X, Paris, France", table).country == "FRANCE");  // defaults kept
  CHECK(table.is_state_code("ZZ"));
}

TEST_CASE("remapping a canonical name keeps the table idempotent") {
  std::istringstream in(
      "[countries]\n"
      "UK = BRITAIN\n");
  NormalizationTable table = load_normalization_table(in);
  CHECK(*table.canonical_country("England") == "BRITAIN");  // default alias chased
  CHECK(*table.canonical_country("UK") == "BRITAIN");
  CHECK(*table.canonical_country("BRITAIN") == "BRITAIN");
  for (const auto& [alias, canonical] : table.country_aliases())
    CHECK(*table.canonical_country(canonical) == canonical);

  // circular entries cannot survive: pinning canonicals to themselves
  // makes the later line win, and the result is still idempotent
  std::istringstream circular(
      "[countries]\n"
      "AAA = BBB\n"
      "BBB = AAA\n");
  NormalizationTable resolved = load_normalization_table(circular);
  CHECK(*resolved.canonical_country("BBB") == "AAA");
  CHECK(*resolved.canonical_country("AAA") == "AAA");
}

TEST_CASE("malformed table lines raise errors") {
  std::istringstream no_section("FRANCE = FRANCE\n");
  CHECK_THROWS(load_normalization_table(no_section));
  std::istringstream bad_override("[overrides]\nNO-BAR = FRANCE\n");
  CHECK_THROWS(load_normalization_table(bad_override));
}

TEST_CASE("normalize_corpus counts unresolved addresses") {
  Document doc;
  doc.id = "D1";
  doc.doc_type = DocType::article;
  doc.raw_addresses = {"Org A, Paris, France", "Org B, Nowhere, Atlantis"};
  std::vector<Document> docs{doc};
  NormalizedCorpus normalized = normalize_corpus(docs, default_normalization_table());
  CHECK(normalized.n_addresses == 2);
  CHECK(normalized.n_unresolved == 1);
  CHECK(normalized.warnings.size() == 1);
  REQUIRE(normalized.per_doc.size() == 1);
  CHECK(normalized.per_doc[0].size() == 2);
}

}  // TEST_SUITE
