// Organization-level domestic vs international publication profiles and
// the asymmetric Kullback-Leibler predictor test with per-unit verdicts.
#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coauthnet/address.hpp"
#include "coauthnet/corpus.hpp"

namespace coauthnet {

struct OrgProfile {
  std::string org_key;
  std::string unit;  // country name or US-state code
  long long total_items = 0;
  long long domestic_items = 0;
  long long international_items = 0;

  bool operator==(const OrgProfile&) const = default;
};

enum class Verdict { international, domestic };

std::string_view to_string(Verdict v);
// Map coloring for verdict choropleths: international units are white,
// domestic units blue.
std::string_view verdict_color(Verdict v);

struct DivergencePair {
  double i_dom_given_int_mbits = 0.0;  // KL(domestic || international), millibits
  double i_int_given_dom_mbits = 0.0;  // KL(international || domestic), millibits
  int n_orgs_used = 0;
  Verdict verdict = Verdict::domestic;  // international iff dom|int < int|dom; ties domestic
};

enum class ProfileLevel { country, us_state };

// One profile per (org_key, unit) over the citable documents; an org is
// credited once per document. A document is domestic when its resolved
// addresses span exactly one country. Profiles with total_items strictly
// greater than min_items are kept.
std::vector<OrgProfile> build_profiles(std::span<const Document> docs,
                                       std::span<const std::vector<Affiliation>> affiliations,
                                       ProfileLevel level, long long min_items = 10);

// KL divergence in bits: sum q_i log2(q_i / p_i). Inputs must be equal
// length, strictly positive, and sum to 1 within 1e-9; violations throw.
double kl_divergence(std::span<const double> q, std::span<const double> p);

// Restricts to profiles with both counts nonzero, normalizes the two
// count columns, and measures each direction. Units with fewer than two
// such profiles are ineligible (nullopt); a single profile carries no
// distributional uncertainty.
std::optional<DivergencePair> predictor_test(std::span<const OrgProfile> unit_profiles);

// The same computation pooled over the whole profile set.
std::optional<DivergencePair> aggregate_test(std::span<const OrgProfile> profiles);

struct UnitVerdict {
  std::string unit;
  DivergencePair pair;
};

struct IneligibleUnit {
  std::string unit;
  std::string reason;
};

struct DecomposeResult {
  std::vector<UnitVerdict> verdicts;  // sorted by unit
  long long n_international_led = 0;
  long long n_domestic_led = 0;
  std::vector<IneligibleUnit> ineligible;  // sorted by unit
};

DecomposeResult decompose(std::span<const Document> docs,
                          std::span<const std::vector<Affiliation>> affiliations,
                          ProfileLevel level, long long min_items = 10);

// CSV: unit, n_orgs_eligible, i_dom_given_int_mbits, i_int_given_dom_mbits, verdict.
void write_verdicts_csv(const DecomposeResult& result, std::ostream& out);

// CSV: unit, reason.
void write_ineligible_csv(const DecomposeResult& result, std::ostream& out);

}  // namespace coauthnet
