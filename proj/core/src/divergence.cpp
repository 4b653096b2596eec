#include "coauthnet/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>

#include "coauthnet/counting.hpp"
#include "coauthnet/text.hpp"

namespace coauthnet {

namespace {

struct Tally {
  long long total = 0;
  long long domestic = 0;
  long long international = 0;
};

std::map<std::pair<std::string, std::string>, Tally> tally_profiles(
    std::span<const Document> docs, std::span<const std::vector<Affiliation>> affiliations,
    ProfileLevel level) {
  if (docs.size() != affiliations.size())
    throw std::invalid_argument("build_profiles: affiliations must align with docs");
  std::map<std::pair<std::string, std::string>, Tally> tallies;  // (unit, org) -> counts
  std::set<std::pair<std::string, std::string>> seen;            // per-document dedup
  for (size_t d = 0; d < docs.size(); ++d) {
    if (!is_citable(docs[d])) continue;
    bool international = is_international(affiliations[d]);
    seen.clear();
    for (const Affiliation& a : affiliations[d]) {
      if (!a.resolved() || a.org_key.empty()) continue;
      std::string unit;
      if (level == ProfileLevel::country) {
        unit = a.country;
      } else {
        if (a.country != "USA" || !a.us_state) continue;
        unit = *a.us_state;
      }
      if (!seen.insert({unit, a.org_key}).second) continue;  // whole counting per document
      Tally& t = tallies[{unit, a.org_key}];
      ++t.total;
      if (international)
        ++t.international;
      else
        ++t.domestic;
    }
  }
  return tallies;
}

std::vector<OrgProfile> profiles_from_tallies(
    const std::map<std::pair<std::string, std::string>, Tally>& tallies, long long min_items) {
  std::vector<OrgProfile> out;
  for (const auto& [key, t] : tallies) {
    if (t.total <= min_items) continue;  // strictly greater than the threshold
    OrgProfile p;
    p.unit = key.first;
    p.org_key = key.second;
    p.total_items = t.total;
    p.domestic_items = t.domestic;
    p.international_items = t.international;
    out.push_back(std::move(p));
  }
  return out;  // map order: sorted by (unit, org_key)
}

std::optional<DivergencePair> divergence_of(std::span<const OrgProfile> profiles) {
  std::vector<double> dom, intl;
  double dom_sum = 0.0, int_sum = 0.0;
  for (const OrgProfile& p : profiles) {
    if (p.domestic_items <= 0 || p.international_items <= 0) continue;
    dom.push_back(static_cast<double>(p.domestic_items));
    intl.push_back(static_cast<double>(p.international_items));
    dom_sum += dom.back();
    int_sum += intl.back();
  }
  if (dom.size() < 2) return std::nullopt;
  for (double& v : dom) v /= dom_sum;
  for (double& v : intl) v /= int_sum;
  DivergencePair pair;
  pair.n_orgs_used = static_cast<int>(dom.size());
  pair.i_dom_given_int_mbits = 1000.0 * kl_divergence(dom, intl);
  pair.i_int_given_dom_mbits = 1000.0 * kl_divergence(intl, dom);
  pair.verdict = pair.i_dom_given_int_mbits < pair.i_int_given_dom_mbits
                     ? Verdict::international
                     : Verdict::domestic;  // ties count as domestically driven
  return pair;
}

}  // namespace

std::string_view to_string(Verdict v) {
  return v == Verdict::international ? "international" : "domestic";
}

std::string_view verdict_color(Verdict v) {
  return v == Verdict::international ? "white" : "blue";
}

std::vector<OrgProfile> build_profiles(std::span<const Document> docs,
                                       std::span<const std::vector<Affiliation>> affiliations,
                                       ProfileLevel level, long long min_items) {
  return profiles_from_tallies(tally_profiles(docs, affiliations, level), min_items);
}

double kl_divergence(std::span<const double> q, std::span<const double> p) {
  if (q.size() != p.size()) throw std::invalid_argument("kl_divergence: length mismatch");
  if (q.empty()) throw std::invalid_argument("kl_divergence: empty distributions");
  double q_sum = 0.0, p_sum = 0.0;
  for (size_t i = 0; i < q.size(); ++i) {
    if (q[i] <= 0.0 || p[i] <= 0.0)
      throw std::invalid_argument("kl_divergence: components must be strictly positive");
    q_sum += q[i];
    p_sum += p[i];
  }
  if (std::abs(q_sum - 1.0) > 1e-9 || std::abs(p_sum - 1.0) > 1e-9)
    throw std::invalid_argument("kl_divergence: distributions must sum to 1");
  double bits = 0.0;
  for (size_t i = 0; i < q.size(); ++i) bits += q[i] * std::log2(q[i] / p[i]);
  return bits;
}

std::optional<DivergencePair> predictor_test(std::span<const OrgProfile> unit_profiles) {
  return divergence_of(unit_profiles);
}

std::optional<DivergencePair> aggregate_test(std::span<const OrgProfile> profiles) {
  return divergence_of(profiles);
}

DecomposeResult decompose(std::span<const Document> docs,
                          std::span<const std::vector<Affiliation>> affiliations,
                          ProfileLevel level, long long min_items) {
  auto tallies = tally_profiles(docs, affiliations, level);
  std::vector<OrgProfile> kept = profiles_from_tallies(tallies, min_items);

  std::map<std::string, std::vector<OrgProfile>> by_unit;
  for (OrgProfile& p : kept) by_unit[p.unit].push_back(std::move(p));
  std::set<std::string> all_units;
  for (const auto& [key, _] : tallies) all_units.insert(key.first);

  DecomposeResult result;
  for (const std::string& unit : all_units) {
    auto it = by_unit.find(unit);
    if (it == by_unit.end()) {
      result.ineligible.push_back(
          {unit, "no organizations above the " + std::to_string(min_items) + "-item threshold"});
      continue;
    }
    auto pair = predictor_test(it->second);
    if (!pair) {
      long long eligible = 0;
      for (const OrgProfile& p : it->second)
        if (p.domestic_items > 0 && p.international_items > 0) ++eligible;
      result.ineligible.push_back(
          {unit, "only " + std::to_string(eligible) +
                     " organization(s) with both domestic and international items (need 2)"});
      continue;
    }
    result.verdicts.push_back({unit, *pair});
    if (pair->verdict == Verdict::international)
      ++result.n_international_led;
    else
      ++result.n_domestic_led;
  }
  return result;
}

void write_verdicts_csv(const DecomposeResult& result, std::ostream& out) {
  out << "unit,n_orgs_eligible,i_dom_given_int_mbits,i_int_given_dom_mbits,verdict\n";
  for (const UnitVerdict& v : result.verdicts)
    out << v.unit << ',' << v.pair.n_orgs_used << ',' << format_double(v.pair.i_dom_given_int_mbits)
        << ',' << format_double(v.pair.i_int_given_dom_mbits) << ',' << to_string(v.pair.verdict)
        << '\n';
}

void write_ineligible_csv(const DecomposeResult& result, std::ostream& out) {
  out << "unit,reason\n";
  for (const IneligibleUnit& u : result.ineligible) out << u.unit << ',' << u.reason << '\n';
}

}  // namespace coauthnet
