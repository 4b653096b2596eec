#include "coauthnet/address.hpp"

#include <array>
#include <istream>
#include <stdexcept>

#include "coauthnet/text.hpp"

namespace coauthnet {

namespace {

// Standard country vocabulary in the uppercase style common to
// bibliographic exports.
constexpr std::array kCanonicalCountries = {
    "AFGHANISTAN", "ALBANIA", "ALGERIA", "ANDORRA", "ANGOLA", "ANTIGUA & BARBUDA", "ARGENTINA",
    "ARMENIA", "AUSTRALIA", "AUSTRIA", "AZERBAIJAN", "BAHAMAS", "BAHRAIN", "BANGLADESH",
    "BARBADOS", "BELGIUM", "BELIZE", "BENIN", "BERMUDA", "BHUTAN", "BOLIVIA",
    "BOSNIA & HERCEG", "BOTSWANA", "BRAZIL", "BRUNEI", "BULGARIA", "BURKINA FASO", "BURUNDI",
    "BYELARUS", "CAMBODIA", "CAMEROON", "CANADA", "CAPE VERDE", "CENT AFR REPUBL", "CHAD",
    "CHILE", "COLOMBIA", "COMOROS", "CONGO", "COSTA RICA", "COTE IVOIRE", "CROATIA", "CUBA",
    "CYPRUS", "CZECH REPUBLIC", "DEM REP CONGO", "DENMARK", "DJIBOUTI", "DOMINICA",
    "DOMINICAN REP", "ECUADOR", "EGYPT", "EL SALVADOR", "EQUAT GUINEA", "ERITREA", "ESTONIA",
    "ETHIOPIA", "FIJI", "FINLAND", "FRANCE", "FRENCH GUIANA", "FRENCH POLYNESIA", "GABON",
    "GAMBIA", "GEORGIA", "GERMANY", "GHANA", "GREECE", "GREENLAND", "GRENADA", "GUADELOUPE",
    "GUAM", "GUATEMALA", "GUINEA", "GUINEA BISSAU", "GUYANA", "HAITI", "HONDURAS", "HUNGARY",
    "ICELAND", "INDIA", "INDONESIA", "IRAN", "IRAQ", "IRELAND", "ISRAEL", "ITALY", "JAMAICA",
    "JAPAN", "JORDAN", "KAZAKHSTAN", "KENYA", "KIRIBATI", "KUWAIT", "KYRGYZSTAN", "LAOS",
    "LATVIA", "LEBANON", "LESOTHO", "LIBERIA", "LIBYA", "LIECHTENSTEIN", "LITHUANIA",
    "LUXEMBOURG", "MACEDONIA", "MADAGASCAR", "MALAWI", "MALAYSIA", "MALDIVES", "MALI", "MALTA",
    "MARSHALL ISLANDS", "MARTINIQUE", "MAURITANIA", "MAURITIUS", "MEXICO", "MICRONESIA",
    "MOLDOVA", "MONACO", "MONGOLIA", "MONTENEGRO", "MOROCCO", "MOZAMBIQUE", "MYANMAR",
    "NAMIBIA", "NEPAL", "NETHERLANDS", "NETHERLANDS ANTILLES", "NEW CALEDONIA", "NEW ZEALAND",
    "NICARAGUA", "NIGER", "NIGERIA", "NORTH KOREA", "NORWAY", "OMAN", "PAKISTAN", "PALAU",
    "PANAMA", "PAPUA N GUINEA", "PARAGUAY", "PERU", "PHILIPPINES", "POLAND", "PORTUGAL",
    "QATAR", "REUNION", "ROMANIA", "RUSSIA", "RWANDA", "SAMOA", "SAN MARINO", "SAO TOME",
    "SAUDI ARABIA", "SENEGAL", "SERBIA", "SEYCHELLES", "SIERRA LEONE", "SINGAPORE", "SLOVAKIA",
    "SLOVENIA", "SOLOMON ISLANDS", "SOMALIA", "SOUTH AFRICA", "SOUTH KOREA", "SPAIN",
    "SRI LANKA", "ST KITTS & NEVIS", "ST LUCIA", "ST VINCENT", "SUDAN", "SURINAME",
    "SWAZILAND", "SWEDEN", "SWITZERLAND", "SYRIA", "TAIWAN", "TAJIKISTAN", "TANZANIA",
    "THAILAND", "TIMOR-LESTE", "TOGO", "TONGA", "TRINID & TOBAGO", "TUNISIA", "TURKEY",
    "TURKMENISTAN", "TUVALU", "UGANDA", "UK", "UKRAINE", "U ARAB EMIRATES", "URUGUAY", "USA",
    "UZBEKISTAN", "VANUATU", "VATICAN", "VENEZUELA", "VIETNAM", "PEOPLES R CHINA",
    "WEST INDIES ASSOC STATES", "YEMEN", "ZAMBIA", "ZIMBABWE",
};

constexpr std::array<std::pair<const char*, const char*>, 24> kDefaultAliases = {{
    {"ENGLAND", "UK"},
    {"SCOTLAND", "UK"},
    {"WALES", "UK"},
    {"NORTH IRELAND", "UK"},
    {"NORTHERN IRELAND", "UK"},
    {"UNITED KINGDOM", "UK"},
    {"GREAT BRITAIN", "UK"},
    {"UNITED STATES", "USA"},
    {"UNITED STATES OF AMERICA", "USA"},
    {"CHINA", "PEOPLES R CHINA"},
    {"PR CHINA", "PEOPLES R CHINA"},
    {"SOUTH-KOREA", "SOUTH KOREA"},
    {"REPUBLIC OF KOREA", "SOUTH KOREA"},
    {"KOREA", "SOUTH KOREA"},
    {"HOLLAND", "NETHERLANDS"},
    {"THE NETHERLANDS", "NETHERLANDS"},
    {"USSR", "RUSSIA"},
    {"W GERMANY", "GERMANY"},
    {"FED REP GER", "GERMANY"},
    {"GER DEM REP", "GERMANY"},
    {"CZECHOSLOVAKIA", "CZECH REPUBLIC"},
    {"YUGOSLAVIA", "SERBIA"},
    {"ZAIRE", "DEM REP CONGO"},
    {"BRITISH WEST INDIES", "WEST INDIES ASSOC STATES"},
}};

constexpr std::array kStateCodes = {
    "AL", "AK", "AZ", "AR", "CA", "CO", "CT", "DE", "FL", "GA", "HI", "ID", "IL", "IN", "IA",
    "KS", "KY", "LA", "ME", "MD", "MA", "MI", "MN", "MS", "MO", "MT", "NE", "NV", "NH", "NJ",
    "NM", "NY", "NC", "ND", "OH", "OK", "OR", "PA", "RI", "SC", "SD", "TN", "TX", "UT", "VT",
    "VA", "WA", "WV", "WI", "WY", "DC", "PR", "VI", "GU", "AS", "MP",
};

std::string hyphenate_upper(std::string_view s) {
  std::string upper = to_upper(trim(s));
  std::string out;
  out.reserve(upper.size());
  bool in_space = false;
  for (char c : upper) {
    if (c == ' ' || c == '\t') {
      in_space = !out.empty();
      continue;
    }
    if (in_space) {
      out.push_back('-');
      in_space = false;
    }
    out.push_back(c);
  }
  return out;
}

std::string strip_trailing_periods(std::string s) {
  while (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

bool all_digits_or_dash(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!(c >= '0' && c <= '9') && c != '-') return false;
  return true;
}

bool two_upper_letters(std::string_view s) {
  return s.size() == 2 && s[0] >= 'A' && s[0] <= 'Z' && s[1] >= 'A' && s[1] <= 'Z';
}

std::vector<std::string> whitespace_tokens(std::string_view s) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.emplace_back(s.substr(start, i - start));
  }
  return out;
}

std::string join(std::span<const std::string> parts, std::string_view sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

void NormalizationTable::add_country_alias(std::string_view alias, std::string_view canonical) {
  std::string a = to_upper(trim(alias));
  std::string c = to_upper(trim(canonical));
  if (a.empty() || c.empty())
    throw std::invalid_argument("normalization table: empty country alias entry");
  country_aliases_[a] = c;
  country_aliases_[c] = c;  // keep canonical(canonical) == canonical
}

void NormalizationTable::add_org_override(std::string_view org_key, std::string_view from_country,
                                          std::string_view to_country) {
  std::string org = to_upper(trim(org_key));
  std::string from = to_upper(trim(from_country));
  std::string to = to_upper(trim(to_country));
  if (org.empty() || from.empty() || to.empty())
    throw std::invalid_argument("normalization table: empty org override entry");
  org_overrides_[{org, from}] = to;
  country_aliases_.try_emplace(to, to);
}

void NormalizationTable::add_state_code(std::string_view code) {
  std::string c = to_upper(trim(code));
  if (c.size() != 2) throw std::invalid_argument("normalization table: state codes are two letters");
  state_codes_.insert(c);
}

std::optional<std::string> NormalizationTable::canonical_country(std::string_view raw) const {
  std::string key = strip_trailing_periods(to_upper(trim(raw)));
  auto it = country_aliases_.find(key);
  if (it == country_aliases_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> NormalizationTable::org_override(const std::string& org_key,
                                                            const std::string& country) const {
  auto it = org_overrides_.find({org_key, country});
  if (it == org_overrides_.end()) return std::nullopt;
  return it->second;
}

bool NormalizationTable::is_state_code(std::string_view code) const {
  return state_codes_.count(std::string(code)) > 0;
}

void NormalizationTable::resolve_alias_chains() {
  // A later entry may remap a name that earlier aliases point at; chase
  // chains to their final canonical so the mapping stays idempotent.
  for (auto& [alias, canonical] : country_aliases_) {
    int hops = 0;
    auto next = country_aliases_.find(canonical);
    while (next != country_aliases_.end() && next->second != canonical) {
      canonical = next->second;
      next = country_aliases_.find(canonical);
      if (++hops > 64)
        throw std::runtime_error("normalization table: alias cycle involving '" + alias + "'");
    }
  }
}

const NormalizationTable& default_normalization_table() {
  static const NormalizationTable table = [] {
    NormalizationTable t;
    for (const char* c : kCanonicalCountries) t.add_country_alias(c, c);
    for (const auto& [alias, canonical] : kDefaultAliases) t.add_country_alias(alias, canonical);
    for (const char* s : kStateCodes) t.add_state_code(s);
    return t;
  }();
  return table;
}

NormalizationTable load_normalization_table(std::istream& in, bool extend_default) {
  NormalizationTable table = extend_default ? default_normalization_table() : NormalizationTable{};
  std::string line;
  enum class Section { none, countries, overrides, states };
  Section section = Section::none;
  long long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view s = trim(line);
    if (s.empty() || s.front() == '#') continue;
    if (s.front() == '[') {
      std::string name = to_upper(trim(s.substr(1, s.find(']') != std::string_view::npos
                                                       ? s.find(']') - 1
                                                       : s.size() - 1)));
      if (name == "COUNTRIES") section = Section::countries;
      else if (name == "OVERRIDES") section = Section::overrides;
      else if (name == "STATES") section = Section::states;
      else
        throw std::runtime_error("normalization table line " + std::to_string(line_no) +
                                 ": unknown section [" + name + "]");
      continue;
    }
    size_t eq = s.find('=');
    std::string_view lhs = eq == std::string_view::npos ? s : trim(s.substr(0, eq));
    std::string_view rhs = eq == std::string_view::npos ? std::string_view{} : trim(s.substr(eq + 1));
    switch (section) {
      case Section::countries:
        if (lhs.empty() || rhs.empty())
          throw std::runtime_error("normalization table line " + std::to_string(line_no) +
                                   ": expected 'alias = canonical'");
        table.add_country_alias(lhs, rhs);
        break;
      case Section::overrides: {
        size_t bar = lhs.find('|');
        if (bar == std::string_view::npos || rhs.empty())
          throw std::runtime_error("normalization table line " + std::to_string(line_no) +
                                   ": expected 'ORG-KEY|COUNTRY = COUNTRY'");
        table.add_org_override(trim(lhs.substr(0, bar)), trim(lhs.substr(bar + 1)), rhs);
        break;
      }
      case Section::states:
        table.add_state_code(rhs.empty() ? lhs : rhs);
        break;
      case Section::none:
        throw std::runtime_error("normalization table line " + std::to_string(line_no) +
                                 ": entry before any [section]");
    }
  }
  if (in.bad()) throw std::runtime_error("normalization table: stream read failure");
  table.resolve_alias_chains();
  return table;
}

Affiliation parse_address(std::string_view raw, const NormalizationTable& table) {
  if (trim(raw).empty()) throw std::invalid_argument("parse_address: empty address");
  std::vector<std::string> fields = split_trimmed(raw, ',');
  Affiliation aff;
  aff.country = std::string(kUnknownCountry);
  if (fields.empty()) return aff;
  aff.org_key = hyphenate_upper(fields.front());

  const std::string& last = fields.back();
  std::vector<std::string> tokens = whitespace_tokens(last);
  bool us_form = !tokens.empty() && strip_trailing_periods(to_upper(tokens.back())) == "USA";
  if (us_form) {
    aff.country = "USA";
    // Walk back over "<tokens...> XX <zip> USA": optional zip, then state.
    size_t pos = tokens.size() - 1;
    if (pos > 0 && all_digits_or_dash(tokens[pos - 1])) --pos;
    if (pos > 0) {
      std::string cand = to_upper(tokens[pos - 1]);
      if (two_upper_letters(cand) && table.is_state_code(cand)) {
        aff.us_state = cand;
        --pos;
      }
    }
    if (pos > 0) {
      aff.city = to_upper(join(std::span(tokens.data(), pos), " "));
    } else if (fields.size() >= 3) {
      aff.city = to_upper(fields[fields.size() - 2]);
    }
  } else {
    if (auto canonical = table.canonical_country(last)) {
      aff.country = *canonical;
    }
    if (fields.size() >= 2) {
      // Prefer the subfield before the country; skip short region codes
      // like "BC" when an earlier subfield exists.
      size_t city_idx = fields.size() - 2;
      std::string cand = to_upper(fields[city_idx]);
      if (cand.size() <= 3 && city_idx > 0) cand = to_upper(fields[--city_idx]);
      if (city_idx > 0 || fields.size() > 2) aff.city = cand;
    }
  }

  if (auto replacement = table.org_override(aff.org_key, aff.country)) {
    aff.country = *replacement;
    if (aff.country != "USA") aff.us_state.reset();
  }
  return aff;
}

std::string render_address(const Affiliation& a) {
  std::string out = a.org_key;
  if (a.city) {
    out += ", ";
    out += *a.city;
  }
  out += ", ";
  if (a.country == "USA" && a.us_state) {
    out += *a.us_state;
    out += " USA";
  } else {
    out += a.country;
  }
  return out;
}

std::vector<std::string> distinct_countries(std::span<const Affiliation> affiliations) {
  std::set<std::string> seen;
  for (const Affiliation& a : affiliations)
    if (a.resolved()) seen.insert(a.country);
  return {seen.begin(), seen.end()};
}

NormalizedCorpus normalize_corpus(std::span<const Document> docs, const NormalizationTable& table,
                                  size_t max_warnings) {
  NormalizedCorpus out;
  out.per_doc.reserve(docs.size());
  for (const Document& doc : docs) {
    std::vector<Affiliation> affs;
    affs.reserve(doc.raw_addresses.size());
    for (const std::string& raw : doc.raw_addresses) {
      if (trim(raw).empty()) continue;
      Affiliation a = parse_address(raw, table);
      ++out.n_addresses;
      if (!a.resolved()) {
        ++out.n_unresolved;
        if (out.warnings.size() < max_warnings)
          out.warnings.push_back("doc " + doc.id + ": unresolved country in address '" + raw + "'");
      }
      affs.push_back(std::move(a));
    }
    out.per_doc.push_back(std::move(affs));
  }
  return out;
}

}  // namespace coauthnet
