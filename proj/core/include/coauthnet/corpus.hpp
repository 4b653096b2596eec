// Bibliographic corpus model: tagged-field and jsonl record parsing,
// citable-item filtering and corpus-level summary statistics.
#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace coauthnet {

enum class DocType { article, review, letter, other };

std::string_view to_string(DocType type);

// Classification of an already-uppercased document-type tag. Anything
// outside the three citable tags maps to `other`.
DocType classify_doc_type(std::string_view uppercase_tag);

struct Document {
  std::string id;
  DocType doc_type = DocType::other;
  // Uppercased source tag; kept verbatim so `other` records stay
  // distinguishable and jsonl round-trips.
  std::string doc_type_tag;
  std::string language;  // uppercased
  std::string source_title;
  // Source order, duplicates preserved. One entry per address line.
  std::vector<std::string> raw_addresses;
  long long author_count = 0;

  bool operator==(const Document&) const = default;
};

enum class CorpusFormat { tagged, jsonl };

struct ParseOptions {
  CorpusFormat format = CorpusFormat::tagged;
  // When set, records whose id was already seen are dropped with a
  // diagnostic; first occurrence wins.
  bool dedup_ids = false;
};

struct ParseDiagnostics {
  long long records_ok = 0;
  long long records_dropped = 0;
  std::vector<std::string> messages;

  bool clean() const { return records_dropped == 0 && messages.empty(); }
};

// Parses a corpus stream. Malformed records are skipped and reported via
// `diags`; an unreadable stream throws std::runtime_error.
std::vector<Document> parse_corpus(std::istream& in, const ParseOptions& options,
                                   ParseDiagnostics& diags);

// Retains exactly the article/review/letter records, in order.
std::vector<Document> filter_citable(std::span<const Document> docs);

bool is_citable(const Document& doc);

// Canonical jsonl serialization: one object per line with keys
// id, doc_type, language, source, addresses, author_count.
void write_jsonl(std::span<const Document> docs, std::ostream& out);

struct CorpusSummary {
  long long n_records = 0;
  long long n_citable = 0;
  long long n_citable_with_addresses = 0;
  long long n_addresses = 0;
  long long n_authors = 0;
  long long n_international = 0;
  long long n_international_addresses = 0;
  long long n_international_authors = 0;
  // Percentages in [0,100], rounded half-up to one decimal. Absent when
  // the denominator is zero (never reported as 0).
  std::optional<double> pct_international;
  std::optional<double> pct_addresses_international;
  std::optional<double> pct_authors_international;

  static CorpusSummary from_counts(long long n_records, long long n_citable,
                                   long long n_citable_with_addresses, long long n_addresses,
                                   long long n_authors, long long n_international,
                                   long long n_international_addresses,
                                   long long n_international_authors);

  bool operator==(const CorpusSummary&) const = default;
};

// `international` is aligned with `docs`; flags for non-citable or
// address-less records are ignored. Address and author tallies cover the
// citable subset, matching how corpus-level shares are reported.
CorpusSummary corpus_summary(std::span<const Document> docs,
                             const std::vector<bool>& international);

}  // namespace coauthnet
