#include "coauthnet/corpus.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>
#include <unordered_set>

#include "coauthnet/text.hpp"
#include "json.hpp"

namespace coauthnet {

namespace {

using Json = nlohmann::ordered_json;

bool is_known_tag(std::string_view tag) {
  return tag == "PT" || tag == "AU" || tag == "TI" || tag == "SO" || tag == "DT" ||
         tag == "LA" || tag == "C1" || tag == "UT";
}

struct RecordBuilder {
  bool active = false;
  long long start_line = 0;
  std::string ut, ti, so, dt, la;
  std::vector<std::string> addresses;
  long long author_lines = 0;

  void reset(long long line) {
    *this = RecordBuilder{};
    active = true;
    start_line = line;
  }
};

void append_scalar(std::string& field, std::string_view value) {
  if (field.empty()) {
    field = std::string(value);
  } else if (!value.empty()) {
    field += ' ';
    field += value;
  }
}

class TaggedParser {
 public:
  TaggedParser(const ParseOptions& options, ParseDiagnostics& diags)
      : options_(options), diags_(diags) {}

  std::vector<Document> run(std::istream& in) {
    std::string line;
    long long line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (handle_line(line, line_no)) break;  // EF
    }
    if (in.bad()) throw std::runtime_error("tagged parse: stream read failure");
    if (rec_.active) drop("unterminated record (missing ER)", line_no);
    return std::move(docs_);
  }

 private:
  bool handle_line(std::string_view line, long long line_no) {
    std::string_view trimmed = trim(line);
    if (trimmed.empty()) return false;
    if (trimmed == "EF") {
      if (rec_.active) drop("record truncated by EF (missing ER)", line_no);
      return true;
    }
    if (trimmed == "ER") {
      if (rec_.active) {
        finish(line_no);
      } else {
        diags_.messages.push_back("line " + std::to_string(line_no) + ": ER outside a record");
      }
      return false;
    }
    if (line.size() >= 3 && line.substr(0, 3) == "   ") {
      continuation(trim(line.substr(3)), line_no);
      return false;
    }
    // a tag line is "XX" or "XX value"; anything else counts as unknown
    bool tag_shaped = line.size() == 2 || (line.size() > 2 && line[2] == ' ');
    std::string_view tag = tag_shaped ? line.substr(0, 2) : std::string_view{"??"};
    std::string_view value = line.size() > 3 ? trim(line.substr(3)) : std::string_view{};
    if (tag == "PT") {
      if (rec_.active) drop("record interrupted by new PT (missing ER)", line_no);
      rec_.reset(line_no);
      last_tag_.clear();
      return false;
    }
    if (!rec_.active) {
      diags_.messages.push_back("line " + std::to_string(line_no) + ": content outside a record");
      return false;
    }
    if (!is_known_tag(tag)) {
      last_tag_ = std::string(tag);  // continuations of unknown tags are ignored too
      return false;
    }
    last_tag_ = std::string(tag);
    apply(tag, value);
    return false;
  }

  void continuation(std::string_view value, long long line_no) {
    if (!rec_.active || last_tag_.empty()) {
      diags_.messages.push_back("line " + std::to_string(line_no) +
                                ": continuation line with no preceding tag");
      return;
    }
    if (is_known_tag(last_tag_)) apply(last_tag_, value);
  }

  void apply(std::string_view tag, std::string_view value) {
    if (tag == "AU") {
      if (!value.empty()) ++rec_.author_lines;
    } else if (tag == "C1") {
      if (!value.empty()) rec_.addresses.emplace_back(value);
    } else if (tag == "UT") {
      append_scalar(rec_.ut, value);
    } else if (tag == "TI") {
      append_scalar(rec_.ti, value);
    } else if (tag == "SO") {
      append_scalar(rec_.so, value);
    } else if (tag == "DT") {
      append_scalar(rec_.dt, value);
    } else if (tag == "LA") {
      append_scalar(rec_.la, value);
    }
  }

  void drop(const std::string& why, long long line_no) {
    ++diags_.records_dropped;
    diags_.messages.push_back("record starting at line " + std::to_string(rec_.start_line) + ": " +
                              why + " (detected at line " + std::to_string(line_no) + ")");
    rec_.active = false;
  }

  void finish(long long line_no) {
    rec_.active = false;
    if (trim(rec_.ut).empty()) {
      ++diags_.records_dropped;
      diags_.messages.push_back("record starting at line " + std::to_string(rec_.start_line) +
                                ": missing mandatory id (UT), dropped (line " +
                                std::to_string(line_no) + ")");
      return;
    }
    if (options_.dedup_ids && !seen_ids_.insert(rec_.ut).second) {
      ++diags_.records_dropped;
      diags_.messages.push_back("record starting at line " + std::to_string(rec_.start_line) +
                                ": duplicate id '" + rec_.ut + "', dropped");
      return;
    }
    Document doc;
    doc.id = rec_.ut;
    doc.doc_type_tag = to_upper(rec_.dt);
    doc.doc_type = classify_doc_type(doc.doc_type_tag);
    doc.language = to_upper(rec_.la);
    doc.source_title = rec_.so;
    doc.raw_addresses = std::move(rec_.addresses);
    doc.author_count = rec_.author_lines;
    docs_.push_back(std::move(doc));
    ++diags_.records_ok;
  }

  const ParseOptions& options_;
  ParseDiagnostics& diags_;
  RecordBuilder rec_;
  std::string last_tag_;
  std::unordered_set<std::string> seen_ids_;
  std::vector<Document> docs_;
};

std::vector<Document> parse_jsonl(std::istream& in, const ParseOptions& options,
                                  ParseDiagnostics& diags) {
  std::vector<Document> docs;
  std::unordered_set<std::string> seen_ids;
  std::string line;
  long long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    Json j = Json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      ++diags.records_dropped;
      diags.messages.push_back("line " + std::to_string(line_no) + ": not a valid json object");
      continue;
    }
    Document doc;
    if (j.contains("id") && j["id"].is_string()) doc.id = j["id"].get<std::string>();
    if (trim(doc.id).empty()) {
      ++diags.records_dropped;
      diags.messages.push_back("line " + std::to_string(line_no) + ": missing mandatory id");
      continue;
    }
    if (options.dedup_ids && !seen_ids.insert(doc.id).second) {
      ++diags.records_dropped;
      diags.messages.push_back("line " + std::to_string(line_no) + ": duplicate id '" + doc.id +
                               "', dropped");
      continue;
    }
    if (j.contains("doc_type") && j["doc_type"].is_string())
      doc.doc_type_tag = to_upper(j["doc_type"].get<std::string>());
    doc.doc_type = classify_doc_type(doc.doc_type_tag);
    if (j.contains("language") && j["language"].is_string())
      doc.language = to_upper(j["language"].get<std::string>());
    if (j.contains("source") && j["source"].is_string())
      doc.source_title = j["source"].get<std::string>();
    bool ok = true;
    if (j.contains("addresses")) {
      if (!j["addresses"].is_array()) ok = false;
      if (ok)
        for (const auto& a : j["addresses"]) {
          if (!a.is_string()) {
            ok = false;
            break;
          }
          doc.raw_addresses.push_back(a.get<std::string>());
        }
    }
    if (j.contains("author_count")) {
      if (j["author_count"].is_number_integer() && j["author_count"].get<long long>() >= 0)
        doc.author_count = j["author_count"].get<long long>();
      else
        ok = false;
    }
    if (!ok) {
      ++diags.records_dropped;
      diags.messages.push_back("line " + std::to_string(line_no) + ": malformed record fields");
      continue;
    }
    docs.push_back(std::move(doc));
    ++diags.records_ok;
  }
  if (in.bad()) throw std::runtime_error("jsonl parse: stream read failure");
  return docs;
}

}  // namespace

std::string_view to_string(DocType type) {
  switch (type) {
    case DocType::article: return "article";
    case DocType::review: return "review";
    case DocType::letter: return "letter";
    case DocType::other: return "other";
  }
  return "other";
}

DocType classify_doc_type(std::string_view uppercase_tag) {
  if (uppercase_tag == "ARTICLE") return DocType::article;
  if (uppercase_tag == "REVIEW") return DocType::review;
  if (uppercase_tag == "LETTER") return DocType::letter;
  return DocType::other;
}

std::vector<Document> parse_corpus(std::istream& in, const ParseOptions& options,
                                   ParseDiagnostics& diags) {
  if (!in.good() && !in.eof()) throw std::runtime_error("parse_corpus: unreadable input stream");
  if (options.format == CorpusFormat::tagged) {
    TaggedParser parser(options, diags);
    return parser.run(in);
  }
  return parse_jsonl(in, options, diags);
}

bool is_citable(const Document& doc) {
  return doc.doc_type == DocType::article || doc.doc_type == DocType::review ||
         doc.doc_type == DocType::letter;
}

std::vector<Document> filter_citable(std::span<const Document> docs) {
  std::vector<Document> out;
  out.reserve(docs.size());
  for (const Document& d : docs)
    if (is_citable(d)) out.push_back(d);
  return out;
}

void write_jsonl(std::span<const Document> docs, std::ostream& out) {
  for (const Document& d : docs) {
    Json j;
    j["id"] = d.id;
    j["doc_type"] = d.doc_type_tag;
    j["language"] = d.language;
    j["source"] = d.source_title;
    j["addresses"] = d.raw_addresses;
    j["author_count"] = d.author_count;
    out << j.dump(-1, ' ', false, Json::error_handler_t::replace) << '\n';
  }
}

CorpusSummary CorpusSummary::from_counts(long long n_records, long long n_citable,
                                         long long n_citable_with_addresses, long long n_addresses,
                                         long long n_authors, long long n_international,
                                         long long n_international_addresses,
                                         long long n_international_authors) {
  CorpusSummary s;
  s.n_records = n_records;
  s.n_citable = n_citable;
  s.n_citable_with_addresses = n_citable_with_addresses;
  s.n_addresses = n_addresses;
  s.n_authors = n_authors;
  s.n_international = n_international;
  s.n_international_addresses = n_international_addresses;
  s.n_international_authors = n_international_authors;
  auto pct = [](long long num, long long den) -> std::optional<double> {
    if (den <= 0) return std::nullopt;
    return round_half_up(100.0 * static_cast<double>(num) / static_cast<double>(den), 1);
  };
  s.pct_international = pct(n_international, n_citable);
  s.pct_addresses_international = pct(n_international_addresses, n_addresses);
  s.pct_authors_international = pct(n_international_authors, n_authors);
  return s;
}

CorpusSummary corpus_summary(std::span<const Document> docs,
                             const std::vector<bool>& international) {
  if (docs.size() != international.size())
    throw std::invalid_argument("corpus_summary: flag span must align with docs");
  long long n_citable = 0, n_with_addr = 0, n_addresses = 0, n_authors = 0;
  long long n_int = 0, n_int_addr = 0, n_int_auth = 0;
  for (size_t i = 0; i < docs.size(); ++i) {
    const Document& d = docs[i];
    if (!is_citable(d)) continue;
    ++n_citable;
    if (!d.raw_addresses.empty()) ++n_with_addr;
    n_addresses += static_cast<long long>(d.raw_addresses.size());
    n_authors += d.author_count;
    if (international[i]) {
      ++n_int;
      n_int_addr += static_cast<long long>(d.raw_addresses.size());
      n_int_auth += d.author_count;
    }
  }
  return CorpusSummary::from_counts(static_cast<long long>(docs.size()), n_citable, n_with_addr,
                                    n_addresses, n_authors, n_int, n_int_addr, n_int_auth);
}

}  // namespace coauthnet
