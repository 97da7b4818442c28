#include "vircis/ir/index.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "vircis/error.hpp"

namespace vircis::ir {
namespace {

std::string single_line(std::string s) {
  std::replace_if(s.begin(), s.end(), [](char c) { return c == '\n' || c == '\r' || c == '\t'; }, ' ');
  return s;
}

std::vector<std::string> distinct_in_order(std::vector<std::string> terms) {
  std::vector<std::string> out;
  std::set<std::string, std::less<>> seen;
  for (auto& t : terms) {
    if (seen.insert(t).second) out.push_back(std::move(t));
  }
  return out;
}

[[noreturn]] void bad_index(const std::string& what) {
  throw Error(ErrorCode::format, "index: " + what);
}

std::string expect_line(std::istream& in, const char* what) {
  std::string line;
  if (!std::getline(in, line)) bad_index(std::string("unexpected end of file reading ") + what);
  return line;
}

std::size_t parse_count(const std::string& line, const std::string& keyword) {
  std::istringstream fields(line);
  std::string kw;
  std::size_t n = 0;
  if (!(fields >> kw >> n) || kw != keyword) bad_index("expected '" + keyword + " <count>'");
  return n;
}

}  // namespace

const std::vector<Posting>* InvertedIndex::find(std::string_view term) const {
  const auto it = postings_.find(term);
  return it == postings_.end() ? nullptr : &it->second;
}

InvertedIndex index_documents(const std::vector<Document>& docs, const StopWords& stopwords) {
  InvertedIndex index;
  index.stopwords_ = stopwords;
  for (const auto& doc : docs) {
    if (doc.doc_id.empty()) throw Error(ErrorCode::indexing, "index: empty doc_id");
    if (doc.doc_id.find_first_of("\t\n\r") != std::string::npos) {
      throw Error(ErrorCode::indexing, "index: doc_id contains a tab or newline");
    }
    if (doc.body.empty()) throw Error(ErrorCode::indexing, "index: document '" + doc.doc_id + "' has an empty body");
    if (index.doc_lengths_.count(doc.doc_id)) {
      throw Error(ErrorCode::indexing, "index: duplicate doc_id '" + doc.doc_id + "'");
    }
    const auto tokens = tokenize_filter(doc.title + " " + doc.body, stopwords);
    index.doc_lengths_[doc.doc_id] = tokens.size();
    index.titles_[doc.doc_id] = single_line(doc.title);

    std::map<std::string, std::size_t> counts;
    for (const auto& t : tokens) ++counts[t];
    for (const auto& [term, tf] : counts) index.postings_[term].push_back({doc.doc_id, tf});
  }
  for (auto& [term, list] : index.postings_) {
    std::sort(list.begin(), list.end(), [](const Posting& a, const Posting& b) { return a.doc_id < b.doc_id; });
  }
  return index;
}

double idf(std::size_t doc_count, std::size_t document_frequency) {
  return std::log(1.0 + static_cast<double>(doc_count) / static_cast<double>(document_frequency));
}

void sort_ranked(std::vector<ScoredDoc>& entries) {
  std::sort(entries.begin(), entries.end(), [](const ScoredDoc& a, const ScoredDoc& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.doc_id < b.doc_id;
  });
}

RankedList search(const InvertedIndex& index, std::string_view query, std::size_t top_k) {
  RankedList result;
  result.query_terms = distinct_in_order(tokenize_filter(query, index.stopwords()));

  std::map<std::string, double> scores;
  for (const auto& term : result.query_terms) {
    const auto* list = index.find(term);
    if (list == nullptr) continue;
    const double weight = idf(index.doc_count(), list->size());
    for (const auto& p : *list) scores[p.doc_id] += static_cast<double>(p.term_frequency) * weight;
  }

  result.entries.reserve(scores.size());
  for (const auto& [doc, score] : scores) {
    if (score > 0.0) result.entries.push_back({doc, score});
  }
  sort_ranked(result.entries);
  if (top_k != 0 && result.entries.size() > top_k) result.entries.resize(top_k);
  return result;
}

void write_index(std::ostream& out, const InvertedIndex& index) {
  out << "vircis-index 1\n";
  out << "docs " << index.doc_count() << '\n';
  for (const auto& [doc, length] : index.doc_lengths()) {
    out << doc << '\t' << length << '\t' << index.titles().at(doc) << '\n';
  }
  out << "stopwords " << index.stopwords().size() << '\n';
  for (const auto& w : index.stopwords()) out << w << '\n';
  out << "terms " << index.postings().size() << '\n';
  for (const auto& [term, list] : index.postings()) {
    out << term << ' ' << list.size() << '\n';
    for (const auto& p : list) out << p.doc_id << ' ' << p.term_frequency << '\n';
  }
}

InvertedIndex read_index(std::istream& in) {
  if (expect_line(in, "magic") != "vircis-index 1") bad_index("missing 'vircis-index 1' header");
  InvertedIndex index;

  const std::size_t docs = parse_count(expect_line(in, "docs"), "docs");
  for (std::size_t i = 0; i < docs; ++i) {
    const std::string line = expect_line(in, "document");
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) bad_index("malformed document line");
    std::size_t length = 0;
    std::istringstream(line.substr(t1 + 1, t2 - t1 - 1)) >> length;
    const std::string doc = line.substr(0, t1);
    index.doc_lengths_[doc] = length;
    index.titles_[doc] = line.substr(t2 + 1);
  }

  const std::size_t words = parse_count(expect_line(in, "stopwords"), "stopwords");
  for (std::size_t i = 0; i < words; ++i) index.stopwords_.insert(expect_line(in, "stop word"));

  const std::size_t terms = parse_count(expect_line(in, "terms"), "terms");
  for (std::size_t i = 0; i < terms; ++i) {
    std::istringstream header(expect_line(in, "term"));
    std::string term;
    std::size_t df = 0;
    if (!(header >> term >> df) || df == 0) bad_index("malformed term line");
    auto& list = index.postings_[term];
    for (std::size_t j = 0; j < df; ++j) {
      const std::string line = expect_line(in, "posting");
      const auto space = line.rfind(' ');
      if (space == std::string::npos || space == 0) bad_index("malformed posting line");
      Posting p{line.substr(0, space), 0};
      std::istringstream(line.substr(space + 1)) >> p.term_frequency;
      if (p.term_frequency == 0 || !index.contains(p.doc_id)) bad_index("posting for unknown document or zero tf");
      list.push_back(std::move(p));
    }
  }
  return index;
}

void save_index(const InvertedIndex& index, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
  write_index(out, index);
}

InvertedIndex load_index(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path.string());
  return read_index(in);
}

}  // namespace vircis::ir
