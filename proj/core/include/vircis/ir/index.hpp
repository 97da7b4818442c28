#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "vircis/ir/text.hpp"

namespace vircis::ir {

struct Document {
  std::string doc_id;
  std::string title;
  std::string body;
};

struct Posting {
  std::string doc_id;
  std::size_t term_frequency = 0;

  friend bool operator==(const Posting&, const Posting&) = default;
};

struct ScoredDoc {
  std::string doc_id;
  double score = 0.0;

  friend bool operator==(const ScoredDoc&, const ScoredDoc&) = default;
};

/// One collaborator's result: descending score, ties by doc_id ascending.
struct RankedList {
  std::vector<ScoredDoc> entries;
  std::vector<std::string> query_terms;

  bool empty() const { return entries.empty(); }
  friend bool operator==(const RankedList&, const RankedList&) = default;
};

/// Immutable after construction; safe for concurrent search().
class InvertedIndex {
 public:
  InvertedIndex() = default;

  std::size_t doc_count() const { return doc_lengths_.size(); }
  const std::map<std::string, std::vector<Posting>, std::less<>>& postings() const { return postings_; }
  const std::vector<Posting>* find(std::string_view term) const;
  const std::map<std::string, std::size_t>& doc_lengths() const { return doc_lengths_; }
  const std::map<std::string, std::string>& titles() const { return titles_; }
  const StopWords& stopwords() const { return stopwords_; }
  bool contains(const std::string& doc_id) const { return doc_lengths_.count(doc_id) != 0; }

  friend bool operator==(const InvertedIndex&, const InvertedIndex&) = default;

 private:
  friend InvertedIndex index_documents(const std::vector<Document>&, const StopWords&);
  friend InvertedIndex read_index(std::istream&);

  std::map<std::string, std::vector<Posting>, std::less<>> postings_;  // sorted by doc_id
  std::map<std::string, std::size_t> doc_lengths_;
  std::map<std::string, std::string> titles_;
  StopWords stopwords_;
};

/// Indexes tokenize_filter(title + " " + body). Throws Error{indexing} on a
/// duplicate or empty doc_id, or an empty body.
InvertedIndex index_documents(const std::vector<Document>& docs, const StopWords& stopwords);

/// ln(1 + N/df), always positive.
double idf(std::size_t doc_count, std::size_t document_frequency);

/// TF-IDF ranked retrieval over the distinct filtered query terms, summed in
/// query order. Zero-score documents are omitted; top_k == 0 means no limit.
RankedList search(const InvertedIndex& index, std::string_view query, std::size_t top_k);

/// Sorts by the RankedList order: score descending, doc_id ascending.
void sort_ranked(std::vector<ScoredDoc>& entries);

// Text serialization:
//   vircis-index 1
//   docs <N>            then N lines "doc_id<TAB>length<TAB>title"
//   stopwords <K>       then K lines, one word each
//   terms <M>           then per term: "term df" followed by df lines "doc_id tf"
// Round-trips exactly.
void write_index(std::ostream& out, const InvertedIndex& index);
InvertedIndex read_index(std::istream& in);
void save_index(const InvertedIndex& index, const std::filesystem::path& path);
InvertedIndex load_index(const std::filesystem::path& path);

}  // namespace vircis::ir
