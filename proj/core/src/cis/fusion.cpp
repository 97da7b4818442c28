#include "vircis/cis/fusion.hpp"

#include <algorithm>
#include <cmath>

#include "vircis/error.hpp"

namespace vircis::cis {

std::vector<double> min_max_normalize(const ir::RankedList& list) {
  if (list.entries.empty()) return {};
  double lo = list.entries.front().score;
  double hi = lo;
  for (const auto& e : list.entries) {
    lo = std::min(lo, e.score);
    hi = std::max(hi, e.score);
  }
  std::vector<double> out;
  out.reserve(list.entries.size());
  for (const auto& e : list.entries) out.push_back(hi == lo ? 1.0 : (e.score - lo) / (hi - lo));
  return out;
}

void sort_merged(std::vector<MergedEntry>& entries) {
  std::sort(entries.begin(), entries.end(), [](const MergedEntry& a, const MergedEntry& b) {
    if (a.fused_score != b.fused_score) return a.fused_score > b.fused_score;
    return a.doc_id < b.doc_id;
  });
}

MergedResult merge_results(std::span<const ContributedList> lists, const RelevanceFilterConfig& filter) {
  if (!(filter.threshold >= 0.0 && filter.threshold <= 1.0)) {
    throw Error(ErrorCode::configuration, "merge: relevance threshold must lie in [0, 1]");
  }

  struct Accumulator {
    double sum = 0.0;
    double best = 0.0;
    std::set<std::string> contributors;
  };
  std::map<std::string, Accumulator> docs;

  for (const auto& contributed : lists) {
    const auto normalized = min_max_normalize(contributed.list);
    for (std::size_t i = 0; i < normalized.size(); ++i) {
      const auto& doc = contributed.list.entries[i].doc_id;
      const auto judged = filter.judgments.find({contributed.collaborator_id, doc});
      if (judged != filter.judgments.end() && judged->second == Relevance::irrelevant) continue;
      auto& acc = docs[doc];
      acc.best = acc.contributors.empty() ? normalized[i] : std::max(acc.best, normalized[i]);
      acc.sum += normalized[i];
      acc.contributors.insert(contributed.collaborator_id);
    }
  }

  MergedResult merged;
  for (auto& [doc, acc] : docs) {
    if (acc.best < filter.threshold) continue;
    const std::size_t count = acc.contributors.size();
    merged.entries.push_back({doc, static_cast<double>(count) * acc.sum, count});
    merged.provenance.emplace(doc, std::move(acc.contributors));
  }
  sort_merged(merged.entries);
  return merged;
}

MergedResult rerank_with_judgments(MergedResult merged, const Judgments& judgments, double boost) {
  if (!(std::isfinite(boost) && boost > 0.0)) {
    throw Error(ErrorCode::configuration, "rerank: boost must be a positive finite number");
  }
  std::set<std::string> relevant;
  std::set<std::string> irrelevant;
  for (const auto& [key, verdict] : judgments) {
    (verdict == Relevance::relevant ? relevant : irrelevant).insert(key.second);
  }

  std::vector<MergedEntry> kept;
  kept.reserve(merged.entries.size());
  for (auto& e : merged.entries) {
    if (relevant.count(e.doc_id)) {
      e.fused_score *= boost;
    } else if (irrelevant.count(e.doc_id)) {
      merged.provenance.erase(e.doc_id);
      continue;
    }
    kept.push_back(std::move(e));
  }
  sort_merged(kept);
  merged.entries = std::move(kept);
  return merged;
}

SplitAssignment split_results(const MergedResult& merged, const std::set<std::string>& collaborators) {
  if (collaborators.empty()) throw Error(ErrorCode::configuration, "split: no collaborators");
  const std::vector<std::string> order(collaborators.begin(), collaborators.end());
  SplitAssignment split;
  for (const auto& c : order) split.assignment[c];
  for (std::size_t rank = 0; rank < merged.entries.size(); ++rank) {
    split.assignment[order[rank % order.size()]].push_back(merged.entries[rank].doc_id);
  }
  return split;
}

}  // namespace vircis::cis
