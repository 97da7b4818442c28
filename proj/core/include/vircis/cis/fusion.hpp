#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vircis/ir/index.hpp"

namespace vircis::cis {

enum class Relevance { relevant, irrelevant };

/// Latest judgment per (collaborator_id, doc_id).
using Judgments = std::map<std::pair<std::string, std::string>, Relevance>;

struct RelevanceFilterConfig {
  double threshold = 0.0;  // tau in [0, 1]; docs whose best normalized score is below it are dropped
  Judgments judgments;
};

/// A ranked list together with the collaborator who produced it.
struct ContributedList {
  std::string collaborator_id;
  ir::RankedList list;
};

struct MergedEntry {
  std::string doc_id;
  double fused_score = 0.0;
  std::size_t contributor_count = 0;

  friend bool operator==(const MergedEntry&, const MergedEntry&) = default;
};

/// The team's combined result: fused score descending, ties by doc_id.
struct MergedResult {
  std::vector<MergedEntry> entries;
  std::map<std::string, std::set<std::string>> provenance;

  bool empty() const { return entries.empty(); }
  friend bool operator==(const MergedResult&, const MergedResult&) = default;
};

struct SplitAssignment {
  std::map<std::string, std::vector<std::string>> assignment;

  friend bool operator==(const SplitAssignment&, const SplitAssignment&) = default;
};

/// Min-max normalization into [0, 1]; a single entry or constant scores map to 1.0.
std::vector<double> min_max_normalize(const ir::RankedList& list);

/// Normalize each list, drop pairs the collaborator judged irrelevant, drop
/// docs whose best surviving normalized score is below the threshold, then
/// CombMNZ: fused(d) = |contributing collaborators| * sum of the normalized
/// scores of d over every surviving list (summed in input order).
/// Throws Error{configuration} when the threshold is outside [0, 1].
MergedResult merge_results(std::span<const ContributedList> lists, const RelevanceFilterConfig& filter);

/// Boosts docs judged relevant by anyone (score * boost); removes docs judged
/// irrelevant by someone and relevant by nobody; re-sorts.
MergedResult rerank_with_judgments(MergedResult merged, const Judgments& judgments, double boost);

/// Round-robin by merged rank over the collaborators in sorted order.
/// Throws Error{configuration} for an empty collaborator set.
SplitAssignment split_results(const MergedResult& merged, const std::set<std::string>& collaborators);

void sort_merged(std::vector<MergedEntry>& entries);

}  // namespace vircis::cis
