#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "vircis/cis/fusion.hpp"
#include "vircis/ir/index.hpp"

namespace vircis::cis {

struct SessionConfig {
  double threshold = 0.0;
  double boost = 2.0;
  std::size_t top_k = 10;
};

struct HistoryEntry {
  std::uint64_t sequence = 0;  // session-wide event order
  std::string query;
  ir::RankedList result;

  friend bool operator==(const HistoryEntry&, const HistoryEntry&) = default;
};

/// A collaborative search session. Not internally synchronized: callers
/// serialize mutations per session (the service keeps one mutex per session).
/// The merged result is recomputed from the full history after every event.
class Session {
 public:
  explicit Session(std::string session_id, SessionConfig config = {});

  const std::string& id() const { return id_; }
  const SessionConfig& config() const { return config_; }
  const std::set<std::string>& collaborators() const { return collaborators_; }
  bool is_member(const std::string& collaborator_id) const { return collaborators_.count(collaborator_id) != 0; }

  /// Idempotent; returns false when already a member. Throws Error{parameter} on an empty id.
  bool join(const std::string& collaborator_id);

  /// Runs the search, records it in the caller's history, recomputes the
  /// merged result, and returns the caller's own list.
  /// Throws Error{membership} for non-members.
  const ir::RankedList& submit_query(const std::string& collaborator_id, const std::string& query,
                                     const ir::InvertedIndex& index);

  /// Throws Error{membership} for non-members and Error{invalid_judgment} when
  /// doc_id never appeared in any history entry.
  void judge(const std::string& collaborator_id, const std::string& doc_id, Relevance relevance);

  const std::map<std::string, std::vector<HistoryEntry>>& history() const { return history_; }
  const Judgments& judgments() const { return judgments_; }
  const MergedResult& merged() const { return merged_; }

  /// Other collaborators' past queries, most recent first, without
  /// duplicates or strings the requester already issued.
  std::vector<std::string> suggest_queries(const std::string& collaborator_id) const;

  SplitAssignment split() const { return split_results(merged_, collaborators_); }

  /// Per-query lists in event order, as fed to merge_results.
  std::vector<ContributedList> contributed_lists() const;

 private:
  void require_member(const std::string& collaborator_id) const;
  void recompute();

  std::string id_;
  SessionConfig config_;
  std::set<std::string> collaborators_;
  std::map<std::string, std::vector<HistoryEntry>> history_;
  Judgments judgments_;
  MergedResult merged_;
  std::uint64_t next_sequence_ = 0;
};

}  // namespace vircis::cis
