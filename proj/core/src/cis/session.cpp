#include "vircis/cis/session.hpp"

#include <algorithm>

#include "vircis/error.hpp"

namespace vircis::cis {

Session::Session(std::string session_id, SessionConfig config)
    : id_(std::move(session_id)), config_(config) {
  if (id_.empty()) throw Error(ErrorCode::parameter, "session: empty session id");
  if (!(config_.threshold >= 0.0 && config_.threshold <= 1.0) || !(config_.boost > 0.0)) {
    throw Error(ErrorCode::configuration, "session: threshold must be in [0, 1] and boost positive");
  }
}

bool Session::join(const std::string& collaborator_id) {
  if (collaborator_id.empty()) throw Error(ErrorCode::parameter, "session: empty collaborator id");
  if (!collaborators_.insert(collaborator_id).second) return false;
  history_[collaborator_id];
  return true;
}

void Session::require_member(const std::string& collaborator_id) const {
  if (!is_member(collaborator_id)) {
    throw Error(ErrorCode::membership,
                "collaborator '" + collaborator_id + "' is not a member of session '" + id_ + "'");
  }
}

const ir::RankedList& Session::submit_query(const std::string& collaborator_id, const std::string& query,
                                            const ir::InvertedIndex& index) {
  require_member(collaborator_id);
  auto result = ir::search(index, query, config_.top_k);
  auto& entries = history_[collaborator_id];
  entries.push_back({next_sequence_++, query, std::move(result)});
  recompute();
  return entries.back().result;
}

void Session::judge(const std::string& collaborator_id, const std::string& doc_id, Relevance relevance) {
  require_member(collaborator_id);
  const bool seen = std::any_of(history_.begin(), history_.end(), [&](const auto& kv) {
    return std::any_of(kv.second.begin(), kv.second.end(), [&](const HistoryEntry& h) {
      return std::any_of(h.result.entries.begin(), h.result.entries.end(),
                         [&](const ir::ScoredDoc& d) { return d.doc_id == doc_id; });
    });
  });
  if (!seen) {
    throw Error(ErrorCode::invalid_judgment, "document '" + doc_id + "' was never retrieved in session '" + id_ + "'");
  }
  judgments_[{collaborator_id, doc_id}] = relevance;
  ++next_sequence_;
  recompute();
}

std::vector<ContributedList> Session::contributed_lists() const {
  std::vector<std::pair<std::uint64_t, ContributedList>> ordered;
  for (const auto& [collaborator, entries] : history_) {
    for (const auto& h : entries) ordered.push_back({h.sequence, {collaborator, h.result}});
  }
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<ContributedList> lists;
  lists.reserve(ordered.size());
  for (auto& [seq, list] : ordered) lists.push_back(std::move(list));
  return lists;
}

void Session::recompute() {
  const auto lists = contributed_lists();
  merged_ = rerank_with_judgments(merge_results(lists, {config_.threshold, judgments_}), judgments_, config_.boost);
}

std::vector<std::string> Session::suggest_queries(const std::string& collaborator_id) const {
  require_member(collaborator_id);
  std::set<std::string> own;
  for (const auto& h : history_.at(collaborator_id)) own.insert(h.query);

  std::vector<const HistoryEntry*> others;
  for (const auto& [collaborator, entries] : history_) {
    if (collaborator == collaborator_id) continue;
    for (const auto& h : entries) others.push_back(&h);
  }
  std::sort(others.begin(), others.end(),
            [](const HistoryEntry* a, const HistoryEntry* b) { return a->sequence > b->sequence; });

  std::vector<std::string> out;
  std::set<std::string> emitted;
  for (const auto* h : others) {
    if (own.count(h->query) || !emitted.insert(h->query).second) continue;
    out.push_back(h->query);
  }
  return out;
}

}  // namespace vircis::cis
