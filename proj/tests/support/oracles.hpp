#pragma once

// Reference implementations used only by tests. They deliberately take the
// slow, obvious route (enumeration, full scans, materialized triples) and
// share no code with the library paths they check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "vircis/cis/fusion.hpp"
#include "vircis/dsp/mfcc.hpp"
#include "vircis/hmm/model.hpp"
#include "vircis/ir/index.hpp"

namespace vircis::testing {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

inline double gaussian_logpdf(const std::vector<double>& mean, const std::vector<double>& var,
                              std::span<const double> x) {
  double acc = 0.0;
  for (std::size_t d = 0; d < x.size(); ++d) {
    acc += -0.5 * std::log(2.0 * std::numbers::pi * var[d]) - 0.5 * (x[d] - mean[d]) * (x[d] - mean[d]) / var[d];
  }
  return acc;
}

/// Joint log probability of one complete path (1-based states) including entry and exit.
inline double path_logprob(const hmm::HmmModel& m, const dsp::FeatureMatrix& obs, const std::vector<std::size_t>& path) {
  double lp = m.entry(path[0]) + gaussian_logpdf(m.state(path[0]).mean, m.state(path[0]).variance, obs.row(0));
  for (std::size_t t = 1; t < path.size(); ++t) {
    lp += m.trans(path[t - 1], path[t]) +
          gaussian_logpdf(m.state(path[t]).mean, m.state(path[t]).variance, obs.row(t));
  }
  return lp + m.exit(path.back());
}

struct BruteForceBest {
  double log_prob = kNegInf;
  std::vector<std::size_t> path;
};

/// Enumerates all N^T state paths.
inline BruteForceBest brute_force_viterbi(const hmm::HmmModel& m, const dsp::FeatureMatrix& obs) {
  const std::size_t n = m.num_states();
  const std::size_t frames = obs.rows();
  std::vector<std::size_t> path(frames, 1);
  BruteForceBest best;
  best.path = path;
  while (true) {
    const double lp = path_logprob(m, obs, path);
    if (lp > best.log_prob) best = {lp, path};
    std::size_t i = frames;
    while (i > 0) {
      --i;
      if (path[i] < n) {
        ++path[i];
        std::fill(path.begin() + static_cast<long>(i) + 1, path.end(), 1);
        break;
      }
      if (i == 0) return best;
    }
  }
}

/// Random fully connected model with stochastic rows; sharp variances make
/// the emissions nearly discrete.
inline hmm::HmmModel random_model(std::mt19937_64& rng, std::size_t n, std::size_t dim, bool sharp = false) {
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  std::uniform_real_distribution<double> mean(-2.0, 2.0);
  std::uniform_real_distribution<double> var(sharp ? 0.01 : 0.2, sharp ? 0.1 : 2.0);
  hmm::HmmModel m("rand", n, dim);
  auto fill_row = [&](std::vector<double>& row) {
    double total = 0.0;
    for (double& w : row) total += (w = weight(rng));
    for (double& w : row) w = std::log(w / total);
  };
  std::vector<double> entry(n);
  fill_row(entry);
  for (std::size_t s = 1; s <= n; ++s) m.entry(s) = entry[s - 1];
  for (std::size_t from = 1; from <= n; ++from) {
    std::vector<double> row(n + 1);
    fill_row(row);
    for (std::size_t to = 1; to <= n; ++to) m.trans(from, to) = row[to - 1];
    m.exit(from) = row[n];
  }
  for (std::size_t s = 1; s <= n; ++s) {
    for (std::size_t d = 0; d < dim; ++d) {
      m.state(s).mean[d] = mean(rng);
      m.state(s).variance[d] = var(rng);
    }
  }
  return m;
}

inline dsp::FeatureMatrix random_observations(std::mt19937_64& rng, std::size_t frames, std::size_t dim) {
  std::uniform_real_distribution<double> value(-2.5, 2.5);
  dsp::FeatureMatrix obs(frames, dim);
  for (std::size_t t = 0; t < frames; ++t) {
    for (std::size_t d = 0; d < dim; ++d) obs(t, d) = value(rng);
  }
  return obs;
}

/// TF-IDF by scanning raw token lists; no index involved.
inline std::vector<ir::ScoredDoc> naive_search(const std::map<std::string, std::vector<std::string>>& tokens,
                                               const std::vector<std::string>& query_terms) {
  const double n = static_cast<double>(tokens.size());
  std::vector<ir::ScoredDoc> out;
  for (const auto& [doc, toks] : tokens) {
    double score = 0.0;
    for (const auto& term : query_terms) {
      std::size_t df = 0;
      for (const auto& [other, other_toks] : tokens) {
        if (std::find(other_toks.begin(), other_toks.end(), term) != other_toks.end()) ++df;
      }
      if (df == 0) continue;
      const auto tf = static_cast<double>(std::count(toks.begin(), toks.end(), term));
      score += tf * std::log(1.0 + n / static_cast<double>(df));
    }
    if (score > 0.0) out.push_back({doc, score});
  }
  std::sort(out.begin(), out.end(), [](const ir::ScoredDoc& a, const ir::ScoredDoc& b) {
    return a.score != b.score ? a.score > b.score : a.doc_id < b.doc_id;
  });
  return out;
}

/// CombMNZ by materializing every (doc, list, collaborator, normalized score) triple.
inline std::vector<cis::MergedEntry> brute_force_combmnz(const std::vector<cis::ContributedList>& lists,
                                                         const cis::RelevanceFilterConfig& filter) {
  struct Triple {
    std::string doc;
    std::size_t list;
    std::string collaborator;
    double normalized;
  };
  std::vector<Triple> triples;
  for (std::size_t l = 0; l < lists.size(); ++l) {
    const auto& entries = lists[l].list.entries;
    if (entries.empty()) continue;
    double lo = entries[0].score;
    double hi = entries[0].score;
    for (const auto& e : entries) {
      lo = std::min(lo, e.score);
      hi = std::max(hi, e.score);
    }
    for (const auto& e : entries) {
      const auto j = filter.judgments.find({lists[l].collaborator_id, e.doc_id});
      if (j != filter.judgments.end() && j->second == cis::Relevance::irrelevant) continue;
      triples.push_back({e.doc_id, l, lists[l].collaborator_id, hi == lo ? 1.0 : (e.score - lo) / (hi - lo)});
    }
  }
  std::set<std::string> docs;
  for (const auto& t : triples) docs.insert(t.doc);
  std::vector<cis::MergedEntry> out;
  for (const auto& doc : docs) {
    double sum = 0.0;
    double best = -1.0;
    std::set<std::string> who;
    for (const auto& t : triples) {
      if (t.doc != doc) continue;
      sum += t.normalized;
      best = std::max(best, t.normalized);
      who.insert(t.collaborator);
    }
    if (best < filter.threshold) continue;
    out.push_back({doc, static_cast<double>(who.size()) * sum, who.size()});
  }
  std::sort(out.begin(), out.end(), [](const cis::MergedEntry& a, const cis::MergedEntry& b) {
    return a.fused_score != b.fused_score ? a.fused_score > b.fused_score : a.doc_id < b.doc_id;
  });
  return out;
}

}  // namespace vircis::testing
