#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "vircis/dsp/mfcc.hpp"
#include "vircis/hmm/model.hpp"

namespace vircis::hmm {

/// T x N table of log b_s(o_t); column s-1 holds state s.
class EmissionTable {
 public:
  EmissionTable(std::size_t frames, std::size_t states)
      : frames_(frames), states_(states), values_(frames * states, 0.0) {}

  std::size_t frames() const { return frames_; }
  std::size_t states() const { return states_; }
  double operator()(std::size_t t, std::size_t s) const { return values_[t * states_ + (s - 1)]; }
  double& operator()(std::size_t t, std::size_t s) { return values_[t * states_ + (s - 1)]; }

 private:
  std::size_t frames_;
  std::size_t states_;
  std::vector<double> values_;
};

EmissionTable emission_table(const dsp::FeatureMatrix& observations, const HmmModel& model);

/// Path-probability matrix of the Viterbi recursion, in log space.
/// Rows 0..N+1 (row 0 is the start state, row N+1 is q_F); columns are
/// time steps 0..T-1. Backpointers exist for emitting rows 1..N and hold a
/// predecessor state in 0..N, 0 meaning "entered from the start state".
class Trellis {
 public:
  Trellis(std::size_t num_states, std::size_t frames);

  std::size_t num_states() const { return num_states_; }
  std::size_t frames() const { return frames_; }

  double score(std::size_t row, std::size_t t) const { return scores_[row * frames_ + t]; }
  double& score(std::size_t row, std::size_t t) { return scores_[row * frames_ + t]; }
  std::size_t backpointer(std::size_t s, std::size_t t) const { return backpointers_[(s - 1) * frames_ + t]; }
  std::size_t& backpointer(std::size_t s, std::size_t t) { return backpointers_[(s - 1) * frames_ + t]; }

  double final_score = 0.0;
  std::size_t final_backpointer = 0;  // argmax into q_F

 private:
  std::size_t num_states_;
  std::size_t frames_;
  std::vector<double> scores_;
  std::vector<std::size_t> backpointers_;
};

struct ViterbiResult {
  std::vector<std::size_t> state_path;  // T entries, each in 1..N
  double log_prob = 0.0;                // includes entry and exit transitions
};

/// Most likely state path. Ties in max/argmax go to the lowest state index.
/// Throws Error{empty_observation} for T = 0 and Error{model} on dimension mismatch.
std::pair<ViterbiResult, Trellis> viterbi(const dsp::FeatureMatrix& observations, const HmmModel& model);
std::pair<ViterbiResult, Trellis> viterbi(const EmissionTable& emissions, const HmmModel& model);

/// Same score as viterbi(...).first.log_prob, bit for bit, without the trellis.
double sequence_logprob(const dsp::FeatureMatrix& observations, const HmmModel& model);
double sequence_logprob(const EmissionTable& emissions, const HmmModel& model);

}  // namespace vircis::hmm
