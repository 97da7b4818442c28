#include "vircis/hmm/viterbi.hpp"

#include <limits>

#include "vircis/error.hpp"

namespace vircis::hmm {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_shapes(const EmissionTable& emissions, const HmmModel& model) {
  if (emissions.frames() == 0) throw Error(ErrorCode::empty_observation, "viterbi: no observations");
  if (emissions.states() != model.num_states()) {
    throw Error(ErrorCode::model, "viterbi: emission table does not match model state count");
  }
}

// max_{s'} prev[s'] + a_{s',s}; strict '>' keeps the lowest index on ties.
// Both entry points below call this so their scores agree exactly.
struct Best {
  double score;
  std::size_t state;
};

Best best_predecessor(const std::vector<double>& prev, const HmmModel& model, std::size_t to) {
  Best best{kNegInf, 1};
  for (std::size_t from = 1; from <= model.num_states(); ++from) {
    const double candidate = prev[from - 1] + model.trans(from, to);
    if (candidate > best.score) best = {candidate, from};
  }
  return best;
}

Best best_exit(const std::vector<double>& last, const HmmModel& model) {
  Best best{kNegInf, 1};
  for (std::size_t s = 1; s <= model.num_states(); ++s) {
    const double candidate = last[s - 1] + model.exit(s);
    if (candidate > best.score) best = {candidate, s};
  }
  return best;
}

}  // namespace

EmissionTable emission_table(const dsp::FeatureMatrix& observations, const HmmModel& model) {
  if (observations.rows() > 0 && observations.cols() != model.dim()) {
    throw Error(ErrorCode::model, "viterbi: observation dimension " + std::to_string(observations.cols()) +
                                      " does not match model '" + model.label() + "' dimension " +
                                      std::to_string(model.dim()));
  }
  EmissionTable table(observations.rows(), model.num_states());
  for (std::size_t t = 0; t < observations.rows(); ++t) {
    for (std::size_t s = 1; s <= model.num_states(); ++s) {
      table(t, s) = emission_logprob(model, s, observations.row(t));
    }
  }
  return table;
}

Trellis::Trellis(std::size_t num_states, std::size_t frames)
    : num_states_(num_states),
      frames_(frames),
      scores_((num_states + 2) * frames, kNegInf),
      backpointers_(num_states * frames, 0) {}

std::pair<ViterbiResult, Trellis> viterbi(const EmissionTable& emissions, const HmmModel& model) {
  check_shapes(emissions, model);
  const std::size_t n = model.num_states();
  const std::size_t frames = emissions.frames();
  Trellis trellis(n, frames);

  std::vector<double> column(n);
  for (std::size_t s = 1; s <= n; ++s) {
    column[s - 1] = model.entry(s) + emissions(0, s);
    trellis.score(s, 0) = column[s - 1];
    trellis.backpointer(s, 0) = 0;
  }

  std::vector<double> next(n);
  for (std::size_t t = 1; t < frames; ++t) {
    for (std::size_t s = 1; s <= n; ++s) {
      const Best best = best_predecessor(column, model, s);
      next[s - 1] = best.score + emissions(t, s);
      trellis.score(s, t) = next[s - 1];
      trellis.backpointer(s, t) = best.state;
    }
    column.swap(next);
  }

  const Best terminal = best_exit(column, model);
  trellis.final_score = terminal.score;
  trellis.final_backpointer = terminal.state;
  trellis.score(n + 1, frames - 1) = terminal.score;

  ViterbiResult result;
  result.log_prob = terminal.score;
  result.state_path.resize(frames);
  std::size_t state = terminal.state;
  for (std::size_t t = frames; t-- > 0;) {
    result.state_path[t] = state;
    state = trellis.backpointer(state, t);
  }
  return {std::move(result), std::move(trellis)};
}

std::pair<ViterbiResult, Trellis> viterbi(const dsp::FeatureMatrix& observations, const HmmModel& model) {
  if (observations.rows() == 0) throw Error(ErrorCode::empty_observation, "viterbi: no observations");
  return viterbi(emission_table(observations, model), model);
}

double sequence_logprob(const EmissionTable& emissions, const HmmModel& model) {
  check_shapes(emissions, model);
  const std::size_t n = model.num_states();
  std::vector<double> column(n);
  for (std::size_t s = 1; s <= n; ++s) column[s - 1] = model.entry(s) + emissions(0, s);
  std::vector<double> next(n);
  for (std::size_t t = 1; t < emissions.frames(); ++t) {
    for (std::size_t s = 1; s <= n; ++s) {
      next[s - 1] = best_predecessor(column, model, s).score + emissions(t, s);
    }
    column.swap(next);
  }
  return best_exit(column, model).score;
}

double sequence_logprob(const dsp::FeatureMatrix& observations, const HmmModel& model) {
  if (observations.rows() == 0) throw Error(ErrorCode::empty_observation, "viterbi: no observations");
  return sequence_logprob(emission_table(observations, model), model);
}

}  // namespace vircis::hmm
