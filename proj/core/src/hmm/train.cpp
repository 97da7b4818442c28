#include "vircis/hmm/train.hpp"

#include <algorithm>
#include <cmath>

#include "vircis/error.hpp"
#include "vircis/hmm/viterbi.hpp"

namespace vircis::hmm {
namespace {

void check_training_data(std::span<const dsp::FeatureMatrix> sequences, const TrainingConfig& config) {
  if (config.num_states == 0) throw Error(ErrorCode::parameter, "train: num_states must be positive");
  if (sequences.empty()) throw Error(ErrorCode::training_data, "train: no training sequences");
  const std::size_t dim = sequences.front().cols();
  if (dim == 0) throw Error(ErrorCode::training_data, "train: zero-dimensional features");
  for (std::size_t i = 0; i < sequences.size(); ++i) {
    if (sequences[i].rows() < config.num_states) {
      throw Error(ErrorCode::training_data, "train: sequence " + std::to_string(i) + " has " +
                                                std::to_string(sequences[i].rows()) + " frames, fewer than " +
                                                std::to_string(config.num_states) + " states");
    }
    if (sequences[i].cols() != dim) {
      throw Error(ErrorCode::training_data, "train: sequences disagree on feature dimension");
    }
  }
}

}  // namespace

std::vector<std::size_t> uniform_segmentation(std::size_t frames, std::size_t num_states) {
  std::vector<std::size_t> states(frames);
  for (std::size_t t = 0; t < frames; ++t) states[t] = t * num_states / frames + 1;
  return states;
}

HmmModel estimate_left_to_right(std::span<const dsp::FeatureMatrix> sequences,
                                const std::vector<std::vector<std::size_t>>& alignment,
                                const std::string& label, std::size_t num_states, double variance_floor) {
  const std::size_t dim = sequences.front().cols();
  HmmModel model(label, num_states, dim);

  std::vector<std::size_t> occupancy(num_states, 0);
  std::vector<std::vector<double>> sums(num_states, std::vector<double>(dim, 0.0));
  std::vector<double> stay(num_states, 0.0);
  std::vector<double> leave(num_states, 0.0);  // advance, or exit for the last state

  for (std::size_t i = 0; i < sequences.size(); ++i) {
    const auto& path = alignment[i];
    for (std::size_t t = 0; t < path.size(); ++t) {
      const std::size_t s = path[t] - 1;
      ++occupancy[s];
      const auto row = sequences[i].row(t);
      for (std::size_t d = 0; d < dim; ++d) sums[s][d] += row[d];
      if (t + 1 < path.size()) {
        if (path[t + 1] == path[t]) {
          stay[s] += 1.0;
        } else {
          leave[s] += 1.0;
        }
      } else {
        leave[s] += 1.0;  // final frame exits to q_F
      }
    }
  }

  for (std::size_t s = 0; s < num_states; ++s) {
    auto& g = model.state(s + 1);
    if (occupancy[s] == 0) {
      throw Error(ErrorCode::training_data, "train: state " + std::to_string(s + 1) + " received no frames");
    }
    const double count = static_cast<double>(occupancy[s]);
    for (std::size_t d = 0; d < dim; ++d) g.mean[d] = sums[s][d] / count;
  }

  // Second pass for the variances keeps them nonnegative without cancellation.
  std::vector<std::vector<double>> sq(num_states, std::vector<double>(dim, 0.0));
  for (std::size_t i = 0; i < sequences.size(); ++i) {
    const auto& path = alignment[i];
    for (std::size_t t = 0; t < path.size(); ++t) {
      const std::size_t s = path[t] - 1;
      const auto row = sequences[i].row(t);
      const auto& mean = model.state(s + 1).mean;
      for (std::size_t d = 0; d < dim; ++d) {
        const double diff = row[d] - mean[d];
        sq[s][d] += diff * diff;
      }
    }
  }
  for (std::size_t s = 0; s < num_states; ++s) {
    auto& g = model.state(s + 1);
    const double count = static_cast<double>(occupancy[s]);
    for (std::size_t d = 0; d < dim; ++d) g.variance[d] = std::max(sq[s][d] / count, variance_floor);
  }

  model.entry(1) = 0.0;
  for (std::size_t s = 1; s <= num_states; ++s) {
    const double total = stay[s - 1] + leave[s - 1] + 2.0;
    model.trans(s, s) = std::log((stay[s - 1] + 1.0) / total);
    const double leave_logprob = std::log((leave[s - 1] + 1.0) / total);
    if (s < num_states) {
      model.trans(s, s + 1) = leave_logprob;
    } else {
      model.exit(s) = leave_logprob;
    }
  }
  return model;
}

TrainingResult train_model_traced(std::span<const dsp::FeatureMatrix> sequences, const std::string& label,
                                  const TrainingConfig& config) {
  check_training_data(sequences, config);
  const std::size_t n = config.num_states;

  std::vector<std::vector<std::size_t>> alignment;
  alignment.reserve(sequences.size());
  for (const auto& seq : sequences) alignment.push_back(uniform_segmentation(seq.rows(), n));

  TrainingResult result;
  HmmModel model = estimate_left_to_right(sequences, alignment, label, n, config.variance_floor);

  for (std::size_t iter = 0;; ++iter) {
    double total = 0.0;
    for (std::size_t i = 0; i < sequences.size(); ++i) {
      auto [decoded, trellis] = viterbi(sequences[i], model);
      if (!std::isfinite(decoded.log_prob)) {
        throw Error(ErrorCode::training_data, "train: sequence " + std::to_string(i) + " cannot be aligned");
      }
      total += decoded.log_prob;
      alignment[i] = std::move(decoded.state_path);
    }
    result.log_likelihood.push_back(total);
    result.stages.push_back(model);
    if (iter == config.iterations) break;
    model = estimate_left_to_right(sequences, alignment, label, n, config.variance_floor);
  }
  result.model = std::move(model);
  return result;
}

HmmModel train_model(std::span<const dsp::FeatureMatrix> sequences, const std::string& label,
                     const TrainingConfig& config) {
  return train_model_traced(sequences, label, config).model;
}

}  // namespace vircis::hmm
