#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vircis/dsp/mfcc.hpp"
#include "vircis/hmm/model.hpp"

namespace vircis::hmm {

struct TrainingConfig {
  std::size_t num_states = 5;
  std::size_t iterations = 10;
  // Accepted for reproducible command lines; segmental training as
  // implemented here consumes no randomness.
  std::uint64_t seed = 42;
  double variance_floor = kVarianceFloor;
};

struct TrainingResult {
  HmmModel model;
  // Total Viterbi log-likelihood of the training set under the model after
  // each stage: index 0 is the uniform-segmentation initialization.
  std::vector<double> log_likelihood;
  // Model after each stage, same indexing as log_likelihood.
  std::vector<HmmModel> stages;
};

/// Left-to-right (self-loop + advance) model trained by segmental k-means:
/// uniform segmentation, then `iterations` rounds of Viterbi realignment and
/// re-estimation. Transition counts are Laplace smoothed (+1).
/// Throws Error{training_data} when there is no data or a sequence is
/// shorter than num_states.
TrainingResult train_model_traced(std::span<const dsp::FeatureMatrix> sequences, const std::string& label,
                                  const TrainingConfig& config);

HmmModel train_model(std::span<const dsp::FeatureMatrix> sequences, const std::string& label,
                     const TrainingConfig& config);

/// Re-estimation from a fixed alignment; alignment[i][t] is the 1-based state
/// of frame t of sequence i. Exposed for tests of the training steps.
HmmModel estimate_left_to_right(std::span<const dsp::FeatureMatrix> sequences,
                                const std::vector<std::vector<std::size_t>>& alignment,
                                const std::string& label, std::size_t num_states, double variance_floor);

std::vector<std::size_t> uniform_segmentation(std::size_t frames, std::size_t num_states);

}  // namespace vircis::hmm
