#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "vircis/dsp/synth.hpp"
#include "vircis/hmm/train.hpp"
#include "vircis/recognizer/recognizer.hpp"

namespace vircis::testing {

struct SyntheticSet {
  recognizer::Vocabulary vocab;
  std::vector<dsp::AudioClip> train;
  std::vector<dsp::AudioClip> test;
  // Per-label training log-likelihood traces.
  std::map<std::string, std::vector<double>> traces;
};

inline std::vector<dsp::ToneWord> four_tone_words() {
  return {{"hmm", {300, 300}}, {"viterbi", {2000, 2000}}, {"mfcc", {300, 2000}}, {"retrieval", {1000, 3000}}};
}

/// Train clips are drawn first (all words), then test clips, from one seeded stream.
inline SyntheticSet build_synthetic(const std::vector<dsp::ToneWord>& words, std::size_t train_per_word,
                                    std::size_t test_per_word, std::uint64_t seed,
                                    const hmm::TrainingConfig& config = {}) {
  SyntheticSet set;
  std::mt19937_64 rng(seed);
  const dsp::SynthOptions options;
  for (const auto& w : words) {
    for (std::size_t i = 0; i < train_per_word; ++i) set.train.push_back(dsp::synthesize_word(w, options, rng));
  }
  for (const auto& w : words) {
    for (std::size_t i = 0; i < test_per_word; ++i) set.test.push_back(dsp::synthesize_word(w, options, rng));
  }
  std::map<std::string, std::vector<dsp::FeatureMatrix>> by_label;
  for (const auto& clip : set.train) by_label[clip.label].push_back(dsp::extract_mfcc(clip, dsp::FrontendConfig{}));
  for (const auto& [label, seqs] : by_label) {
    auto trained = hmm::train_model_traced(seqs, label, config);
    set.traces[label] = trained.log_likelihood;
    set.vocab.add(std::move(trained.model));
  }
  return set;
}

}  // namespace vircis::testing
