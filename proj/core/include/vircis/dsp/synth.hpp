#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "vircis/dsp/audio.hpp"

namespace vircis::dsp {

/// A synthetic "word": consecutive tone segments, one per frequency.
struct ToneWord {
  std::string label;
  std::vector<double> frequencies_hz;
};

struct SynthOptions {
  int sample_rate = 16000;
  double segment_ms = 120.0;
  double frequency_jitter = 0.02;  // relative, uniform +-
  double duration_jitter = 0.2;    // relative, uniform +-
  double min_amplitude = 0.3;
  double max_amplitude = 0.8;
  double noise_stddev = 0.002;
  double edge_silence_ms = 40.0;   // upper bound on leading/trailing silence
};

/// Pure sine, quantized to PCM-16.
AudioClip synthesize_tone(double frequency_hz, double seconds, int sample_rate, double amplitude);

/// One randomized utterance of word; the clip is labelled and PCM-16 quantized.
AudioClip synthesize_word(const ToneWord& word, const SynthOptions& options, std::mt19937_64& rng);

// Vocabulary spec: one word per line, "<label> <hz> [<hz> ...]"; '#' starts a comment.
std::vector<ToneWord> parse_tone_vocabulary(std::istream& in);
std::vector<ToneWord> load_tone_vocabulary(const std::filesystem::path& path);

}  // namespace vircis::dsp
