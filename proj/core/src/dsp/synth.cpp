#include "vircis/dsp/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <sstream>

#include "vircis/error.hpp"

namespace vircis::dsp {

AudioClip synthesize_tone(double frequency_hz, double seconds, int sample_rate, double amplitude) {
  if (sample_rate <= 0 || !(seconds > 0.0) || !(std::abs(amplitude) <= 1.0)) {
    throw Error(ErrorCode::parameter, "synthesize_tone: bad parameters");
  }
  AudioClip clip;
  clip.sample_rate = sample_rate;
  const auto n = static_cast<std::size_t>(std::lround(seconds * sample_rate));
  clip.samples.resize(n);
  const double step = 2.0 * std::numbers::pi * frequency_hz / sample_rate;
  for (std::size_t i = 0; i < n; ++i) clip.samples[i] = amplitude * std::sin(step * static_cast<double>(i));
  quantize_pcm16(clip);
  return clip;
}

AudioClip synthesize_word(const ToneWord& word, const SynthOptions& options, std::mt19937_64& rng) {
  if (word.frequencies_hz.empty()) {
    throw Error(ErrorCode::parameter, "synthesize_word: word '" + word.label + "' has no tones");
  }
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> amp(options.min_amplitude, options.max_amplitude);
  std::uniform_real_distribution<double> edge(0.0, options.edge_silence_ms);
  std::normal_distribution<double> noise(0.0, options.noise_stddev);

  const double rate = options.sample_rate;
  const double amplitude = amp(rng);
  const auto lead = static_cast<std::size_t>(edge(rng) * rate / 1000.0);
  const auto tail = static_cast<std::size_t>(edge(rng) * rate / 1000.0);
  const auto ramp = static_cast<std::size_t>(0.005 * rate);

  std::vector<double> voiced;
  double phase = 0.0;
  for (double f : word.frequencies_hz) {
    const double freq = f * (1.0 + options.frequency_jitter * unit(rng));
    const double ms = options.segment_ms * (1.0 + options.duration_jitter * unit(rng));
    const auto n = static_cast<std::size_t>(ms * rate / 1000.0);
    const double step = 2.0 * std::numbers::pi * freq / rate;
    for (std::size_t i = 0; i < n; ++i) {
      voiced.push_back(amplitude * std::sin(phase));
      phase += step;
    }
  }
  const std::size_t ramp_len = std::min(ramp, voiced.size() / 2);
  for (std::size_t i = 0; i < ramp_len; ++i) {
    const double g = static_cast<double>(i) / static_cast<double>(ramp_len);
    voiced[i] *= g;
    voiced[voiced.size() - 1 - i] *= g;
  }

  AudioClip clip;
  clip.sample_rate = options.sample_rate;
  clip.label = word.label;
  clip.samples.assign(lead, 0.0);
  clip.samples.insert(clip.samples.end(), voiced.begin(), voiced.end());
  clip.samples.resize(clip.samples.size() + tail, 0.0);
  for (double& s : clip.samples) s = std::clamp(s + noise(rng), -1.0, 1.0);
  quantize_pcm16(clip);
  return clip;
}

std::vector<ToneWord> parse_tone_vocabulary(std::istream& in) {
  std::vector<ToneWord> words;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    ToneWord word;
    if (!(fields >> word.label)) continue;
    double hz = 0.0;
    while (fields >> hz) {
      if (!(hz > 0.0)) break;
      word.frequencies_hz.push_back(hz);
    }
    if (!fields.eof() || word.frequencies_hz.empty()) {
      throw Error(ErrorCode::format,
                  "vocabulary line " + std::to_string(lineno) + ": expected '<label> <hz>...'");
    }
    for (const auto& w : words) {
      if (w.label == word.label) throw Error(ErrorCode::format, "vocabulary: duplicate label " + word.label);
    }
    words.push_back(std::move(word));
  }
  return words;
}

std::vector<ToneWord> load_tone_vocabulary(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path.string());
  return parse_tone_vocabulary(in);
}

}  // namespace vircis::dsp
