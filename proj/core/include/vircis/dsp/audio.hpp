#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace vircis::dsp {

/// Mono waveform with amplitudes in [-1, 1].
struct AudioClip {
  std::vector<double> samples;
  int sample_rate = 16000;
  std::string label;  // empty unless the clip is a labelled fixture

  double duration_seconds() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

/// Throws Error{parameter} if the clip violates its invariants.
void validate(const AudioClip& clip);

// RIFF/WAVE, PCM 16-bit, mono or stereo. Stereo is downmixed by averaging
// the channels; samples are scaled by 1/32768.
AudioClip load_wav(const std::filesystem::path& path);
AudioClip parse_wav(std::span<const std::byte> bytes);

// Writes mono PCM-16. Samples are rounded to the nearest LSB and clamped.
void save_wav(const AudioClip& clip, const std::filesystem::path& path);
std::vector<std::byte> encode_wav(const AudioClip& clip);

/// Rounds every sample to the PCM-16 grid so that save/load is lossless.
void quantize_pcm16(AudioClip& clip);

}  // namespace vircis::dsp
