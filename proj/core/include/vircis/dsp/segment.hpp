#pragma once

#include <vector>

#include "vircis/dsp/audio.hpp"

namespace vircis::dsp {

/// Energy-based splitting of a multi-word utterance into word clips.
struct SegmentationConfig {
  double analysis_ms = 10.0;
  double energy_threshold = 1e-4;  // mean square per analysis frame
  double min_silence_ms = 200.0;   // shorter gaps stay inside a word
  double min_segment_ms = 30.0;
};

/// Voiced regions separated by silence runs of at least min_silence_ms.
/// Leading and trailing silence is trimmed; an all-silent clip yields none.
std::vector<AudioClip> split_on_silence(const AudioClip& clip, const SegmentationConfig& config = {});

}  // namespace vircis::dsp
