#include "vircis/dsp/segment.hpp"

#include <algorithm>
#include <cmath>

#include "vircis/error.hpp"

namespace vircis::dsp {

std::vector<AudioClip> split_on_silence(const AudioClip& clip, const SegmentationConfig& config) {
  if (clip.sample_rate <= 0 || !(config.analysis_ms > 0.0)) {
    throw Error(ErrorCode::parameter, "split_on_silence: bad configuration");
  }
  const auto hop = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::lround(config.analysis_ms * clip.sample_rate / 1000.0)));
  const std::size_t n = clip.samples.size();
  const std::size_t frames = (n + hop - 1) / hop;

  std::vector<bool> voiced(frames, false);
  for (std::size_t f = 0; f < frames; ++f) {
    const std::size_t begin = f * hop;
    const std::size_t end = std::min(n, begin + hop);
    double acc = 0.0;
    for (std::size_t i = begin; i < end; ++i) acc += clip.samples[i] * clip.samples[i];
    voiced[f] = acc / static_cast<double>(end - begin) > config.energy_threshold;
  }

  const auto min_gap = static_cast<std::size_t>(std::ceil(config.min_silence_ms / config.analysis_ms));
  const auto min_len = static_cast<std::size_t>(std::ceil(config.min_segment_ms / config.analysis_ms));

  // [first, last] voiced frame ranges, merged across short gaps.
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  for (std::size_t f = 0; f < frames; ++f) {
    if (!voiced[f]) continue;
    if (!runs.empty() && f - runs.back().second - 1 < min_gap) {
      runs.back().second = f;
    } else {
      runs.emplace_back(f, f);
    }
  }

  std::vector<AudioClip> segments;
  for (const auto& [first, last] : runs) {
    if (last - first + 1 < min_len) continue;
    AudioClip seg;
    seg.sample_rate = clip.sample_rate;
    const std::size_t begin = first * hop;
    const std::size_t end = std::min(n, (last + 1) * hop);
    seg.samples.assign(clip.samples.begin() + static_cast<long>(begin),
                       clip.samples.begin() + static_cast<long>(end));
    segments.push_back(std::move(seg));
  }
  return segments;
}

}  // namespace vircis::dsp
