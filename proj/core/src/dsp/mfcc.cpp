#include "vircis/dsp/mfcc.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "vircis/dsp/fft.hpp"
#include "vircis/error.hpp"

namespace vircis::dsp {

std::size_t FrameSpec::frame_length_samples(int sample_rate) const {
  return static_cast<std::size_t>(
      std::max<long>(1, std::lround(frame_length_ms * sample_rate / 1000.0)));
}

std::size_t FrameSpec::hop_samples(int sample_rate) const {
  return static_cast<std::size_t>(std::max<long>(1, std::lround(hop_ms * sample_rate / 1000.0)));
}

std::size_t MfccConfig::feature_dim() const {
  std::size_t blocks = 1;
  if (include_deltas) ++blocks;
  if (include_delta_deltas) ++blocks;
  return num_cepstra * blocks;
}

void validate(const FrameSpec& spec) {
  if (!(spec.hop_ms > 0.0) || !(spec.hop_ms <= spec.frame_length_ms)) {
    throw Error(ErrorCode::parameter, "frame spec: need 0 < hop_ms <= frame_length_ms");
  }
  if (!(spec.preemphasis_alpha >= 0.0 && spec.preemphasis_alpha < 1.0)) {
    throw Error(ErrorCode::parameter, "frame spec: preemphasis alpha must be in [0, 1)");
  }
}

void validate(const MfccConfig& config, int sample_rate) {
  if (config.num_mel_filters == 0 || config.num_cepstra == 0) {
    throw Error(ErrorCode::parameter, "mfcc: filter and cepstrum counts must be positive");
  }
  if (config.num_cepstra > config.num_mel_filters) {
    throw Error(ErrorCode::parameter, "mfcc: num_cepstra exceeds num_mel_filters");
  }
  if (!is_power_of_two(config.fft_size)) {
    throw Error(ErrorCode::parameter, "mfcc: fft_size must be a power of two");
  }
  if (!(config.low_freq_hz >= 0.0 && config.low_freq_hz < config.high_freq_hz &&
        config.high_freq_hz <= sample_rate / 2.0)) {
    throw Error(ErrorCode::parameter,
                "mfcc: need 0 <= low_freq_hz < high_freq_hz <= sample_rate/2");
  }
}

FeatureMatrix::FeatureMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

FeatureMatrix::FeatureMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    throw Error(ErrorCode::parameter, "feature matrix: data size does not match shape");
  }
}

AudioClip preemphasize(const AudioClip& clip, double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::parameter, "preemphasize: alpha must be in [0, 1)");
  }
  AudioClip out = clip;
  for (std::size_t n = 1; n < clip.samples.size(); ++n) {
    out.samples[n] = clip.samples[n] - alpha * clip.samples[n - 1];
  }
  return out;
}

double window_weight(Window window, std::size_t n, std::size_t length) {
  if (window == Window::rectangular || length < 2) return 1.0;
  return 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(n) /
                                static_cast<double>(length - 1));
}

std::vector<std::vector<double>> frame_signal(const AudioClip& clip, const FrameSpec& spec) {
  validate(spec);
  if (clip.samples.empty()) throw Error(ErrorCode::input_too_short, "frame_signal: empty clip");
  const std::size_t n = clip.samples.size();
  const std::size_t length = spec.frame_length_samples(clip.sample_rate);
  const std::size_t hop = spec.hop_samples(clip.sample_rate);

  std::size_t count = n >= length ? (n - length) / hop + 1 : 0;
  if (count == 0 || count * hop < n) ++count;

  std::vector<double> window(length);
  for (std::size_t i = 0; i < length; ++i) window[i] = window_weight(spec.window, i, length);

  std::vector<std::vector<double>> frames(count, std::vector<double>(length, 0.0));
  for (std::size_t f = 0; f < count; ++f) {
    const std::size_t start = f * hop;
    const std::size_t stop = std::min(n, start + length);
    for (std::size_t i = start; i < stop; ++i) frames[f][i - start] = clip.samples[i] * window[i - start];
  }
  return frames;
}

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

std::vector<std::vector<double>> mel_filterbank(const MfccConfig& config, int sample_rate) {
  validate(config, sample_rate);
  const std::size_t bins = config.fft_size / 2 + 1;
  const std::size_t m = config.num_mel_filters;
  const double mel_lo = hz_to_mel(config.low_freq_hz);
  const double mel_hi = hz_to_mel(config.high_freq_hz);

  std::vector<double> edges(m + 2);
  for (std::size_t i = 0; i < m + 2; ++i) {
    edges[i] = mel_to_hz(mel_lo + (mel_hi - mel_lo) * static_cast<double>(i) / static_cast<double>(m + 1));
  }

  const double bin_hz = static_cast<double>(sample_rate) / static_cast<double>(config.fft_size);
  std::vector<std::vector<double>> bank(m, std::vector<double>(bins, 0.0));
  for (std::size_t j = 0; j < m; ++j) {
    const double left = edges[j];
    const double centre = edges[j + 1];
    const double right = edges[j + 2];
    for (std::size_t k = 0; k < bins; ++k) {
      const double f = bin_hz * static_cast<double>(k);
      double w = 0.0;
      if (f > left && f <= centre) {
        w = (f - left) / (centre - left);
      } else if (f > centre && f < right) {
        w = (right - f) / (right - centre);
      }
      bank[j][k] = w;
    }
  }
  return bank;
}

std::vector<double> dct_ii(std::span<const double> input, std::size_t num_out) {
  const std::size_t m = input.size();
  if (m == 0 || num_out > m) throw Error(ErrorCode::parameter, "dct_ii: bad sizes");
  std::vector<double> out(num_out);
  const double md = static_cast<double>(m);
  for (std::size_t k = 0; k < num_out; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      acc += input[i] * std::cos(std::numbers::pi * static_cast<double>(k) *
                                 (2.0 * static_cast<double>(i) + 1.0) / (2.0 * md));
    }
    out[k] = acc * (k == 0 ? std::sqrt(1.0 / md) : std::sqrt(2.0 / md));
  }
  return out;
}

FeatureMatrix compute_deltas(const FeatureMatrix& base) {
  constexpr long kWindow = 2;
  constexpr double kNorm = 10.0;  // 2 * (1^2 + 2^2)
  const long rows = static_cast<long>(base.rows());
  FeatureMatrix out(base.rows(), base.cols());
  for (long t = 0; t < rows; ++t) {
    for (std::size_t d = 0; d < base.cols(); ++d) {
      double acc = 0.0;
      for (long k = 1; k <= kWindow; ++k) {
        const auto ahead = static_cast<std::size_t>(std::min(t + k, rows - 1));
        const auto behind = static_cast<std::size_t>(std::max(t - k, 0L));
        acc += static_cast<double>(k) * (base(ahead, d) - base(behind, d));
      }
      out(static_cast<std::size_t>(t), d) = acc / kNorm;
    }
  }
  return out;
}

namespace {

struct FrameAnalysis {
  FeatureMatrix log_energies;        // T x num_mel_filters
  std::vector<double> frame_energy;  // per-frame sum of squares
};

FrameAnalysis analyse(const AudioClip& clip, const FrameSpec& spec, const MfccConfig& config) {
  validate(spec);
  validate(config, clip.sample_rate);
  if (clip.samples.empty()) throw Error(ErrorCode::input_too_short, "mfcc: clip has no samples");
  if (spec.frame_length_samples(clip.sample_rate) > config.fft_size) {
    throw Error(ErrorCode::parameter, "mfcc: frame length exceeds fft_size");
  }

  const AudioClip emphasized = preemphasize(clip, spec.preemphasis_alpha);
  const auto frames = frame_signal(emphasized, spec);
  const auto bank = mel_filterbank(config, clip.sample_rate);

  FrameAnalysis result{FeatureMatrix(frames.size(), config.num_mel_filters), {}};
  result.frame_energy.reserve(frames.size());
  for (std::size_t t = 0; t < frames.size(); ++t) {
    const auto power = power_spectrum(frames[t], config.fft_size);
    for (std::size_t j = 0; j < bank.size(); ++j) {
      double e = 0.0;
      for (std::size_t k = 0; k < power.size(); ++k) e += bank[j][k] * power[k];
      result.log_energies(t, j) = std::log(std::max(e, kLogEnergyFloor));
    }
    double energy = 0.0;
    for (double s : frames[t]) energy += s * s;
    result.frame_energy.push_back(energy);
  }
  return result;
}

}  // namespace

FeatureMatrix log_filterbank_energies(const AudioClip& clip, const FrameSpec& spec,
                                      const MfccConfig& config) {
  return analyse(clip, spec, config).log_energies;
}

FeatureMatrix extract_mfcc(const AudioClip& clip, const FrameSpec& spec, const MfccConfig& config) {
  const FrameAnalysis analysis = analyse(clip, spec, config);
  const std::size_t frames = analysis.log_energies.rows();
  const std::size_t nc = config.num_cepstra;

  FeatureMatrix cepstra(frames, nc);
  for (std::size_t t = 0; t < frames; ++t) {
    const auto c = dct_ii(analysis.log_energies.row(t), nc);
    std::copy(c.begin(), c.end(), cepstra.row(t).begin());
    if (config.include_energy) {
      cepstra(t, 0) = std::log(std::max(analysis.frame_energy[t], kLogEnergyFloor));
    }
  }

  FeatureMatrix out(frames, config.feature_dim());
  out.frame_spec = spec;
  out.config = config;
  const FeatureMatrix deltas = compute_deltas(cepstra);
  const FeatureMatrix accel =
      config.include_delta_deltas ? compute_deltas(deltas) : FeatureMatrix(frames, nc);
  for (std::size_t t = 0; t < frames; ++t) {
    auto row = out.row(t);
    std::size_t col = 0;
    for (std::size_t d = 0; d < nc; ++d) row[col++] = cepstra(t, d);
    if (config.include_deltas) {
      for (std::size_t d = 0; d < nc; ++d) row[col++] = deltas(t, d);
    }
    if (config.include_delta_deltas) {
      for (std::size_t d = 0; d < nc; ++d) row[col++] = accel(t, d);
    }
  }
  return out;
}

void write_features(std::ostream& out, const FeatureMatrix& features) {
  out << "mfcc " << features.rows() << ' ' << features.cols() << '\n';
  out << std::setprecision(17);
  for (std::size_t t = 0; t < features.rows(); ++t) {
    const auto row = features.row(t);
    for (std::size_t d = 0; d < row.size(); ++d) {
      if (d) out << ' ';
      out << row[d];
    }
    out << '\n';
  }
}

FeatureMatrix read_features(std::istream& in) {
  std::string magic;
  std::size_t rows = 0;
  std::size_t cols = 0;
  if (!(in >> magic >> rows >> cols) || magic != "mfcc") {
    throw Error(ErrorCode::format, "features: expected header 'mfcc T D'");
  }
  std::vector<double> data(rows * cols);
  for (double& v : data) {
    if (!(in >> v)) throw Error(ErrorCode::format, "features: truncated matrix body");
  }
  return FeatureMatrix(rows, cols, std::move(data));
}

void save_features(const FeatureMatrix& features, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
  write_features(out, features);
}

FeatureMatrix load_features(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path.string());
  return read_features(in);
}

}  // namespace vircis::dsp
