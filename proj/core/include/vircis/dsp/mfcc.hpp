#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "vircis/dsp/audio.hpp"

namespace vircis::dsp {

enum class Window { hamming, rectangular };

struct FrameSpec {
  double frame_length_ms = 25.0;
  double hop_ms = 10.0;
  double preemphasis_alpha = 0.97;
  Window window = Window::hamming;

  std::size_t frame_length_samples(int sample_rate) const;
  std::size_t hop_samples(int sample_rate) const;
};

struct MfccConfig {
  std::size_t num_mel_filters = 26;
  std::size_t num_cepstra = 13;
  bool include_energy = false;  // replace c0 by the frame log-energy
  bool include_deltas = true;
  bool include_delta_deltas = true;
  std::size_t fft_size = 512;
  double low_freq_hz = 0.0;
  double high_freq_hz = 8000.0;

  /// Columns of the resulting FeatureMatrix.
  std::size_t feature_dim() const;
};

/// Front-end parameters travel together through recognition.
struct FrontendConfig {
  FrameSpec frames;
  MfccConfig mfcc;
};

/// Filter energies are clamped here before the log.
inline constexpr double kLogEnergyFloor = 1e-10;

void validate(const FrameSpec& spec);
void validate(const MfccConfig& config, int sample_rate);

/// T x D row-major matrix of cepstral observations.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t rows, std::size_t cols);
  FeatureMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  std::span<const double> row(std::size_t t) const { return {data_.data() + t * cols_, cols_}; }
  std::span<double> row(std::size_t t) { return {data_.data() + t * cols_, cols_}; }
  double operator()(std::size_t t, std::size_t d) const { return data_[t * cols_ + d]; }
  double& operator()(std::size_t t, std::size_t d) { return data_[t * cols_ + d]; }
  const std::vector<double>& data() const { return data_; }

  FrameSpec frame_spec;
  MfccConfig config;

  friend bool operator==(const FeatureMatrix& a, const FeatureMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// out[n] = in[n] - alpha * in[n-1], out[0] = in[0]. Requires 0 <= alpha < 1.
AudioClip preemphasize(const AudioClip& clip, double alpha);

double window_weight(Window window, std::size_t n, std::size_t length);

/// Frames start every hop. Every full frame is emitted, then one final
/// zero-padded frame when samples remain past the last full frame's hop
/// (or a single padded frame when the clip is shorter than one frame).
/// The window is applied to each frame.
std::vector<std::vector<double>> frame_signal(const AudioClip& clip, const FrameSpec& spec);

/// Triangular filters on the mel scale mel(f) = 2595 log10(1 + f/700);
/// result is num_mel_filters rows of fft_size/2+1 bin weights.
std::vector<std::vector<double>> mel_filterbank(const MfccConfig& config, int sample_rate);

double hz_to_mel(double hz);
double mel_to_hz(double mel);

/// Orthonormal DCT-II, keeping the first num_out coefficients.
std::vector<double> dct_ii(std::span<const double> input, std::size_t num_out);

/// +-2 frame regression deltas, edges replicated. Result has same shape.
FeatureMatrix compute_deltas(const FeatureMatrix& base);

/// Log mel filterbank energies (after the floor) for every frame.
FeatureMatrix log_filterbank_energies(const AudioClip& clip, const FrameSpec& spec,
                                      const MfccConfig& config);

FeatureMatrix extract_mfcc(const AudioClip& clip, const FrameSpec& spec, const MfccConfig& config);
inline FeatureMatrix extract_mfcc(const AudioClip& clip, const FrontendConfig& cfg) {
  return extract_mfcc(clip, cfg.frames, cfg.mfcc);
}

// Text format: "mfcc T D" then T lines of D values at 17 significant digits.
void write_features(std::ostream& out, const FeatureMatrix& features);
FeatureMatrix read_features(std::istream& in);
void save_features(const FeatureMatrix& features, const std::filesystem::path& path);
FeatureMatrix load_features(const std::filesystem::path& path);

}  // namespace vircis::dsp
