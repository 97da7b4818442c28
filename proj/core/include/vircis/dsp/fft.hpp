#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace vircis::dsp {

bool is_power_of_two(std::size_t n);

/// In-place forward DFT (unnormalized, sign -i) of any length, via FFTW.
/// Throws Error{parameter} on empty input. Safe to call concurrently.
void fft_in_place(std::span<std::complex<double>> data);

/// |DFT|^2 / fft_size for bins 0..fft_size/2 of a zero-padded frame.
std::vector<double> power_spectrum(std::span<const double> frame, std::size_t fft_size);

}  // namespace vircis::dsp
