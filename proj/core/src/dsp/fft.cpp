#include "vircis/dsp/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

#include "vircis/error.hpp"

namespace vircis::dsp {
namespace {

enum class PlanKind { complex_in_place, real_to_complex };

// FFTW planning is not thread-safe but executing a finished plan on new
// arrays is, so plans are built once per (kind, size) under a lock and kept
// for the life of the process.
class PlanCache {
 public:
  fftw_plan get(PlanKind kind, std::size_t n) {
    std::lock_guard lock(mutex_);
    auto& plan = plans_[{kind, n}];
    if (plan == nullptr) plan = make(kind, static_cast<int>(n));
    return plan;
  }

 private:
  static fftw_plan make(PlanKind kind, int n) {
    constexpr unsigned kFlags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    if (kind == PlanKind::complex_in_place) {
      auto* buf = fftw_alloc_complex(static_cast<std::size_t>(n));
      fftw_plan p = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, kFlags);
      fftw_free(buf);
      return p;
    }
    auto* in = fftw_alloc_real(static_cast<std::size_t>(n));
    auto* out = fftw_alloc_complex(static_cast<std::size_t>(n / 2 + 1));
    fftw_plan p = fftw_plan_dft_r2c_1d(n, in, out, kFlags);
    fftw_free(in);
    fftw_free(out);
    return p;
  }

  std::mutex mutex_;
  std::map<std::pair<PlanKind, std::size_t>, fftw_plan> plans_;
};

PlanCache& plans() {
  static PlanCache cache;
  return cache;
}

}  // namespace

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void fft_in_place(std::span<std::complex<double>> data) {
  if (data.empty()) throw Error(ErrorCode::parameter, "fft: empty input");
  // std::complex<double> is layout-compatible with fftw_complex.
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plans().get(PlanKind::complex_in_place, data.size()), buf, buf);
}

std::vector<double> power_spectrum(std::span<const double> frame, std::size_t fft_size) {
  if (fft_size == 0 || frame.size() > fft_size) {
    throw Error(ErrorCode::parameter, "power_spectrum: frame longer than fft_size");
  }
  std::vector<double> in(fft_size, 0.0);
  std::copy(frame.begin(), frame.end(), in.begin());
  std::vector<std::complex<double>> out(fft_size / 2 + 1);
  fftw_execute_dft_r2c(plans().get(PlanKind::real_to_complex, fft_size), in.data(),
                       reinterpret_cast<fftw_complex*>(out.data()));
  std::vector<double> power(out.size());
  const double scale = 1.0 / static_cast<double>(fft_size);
  for (std::size_t k = 0; k < power.size(); ++k) power[k] = std::norm(out[k]) * scale;
  return power;
}

}  // namespace vircis::dsp
