#include <benchmark/benchmark.h>

#include <random>

#include "vircis/dsp/fft.hpp"
#include "vircis/dsp/mfcc.hpp"
#include "vircis/dsp/synth.hpp"

namespace {

void BM_ExtractMfcc(benchmark::State& state) {
  const auto clip = vircis::dsp::synthesize_tone(440.0, static_cast<double>(state.range(0)) / 1000.0, 16000, 0.5);
  const vircis::dsp::FrontendConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(vircis::dsp::extract_mfcc(clip, config));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(clip.samples.size()));
}
BENCHMARK(BM_ExtractMfcc)->Arg(250)->Arg(1000)->Arg(5000);

void BM_PowerSpectrum(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> frame(400);
  for (double& x : frame) x = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(vircis::dsp::power_spectrum(frame, 512));
}
BENCHMARK(BM_PowerSpectrum);

}  // namespace
