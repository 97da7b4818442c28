#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "vircis/hmm/viterbi.hpp"

namespace {

vircis::hmm::HmmModel left_to_right(std::size_t n, std::size_t dim) {
  vircis::hmm::HmmModel m("bench", n, dim);
  m.entry(1) = 0.0;
  for (std::size_t s = 1; s <= n; ++s) {
    m.trans(s, s) = std::log(0.6);
    if (s < n) {
      m.trans(s, s + 1) = std::log(0.4);
    } else {
      m.exit(s) = std::log(0.4);
    }
    for (std::size_t d = 0; d < dim; ++d) m.state(s).mean[d] = static_cast<double>(s);
  }
  return m;
}

vircis::dsp::FeatureMatrix observations(std::size_t frames, std::size_t dim) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0.0, 2.0);
  vircis::dsp::FeatureMatrix obs(frames, dim);
  for (std::size_t t = 0; t < frames; ++t) {
    for (std::size_t d = 0; d < dim; ++d) obs(t, d) = g(rng);
  }
  return obs;
}

void BM_Viterbi(benchmark::State& state) {
  const auto m = left_to_right(5, 39);
  const auto obs = observations(static_cast<std::size_t>(state.range(0)), 39);
  for (auto _ : state) benchmark::DoNotOptimize(vircis::hmm::viterbi(obs, m));
}
BENCHMARK(BM_Viterbi)->Arg(50)->Arg(200)->Arg(1000);

void BM_SequenceLogprob(benchmark::State& state) {
  const auto m = left_to_right(5, 39);
  const auto obs = observations(static_cast<std::size_t>(state.range(0)), 39);
  for (auto _ : state) benchmark::DoNotOptimize(vircis::hmm::sequence_logprob(obs, m));
}
BENCHMARK(BM_SequenceLogprob)->Arg(50)->Arg(200)->Arg(1000);

}  // namespace
