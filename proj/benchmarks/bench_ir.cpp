#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "vircis/cis/fusion.hpp"
#include "vircis/ir/index.hpp"
#include "vircis/ir/text.hpp"

namespace {

std::vector<vircis::ir::Document> random_corpus(std::size_t docs, std::size_t vocab, std::size_t length) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> pick(0, vocab - 1);
  std::vector<vircis::ir::Document> out;
  for (std::size_t d = 0; d < docs; ++d) {
    vircis::ir::Document doc{"doc" + std::to_string(d), "", ""};
    for (std::size_t i = 0; i < length; ++i) doc.body += "w" + std::to_string(pick(rng)) + ' ';
    out.push_back(std::move(doc));
  }
  return out;
}

void BM_IndexDocuments(benchmark::State& state) {
  const auto corpus = random_corpus(static_cast<std::size_t>(state.range(0)), 2000, 200);
  for (auto _ : state) benchmark::DoNotOptimize(vircis::ir::index_documents(corpus, vircis::ir::default_stopwords()));
}
BENCHMARK(BM_IndexDocuments)->Arg(100)->Arg(1000);

void BM_Search(benchmark::State& state) {
  const auto index =
      vircis::ir::index_documents(random_corpus(static_cast<std::size_t>(state.range(0)), 2000, 200), vircis::ir::StopWords{});
  for (auto _ : state) benchmark::DoNotOptimize(vircis::ir::search(index, "w1 w17 w400 w1999", 10));
}
BENCHMARK(BM_Search)->Arg(100)->Arg(1000)->Arg(10000);

void BM_MergeResults(benchmark::State& state) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> score(0.0, 10.0);
  std::vector<vircis::cis::ContributedList> lists;
  for (int l = 0; l < state.range(0); ++l) {
    vircis::ir::RankedList list;
    for (int d = 0; d < 50; ++d) list.entries.push_back({"doc" + std::to_string((l * 17 + d * 7) % 200), score(rng)});
    vircis::ir::sort_ranked(list.entries);
    lists.push_back({"c" + std::to_string(l % 4), std::move(list)});
  }
  const vircis::cis::RelevanceFilterConfig filter;
  for (auto _ : state) benchmark::DoNotOptimize(vircis::cis::merge_results(lists, filter));
}
BENCHMARK(BM_MergeResults)->Arg(2)->Arg(8)->Arg(32);

}  // namespace
