#include <doctest.h>

#include <filesystem>
#include <random>
#include <set>
#include <sstream>

#include "support/oracles.hpp"
#include "vircis/cis/fusion.hpp"
#include "vircis/cis/script.hpp"
#include "vircis/cis/session.hpp"
#include "vircis/error.hpp"
#include "vircis/ir/corpus.hpp"
#include "vircis/ir/text.hpp"

using namespace vircis;
using namespace vircis::cis;

namespace {

ContributedList list_of(const std::string& who, std::vector<ir::ScoredDoc> entries) {
  return {who, ir::RankedList{std::move(entries), {}}};
}

const ir::InvertedIndex& shipped_index() {
  static const auto index =
      ir::index_documents(ir::load_corpus(std::filesystem::path(VIRCIS_DATA_DIR) / "corpus"), ir::default_stopwords());
  return index;
}

MergedResult merged_of(std::vector<MergedEntry> entries) {
  MergedResult m;
  for (const auto& e : entries) m.provenance[e.doc_id] = {"x"};
  m.entries = std::move(entries);
  return m;
}

}  // namespace

TEST_SUITE("normalize and merge") {
  TEST_CASE("min-max normalization") {
    CHECK(min_max_normalize({{{"a", 10}, {"b", 5}, {"c", 7.5}}, {}}) == std::vector<double>{1.0, 0.0, 0.5});
    CHECK(min_max_normalize({{{"a", 3}}, {}}) == std::vector<double>{1.0});
    CHECK(min_max_normalize({{{"a", 2}, {"b", 2}}, {}}) == std::vector<double>{1.0, 1.0});
    CHECK(min_max_normalize({}).empty());
  }

  TEST_CASE("one list, threshold 0 keeps the zero-scored doc") {
    const std::vector lists{list_of("A", {{"d1", 10}, {"d2", 5}})};
    const auto merged = merge_results(lists, {});
    CHECK(merged.entries == std::vector<MergedEntry>{{"d1", 1.0, 1}, {"d2", 0.0, 1}});
  }

  TEST_CASE("identical lists from two collaborators keep their order at four times the score") {
    const std::vector<ir::ScoredDoc> entries{{"d1", 9}, {"d2", 6}, {"d3", 5}, {"d4", 1}};
    const std::vector lists{list_of("A", entries), list_of("B", entries)};
    const auto merged = merge_results(lists, {});
    const auto norm = min_max_normalize(lists[0].list);
    REQUIRE(merged.entries.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(merged.entries[i].doc_id == entries[i].doc_id);
      CHECK(merged.entries[i].fused_score == doctest::Approx(4.0 * norm[i]));
      CHECK(merged.entries[i].contributor_count == 2);
    }
  }

  TEST_CASE("overlapping doc, hand computed") {
    // A normalizes to d1 1, d2 1/3, d3 0; B to d2 1, d3 0.
    const std::vector lists{list_of("A", {{"d1", 4}, {"d2", 2}, {"d3", 1}}), list_of("B", {{"d2", 6}, {"d3", 3}})};
    const auto merged = merge_results(lists, {});
    REQUIRE(merged.entries.size() == 3);
    CHECK(merged.entries[0].doc_id == "d2");
    CHECK(merged.entries[0].fused_score == doctest::Approx(8.0 / 3.0).epsilon(1e-15));
    CHECK(merged.entries[0].contributor_count == 2);
    CHECK(merged.entries[1] == MergedEntry{"d1", 1.0, 1});
    CHECK(merged.entries[2] == MergedEntry{"d3", 0.0, 2});
    CHECK(merged.provenance.at("d2") == std::set<std::string>{"A", "B"});
  }

  TEST_CASE("disjoint lists merge to their union") {
    const std::vector lists{list_of("A", {{"a1", 3}, {"a2", 1}}), list_of("B", {{"b1", 5}})};
    const auto merged = merge_results(lists, {});
    std::set<std::string> docs;
    for (const auto& e : merged.entries) docs.insert(e.doc_id);
    CHECK(docs == std::set<std::string>{"a1", "a2", "b1"});
  }

  TEST_CASE("irrelevant judgment from the only contributor removes the doc") {
    const std::vector lists{list_of("A", {{"d1", 10}, {"d2", 5}})};
    RelevanceFilterConfig filter;
    filter.judgments[{"A", "d1"}] = Relevance::irrelevant;
    const auto merged = merge_results(lists, filter);
    REQUIRE(merged.entries.size() == 1);
    CHECK(merged.entries[0].doc_id == "d2");
  }

  TEST_CASE("threshold is strict and range checked") {
    const std::vector lists{list_of("A", {{"d1", 10}, {"d2", 5}, {"d3", 7.5}})};
    RelevanceFilterConfig filter;
    filter.threshold = 0.5;
    const auto merged = merge_results(lists, filter);
    REQUIRE(merged.entries.size() == 2);
    CHECK(merged.entries[1].doc_id == "d3");
    filter.threshold = 1.0;
    CHECK(merge_results(lists, filter).entries.size() == 1);
    for (double bad : {-0.1, 1.5}) {
      filter.threshold = bad;
      try {
        merge_results(lists, filter);
        FAIL("expected throw");
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::configuration);
      }
    }
  }

  TEST_CASE("empty inputs merge to an empty result") {
    CHECK(merge_results(std::vector<ContributedList>{}, {}).empty());
    CHECK(merge_results(std::vector{list_of("A", {})}, {}).empty());
  }

  TEST_CASE("single-list fusion preserves the ranking") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> score(0.1, 10.0);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<ir::ScoredDoc> entries;
      for (int i = 0; i < 12; ++i) entries.push_back({"d" + std::to_string(i), score(rng)});
      ir::sort_ranked(entries);
      const auto merged = merge_results(std::vector{list_of("A", entries)}, {});
      REQUIRE(merged.entries.size() == entries.size());
      for (std::size_t i = 0; i < entries.size(); ++i) CHECK(merged.entries[i].doc_id == entries[i].doc_id);
    }
  }

  TEST_CASE("random instances agree with the brute-force fusion") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 100; ++trial) {
      std::uniform_int_distribution<int> list_count(1, 5);
      std::uniform_int_distribution<int> doc_count(0, 20);
      std::uniform_int_distribution<int> doc_pick(0, 24);
      std::uniform_int_distribution<int> collab_pick(0, 2);
      std::uniform_int_distribution<int> coarse(1, 6);  // coarse scores create ties
      std::vector<ContributedList> lists;
      const int nl = list_count(rng);
      for (int l = 0; l < nl; ++l) {
        std::map<std::string, double> docs;
        const int nd = doc_count(rng);
        for (int d = 0; d < nd; ++d) docs["doc" + std::to_string(doc_pick(rng))] = coarse(rng) * 0.75;
        std::vector<ir::ScoredDoc> entries;
        for (const auto& [id, s] : docs) entries.push_back({id, s});
        ir::sort_ranked(entries);
        lists.push_back(list_of(std::string(1, static_cast<char>('A' + collab_pick(rng))), entries));
      }
      RelevanceFilterConfig filter;
      filter.threshold = trial % 3 == 0 ? 0.0 : 0.25 * (trial % 4);
      std::bernoulli_distribution judge(0.1);
      for (const auto& l : lists) {
        for (const auto& e : l.list.entries) {
          if (judge(rng)) filter.judgments[{l.collaborator_id, e.doc_id}] = Relevance::irrelevant;
        }
      }
      const auto merged = merge_results(lists, filter);
      CHECK(merged.entries == testing::brute_force_combmnz(lists, filter));
      for (const auto& e : merged.entries) {
        std::set<std::string> recount;
        for (const auto& l : lists) {
          for (const auto& s : l.list.entries) {
            if (s.doc_id == e.doc_id && !(filter.judgments.count({l.collaborator_id, s.doc_id}))) recount.insert(l.collaborator_id);
          }
        }
        CHECK(e.contributor_count == recount.size());
        CHECK(merged.provenance.at(e.doc_id) == recount);
      }
    }
  }
}

TEST_SUITE("rerank and split") {
  TEST_CASE("no judgments is the identity") {
    const auto m = merged_of({{"a", 0.6, 1}, {"b", 0.4, 1}});
    CHECK(rerank_with_judgments(m, {}, 2.0) == m);
  }

  TEST_CASE("boost lifts the second doc above the first") {
    const auto m = merged_of({{"a", 0.6, 1}, {"b", 0.4, 1}});
    const auto r = rerank_with_judgments(m, {{{"A", "b"}, Relevance::relevant}}, 2.0);
    CHECK(r.entries[0].doc_id == "b");
    CHECK(r.entries[0].fused_score == doctest::Approx(0.8));
  }

  TEST_CASE("relevant wins over irrelevant; irrelevant alone removes") {
    const auto m = merged_of({{"a", 0.6, 2}, {"b", 0.4, 1}, {"c", 0.2, 1}});
    const Judgments j{{{"A", "a"}, Relevance::relevant}, {{"B", "a"}, Relevance::irrelevant}, {{"B", "c"}, Relevance::irrelevant}};
    const auto r = rerank_with_judgments(m, j, 2.0);
    REQUIRE(r.entries.size() == 2);
    CHECK(r.entries[0] == MergedEntry{"a", 1.2, 2});
    CHECK(r.provenance.count("c") == 0);
  }

  TEST_CASE("boost must be positive") {
    CHECK_THROWS_AS(rerank_with_judgments(merged_of({}), {}, 0.0), Error);
  }

  TEST_CASE("split examples") {
    const auto five = merged_of({{"d1", 5, 1}, {"d2", 4, 1}, {"d3", 3, 1}, {"d4", 2, 1}, {"d5", 1, 1}});
    const auto two = split_results(five, {"B", "A"});
    CHECK(two.assignment.at("A") == std::vector<std::string>{"d1", "d3", "d5"});
    CHECK(two.assignment.at("B") == std::vector<std::string>{"d2", "d4"});
    CHECK(split_results(five, {"solo"}).assignment.at("solo").size() == 5);
    const auto three = split_results(merged_of({{"x", 3, 1}, {"y", 2, 1}, {"z", 1, 1}}), {"c1", "c2", "c3"});
    CHECK(three.assignment.at("c1") == std::vector<std::string>{"x"});
    CHECK(three.assignment.at("c3") == std::vector<std::string>{"z"});
    CHECK_THROWS_AS(split_results(five, {}), Error);
  }

  TEST_CASE("split is disjoint and exhaustive over the grid") {
    for (std::size_t collaborators = 1; collaborators <= 7; ++collaborators) {
      for (std::size_t docs = 0; docs <= 25; ++docs) {
        std::vector<MergedEntry> entries;
        for (std::size_t d = 0; d < docs; ++d) entries.push_back({"d" + std::to_string(d), static_cast<double>(docs - d), 1});
        std::set<std::string> who;
        for (std::size_t c = 0; c < collaborators; ++c) who.insert("c" + std::to_string(c));
        const auto split = split_results(merged_of(entries), who);
        std::multiset<std::string> seen;
        for (const auto& [c, list] : split.assignment) seen.insert(list.begin(), list.end());
        CHECK(seen.size() == docs);
        CHECK(std::set<std::string>(seen.begin(), seen.end()).size() == docs);
      }
    }
  }
}

TEST_SUITE("session") {
  TEST_CASE("membership") {
    Session s("s1");
    CHECK(s.join("A"));
    CHECK_FALSE(s.join("A"));
    CHECK(s.collaborators() == std::set<std::string>{"A"});
    s.join("B");
    CHECK(s.collaborators() == std::set<std::string>{"A", "B"});
    try {
      s.submit_query("C", "hmm", shipped_index());
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::membership);
    }
    CHECK_THROWS_AS(s.join(""), Error);
  }

  TEST_CASE("first query merges to that list with single contributors") {
    Session s("s1");
    s.join("A");
    const auto& list = s.submit_query("A", "viterbi hmm", shipped_index());
    REQUIRE(s.merged().entries.size() == list.entries.size());
    CHECK(list == ir::search(shipped_index(), "viterbi hmm", 10));
    for (std::size_t i = 0; i < list.entries.size(); ++i) {
      CHECK(s.merged().entries[i].doc_id == list.entries[i].doc_id);
      CHECK(s.merged().entries[i].contributor_count == 1);
    }
  }

  TEST_CASE("judgments must reference retrieved docs") {
    Session s("s1");
    s.join("A");
    s.submit_query("A", "viterbi", shipped_index());
    try {
      s.judge("A", "never_seen.txt", Relevance::relevant);
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::invalid_judgment);
    }
    CHECK_NOTHROW(s.judge("A", "viterbi_decoding.txt", Relevance::irrelevant));
    bool present = false;
    for (const auto& e : s.merged().entries) present = present || e.doc_id == "viterbi_decoding.txt";
    CHECK_FALSE(present);
  }

  TEST_CASE("query suggestions") {
    Session s("s1");
    for (const char* c : {"A", "B", "C"}) s.join(c);
    s.submit_query("A", "hmm viterbi", shipped_index());
    CHECK(s.suggest_queries("B") == std::vector<std::string>{"hmm viterbi"});
    s.submit_query("B", "hmm viterbi", shipped_index());
    CHECK(s.suggest_queries("B").empty());
    s.submit_query("C", "data store", shipped_index());
    s.submit_query("A", "mfcc", shipped_index());
    CHECK(s.suggest_queries("B") == std::vector<std::string>{"mfcc", "data store"});
    CHECK(s.suggest_queries("A") == std::vector<std::string>{"data store"});
    CHECK_THROWS_AS(s.suggest_queries("Z"), Error);
  }
}

TEST_SUITE("script replay") {
  TEST_CASE("parse errors carry the line") {
    std::istringstream bad("JOIN a\nFROB b\n");
    CHECK_THROWS_AS(parse_script(bad), Error);
    std::istringstream judge("JUDGE a doc maybe\n");
    CHECK_THROWS_AS(parse_script(judge), Error);
  }

  TEST_CASE("shipped fixture replays to the hand-computed result") {
    const auto events = load_script(std::filesystem::path(VIRCIS_DATA_DIR) / "session_demo.script");
    const auto report = replay(events, shipped_index());
    CHECK(report.passed());
    CHECK(report.expectations == 4);
    const std::vector<MergedEntry> expected{{"mfcc_features.txt", 2.0, 1},
                                            {"data_store.txt", 1.0, 1},
                                            {"hmm_basics.txt", 1.0, 1},
                                            {"collaborative_search.txt", 0.0, 1}};
    CHECK(report.merged.entries == expected);
    CHECK(replay(events, shipped_index()).merged == report.merged);
  }

  TEST_CASE("intermediate fusion states of the fixture") {
    Session s("fixture");
    s.join("alice");
    s.join("bob");
    const auto& first = s.submit_query("alice", "viterbi hmm", shipped_index());
    REQUIRE(first.entries.size() == 3);
    CHECK(first.entries[0] == ir::ScoredDoc{"hmm_basics.txt", 2.0 * std::log(5.0)});
    CHECK(first.entries[1] == ir::ScoredDoc{"viterbi_decoding.txt", 2.0 * std::log(5.0)});
    CHECK(first.entries[2] == ir::ScoredDoc{"asr_overview.txt", std::log(5.0)});
    s.submit_query("bob", "mfcc viterbi", shipped_index());
    const std::vector<MergedEntry> after_bob{{"asr_overview.txt", 2.0, 2},
                                             {"viterbi_decoding.txt", 2.0, 2},
                                             {"hmm_basics.txt", 1.0, 1},
                                             {"mfcc_features.txt", 1.0, 1}};
    CHECK(s.merged().entries == after_bob);
  }

  TEST_CASE("failing expectation is reported, not thrown") {
    std::istringstream in("JOIN a\nQUERY a viterbi\nEXPECT_TOP data_store.txt\n");
    const auto report = replay(parse_script(in), shipped_index());
    CHECK_FALSE(report.passed());
    CHECK(report.failures.size() == 1);
  }

  TEST_CASE("QUERY_WAV goes through the transcriber") {
    std::istringstream in("JOIN a\nQUERY_WAV a clip.wav\nEXPECT_TOP mfcc_features.txt\n");
    std::filesystem::path seen;
    const auto report = replay(parse_script(in), shipped_index(), {},
                               [&](const std::filesystem::path& p) {
                                 seen = p;
                                 return std::string("mfcc");
                               },
                               "/base");
    CHECK(seen == std::filesystem::path("/base/clip.wav"));
    CHECK(report.transcripts == std::vector<std::string>{"mfcc"});
    CHECK(report.passed());
  }
}
