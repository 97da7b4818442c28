#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "support/synthetic.hpp"
#include "vircis/error.hpp"
#include "vircis/recognizer/recognizer.hpp"

using namespace vircis;
using namespace vircis::recognizer;

namespace {

const testing::SyntheticSet& two_tone_set() {
  static const auto set =
      testing::build_synthetic({{"low", {300, 300}}, {"high", {2000, 2000}}}, 10, 10, 1234);
  return set;
}

const testing::SyntheticSet& four_word_set() {
  static const auto set = testing::build_synthetic(testing::four_tone_words(), 10, 5, 77);
  return set;
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("vircis_test_rec_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("vocabulary") {
  TEST_CASE("rejects duplicates, blank labels and mixed dimensions") {
    Vocabulary v;
    hmm::HmmModel a("a", 1, 2);
    a.entry(1) = 0.0;
    a.exit(1) = 0.0;
    v.add(a);
    CHECK_THROWS_AS(v.add(a), Error);
    auto blank = a;
    blank.set_label("");
    CHECK_THROWS_AS(v.add(blank), Error);
    hmm::HmmModel b("b", 1, 3);
    b.entry(1) = 0.0;
    b.exit(1) = 0.0;
    CHECK_THROWS_AS(v.add(b), Error);
    CHECK(v.size() == 1);
  }

  TEST_CASE("save and load round-trip") {
    const auto dir = scratch("vocab");
    save_vocabulary(four_word_set().vocab, dir);
    const auto back = load_vocabulary(dir);
    CHECK(back.labels() == four_word_set().vocab.labels());
    for (const auto& label : back.labels()) CHECK(back.at(label) == four_word_set().vocab.at(label));
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("loading an empty directory yields an empty vocabulary") {
    const auto dir = scratch("empty");
    CHECK(load_vocabulary(dir).empty());
    std::filesystem::remove_all(dir);
  }
}

TEST_SUITE("recognize") {
  TEST_CASE("single-word vocabulary always wins") {
    Vocabulary v;
    v.add(four_word_set().vocab.at("mfcc"));
    for (const auto& clip : four_word_set().test) CHECK(recognize(clip, v).label == "mfcc");
  }

  TEST_CASE("300 Hz vs 2 kHz words, 10 training clips each") {
    const auto& set = two_tone_set();
    std::size_t correct = 0;
    for (const auto& clip : set.test) correct += recognize(clip, set.vocab).label == clip.label ? 1 : 0;
    CHECK(static_cast<double>(correct) / static_cast<double>(set.test.size()) >= 0.95);
  }

  TEST_CASE("training clips are recognized as themselves") {
    const auto& set = four_word_set();
    for (const auto& clip : set.train) CHECK(recognize(clip, set.vocab).label == clip.label);
  }

  TEST_CASE("halving the gain keeps the label") {
    const auto& set = four_word_set();
    for (const auto& clip : set.test) {
      auto quiet = clip;
      for (double& s : quiet.samples) s *= 0.5;
      CHECK(recognize(quiet, set.vocab).label == recognize(clip, set.vocab).label);
    }
  }

  TEST_CASE("ranked list covers the vocabulary, best first") {
    const auto& set = four_word_set();
    const auto outcome = recognize(set.test.front(), set.vocab);
    REQUIRE(outcome.ranked.size() == 4);
    CHECK(outcome.ranked.front().first == outcome.label);
    CHECK(outcome.ranked.front().second == outcome.log_prob);
    for (std::size_t i = 1; i < outcome.ranked.size(); ++i) CHECK(outcome.ranked[i - 1].second >= outcome.ranked[i].second);
    CHECK(recognize(set.test.front(), set.vocab).ranked == outcome.ranked);
  }

  TEST_CASE("equal scores are ordered by label") {
    Vocabulary v;
    auto m = four_word_set().vocab.at("hmm");
    m.set_label("zeta");
    v.add(m);
    m.set_label("alpha");
    v.add(m);
    const auto outcome = recognize(four_word_set().test.front(), v);
    CHECK(outcome.label == "alpha");
    CHECK(outcome.ranked[1].first == "zeta");
  }

  TEST_CASE("empty vocabulary") {
    try {
      recognize(four_word_set().test.front(), Vocabulary{});
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::configuration);
    }
  }
}

TEST_SUITE("evaluate") {
  TEST_CASE("13 of 16 is 81.25") {
    std::vector<std::pair<std::string, std::string>> outcomes;
    for (int i = 0; i < 13; ++i) outcomes.emplace_back("a", "a");
    for (int i = 0; i < 3; ++i) outcomes.emplace_back("a", "b");
    const auto report = tally(outcomes);
    CHECK(report.total == 16);
    CHECK(report.correct == 13);
    CHECK(report.accuracy_percent == 81.25);
    std::ostringstream json;
    render_json(json, report);
    CHECK(json.str() == "{\"total\": 16, \"correct\": 13, \"accuracy_percent\": 81.25}\n");
    std::ostringstream table;
    render_table(table, report);
    CHECK(table.str().find("81.25") != std::string::npos);
    CHECK(report.confusion.at({"a", "b"}) == 3);
  }

  TEST_CASE("all correct and none correct") {
    CHECK(tally({{"x", "x"}, {"y", "y"}}).accuracy_percent == 100.0);
    CHECK(tally({{"x", "y"}, {"y", "x"}}).accuracy_percent == 0.0);
    std::ostringstream table;
    render_table(table, tally({{"x", "x"}}));
    CHECK(table.str().find("100.00") != std::string::npos);
  }

  TEST_CASE("evaluate agrees with an independent recount") {
    const auto& set = four_word_set();
    const auto report = evaluate(set.test, set.vocab);
    std::size_t correct = 0;
    for (const auto& clip : set.test) {
      if (recognize(clip, set.vocab).label == clip.label) ++correct;
    }
    CHECK(report.total == set.test.size());
    CHECK(report.correct == correct);
    CHECK(report.accuracy_percent == 100.0 * static_cast<double>(correct) / static_cast<double>(set.test.size()));
    std::size_t confusion_total = 0;
    for (const auto& [key, count] : report.confusion) confusion_total += count;
    CHECK(confusion_total == report.total);
  }

  TEST_CASE("empty test set") {
    CHECK_THROWS_AS(evaluate({}, four_word_set().vocab), Error);
  }
}

TEST_SUITE("manifest") {
  TEST_CASE("relative paths resolve against the manifest directory") {
    const auto dir = scratch("manifest");
    std::filesystem::create_directories(dir / "clips");
    const auto& clip = four_word_set().test.front();
    dsp::save_wav(clip, dir / "clips" / "one.wav");
    {
      std::ofstream out(dir / "m.tsv");
      out << "# comment\n" << clip.label << "\tclips/one.wav\n";
    }
    const auto entries = read_manifest(dir / "m.tsv");
    REQUIRE(entries.size() == 1);
    CHECK(entries[0].path == dir / "clips" / "one.wav");
    const auto clips = load_labelled_clips(entries);
    CHECK(clips[0].label == clip.label);
    CHECK(clips[0].samples == clip.samples);

    write_manifest(dir / "copy.tsv", entries);
    const auto again = read_manifest(dir / "copy.tsv");
    CHECK(again[0].path == entries[0].path);
    CHECK(again[0].label == entries[0].label);

    {
      std::ofstream out(dir / "bad.tsv");
      out << "no-tab-here\n";
    }
    CHECK_THROWS_AS(read_manifest(dir / "bad.tsv"), Error);
    std::filesystem::remove_all(dir);
  }
}
