#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "support/oracles.hpp"
#include "vircis/error.hpp"
#include "vircis/ir/corpus.hpp"
#include "vircis/ir/index.hpp"
#include "vircis/ir/text.hpp"

using namespace vircis;
using namespace vircis::ir;

namespace {

std::vector<std::string> words(std::initializer_list<const char*> list) { return {list.begin(), list.end()}; }

// Three-document fixture used by several cases below.
std::vector<Document> fixture() {
  return {
      {"d1", "Viterbi", "viterbi decoding finds the best path"},
      {"d2", "", "mfcc features feed the hmm"},
      {"d3", "", "the hmm scores each word"},
  };
}

InvertedIndex fixture_index() { return index_documents(fixture(), StopWords{"the", "each"}); }

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("vircis_test_ir_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("tokenize") {
  TEST_CASE("stop words are removed after lowercasing") {
    CHECK(tokenize_filter("The Data Store", StopWords{"the"}) == words({"data", "store"}));
  }

  TEST_CASE("empty text") { CHECK(tokenize_filter("", StopWords{}).empty()); }

  TEST_CASE("split on every non-alphanumeric") {
    CHECK(tokenize_filter("HMM-based search, 2024!", StopWords{}) == words({"hmm", "based", "search", "2024"}));
    CHECK(tokenize_filter("  a\tb\nc__d ", StopWords{}) == words({"a", "b", "c", "d"}));
  }

  TEST_CASE("default list covers common English function words") {
    const auto& stop = default_stopwords();
    for (const char* w : {"the", "and", "of", "is", "a", "in"}) CHECK(stop.count(w) == 1);
    CHECK(stop.count("viterbi") == 0);
  }

  TEST_CASE("stop word file parsing") {
    std::istringstream in("# header\nThe\n\n  And \nof\n");
    CHECK(parse_stopwords(in) == StopWords{"the", "and", "of"});
  }
}

TEST_SUITE("index") {
  TEST_CASE("term frequencies of a single document") {
    const auto index = index_documents({{"d1", "", "a b a"}}, StopWords{});
    REQUIRE(index.postings().size() == 2);
    CHECK(*index.find("a") == std::vector<Posting>{{"d1", 2}});
    CHECK(*index.find("b") == std::vector<Posting>{{"d1", 1}});
    CHECK(index.doc_lengths().at("d1") == 3);
  }

  TEST_CASE("a stop-word-only document counts but has no postings") {
    const auto index = index_documents({{"d1", "", "the of and"}, {"d2", "", "retrieval"}}, default_stopwords());
    CHECK(index.doc_count() == 2);
    CHECK(index.doc_lengths().at("d1") == 0);
    CHECK(index.postings().size() == 1);
  }

  TEST_CASE("postings match a dictionary-of-counts recount") {
    const auto docs = fixture();
    const StopWords stop{"the", "each"};
    const auto index = index_documents(docs, stop);
    std::map<std::string, std::map<std::string, std::size_t>> counts;
    for (const auto& d : docs) {
      std::string text = d.title + " " + d.body;
      std::string token;
      for (char c : text + " ") {
        if (std::isalnum(static_cast<unsigned char>(c))) {
          token += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        } else if (!token.empty()) {
          if (stop.count(token) == 0) ++counts[token][d.doc_id];
          token.clear();
        }
      }
    }
    REQUIRE(index.postings().size() == counts.size());
    for (const auto& [term, per_doc] : counts) {
      const auto* list = index.find(term);
      REQUIRE(list != nullptr);
      std::vector<Posting> expected;
      for (const auto& [doc, tf] : per_doc) expected.push_back({doc, tf});
      CHECK(*list == expected);
    }
    for (const auto& [term, list] : index.postings()) CHECK(stop.count(term) == 0);
  }

  TEST_CASE("bad documents") {
    auto expect_indexing = [](const std::vector<Document>& docs) {
      try {
        index_documents(docs, StopWords{});
        FAIL("expected throw");
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::indexing);
      }
    };
    expect_indexing({{"d1", "", "x"}, {"d1", "", "y"}});
    expect_indexing({{"", "", "x"}});
    expect_indexing({{"d1", "", ""}});
    expect_indexing({{"d\t1", "", "x"}});
  }
}

TEST_SUITE("search") {
  TEST_CASE("term unique to one of three documents, tf 2") {
    const auto index = fixture_index();
    const auto result = search(index, "viterbi", 10);
    REQUIRE(result.entries.size() == 1);
    CHECK(result.entries[0].doc_id == "d1");  // title + body: tf = 2
    CHECK(result.entries[0].score == 2.0 * std::log(4.0));
    CHECK(result.entries[0].score == doctest::Approx(2.7726).epsilon(1e-4));
  }

  TEST_CASE("stop-word-only query is empty, not an error") {
    const auto result = search(fixture_index(), "the each", 10);
    CHECK(result.entries.empty());
    CHECK(result.query_terms.empty());
  }

  TEST_CASE("equal scores are ordered by doc_id") {
    const auto result = search(fixture_index(), "hmm", 10);
    REQUIRE(result.entries.size() == 2);
    CHECK(result.entries[0].doc_id == "d2");
    CHECK(result.entries[1].doc_id == "d3");
    CHECK(result.entries[0].score == result.entries[1].score);
  }

  TEST_CASE("top_k truncates after the full sort") {
    const auto all = search(fixture_index(), "hmm viterbi mfcc", 0);
    const auto two = search(fixture_index(), "hmm viterbi mfcc", 2);
    REQUIRE(all.entries.size() == 3);
    CHECK(two.entries == std::vector<ScoredDoc>(all.entries.begin(), all.entries.begin() + 2));
  }

  TEST_CASE("query terms are distinct and filtered") {
    const auto result = search(fixture_index(), "HMM the hmm, Viterbi", 10);
    CHECK(result.query_terms == words({"hmm", "viterbi"}));
  }

  TEST_CASE("random corpora agree with the full-scan scorer") {
    std::mt19937_64 rng(2718);
    for (int trial = 0; trial < 50; ++trial) {
      std::uniform_int_distribution<int> doc_count(1, 10);
      std::uniform_int_distribution<int> vocab_size(1, 30);
      const int vocab = vocab_size(rng);
      std::uniform_int_distribution<int> pick(0, vocab - 1);
      std::uniform_int_distribution<int> length(1, 25);
      std::vector<Document> docs;
      std::map<std::string, std::vector<std::string>> tokens;
      const int n = doc_count(rng);
      for (int d = 0; d < n; ++d) {
        Document doc{"doc" + std::to_string(d), "", ""};
        const int len = length(rng);
        for (int i = 0; i < len; ++i) doc.body += "w" + std::to_string(pick(rng)) + " ";
        tokens[doc.doc_id] = tokenize_filter(" " + doc.body, StopWords{});
        docs.push_back(doc);
      }
      const auto index = index_documents(docs, StopWords{});
      std::string query;
      std::vector<std::string> terms;
      for (int q = 0; q < 3; ++q) {
        const std::string w = "w" + std::to_string(pick(rng));
        query += w + " ";
        if (std::find(terms.begin(), terms.end(), w) == terms.end()) terms.push_back(w);
      }
      const auto expected = testing::naive_search(tokens, terms);
      const auto actual = search(index, query, 0);
      CHECK(actual.entries == expected);
      for (const auto& e : actual.entries) {
        const auto& toks = tokens.at(e.doc_id);
        bool hit = false;
        for (const auto& t : terms) hit = hit || std::find(toks.begin(), toks.end(), t) != toks.end();
        CHECK(hit);
      }
    }
  }

  TEST_CASE("a non-matching document leaves the ranking of the others alone") {
    auto docs = fixture();
    const auto before = search(index_documents(docs, StopWords{"the", "each"}), "hmm mfcc word", 0);
    docs.push_back({"d4", "", "collaborative search session"});
    const auto after = search(index_documents(docs, StopWords{"the", "each"}), "hmm mfcc word", 0);
    REQUIRE(before.entries.size() == after.entries.size());
    for (std::size_t i = 0; i < before.entries.size(); ++i) CHECK(before.entries[i].doc_id == after.entries[i].doc_id);
  }
}

TEST_SUITE("serialization and corpus") {
  TEST_CASE("index text round trip") {
    auto docs = fixture();
    docs[1].title = "Spaced title, with punctuation";
    docs.push_back({"path/with space.txt", "", "odd id still works"});
    const auto index = index_documents(docs, default_stopwords());
    std::stringstream buf;
    write_index(buf, index);
    const auto back = read_index(buf);
    CHECK(back == index);
    for (const char* q : {"hmm", "odd works", "viterbi path"}) CHECK(search(back, q, 0) == search(index, q, 0));
  }

  TEST_CASE("corrupt index text") {
    std::stringstream bad("vircis-index 1\ndocs 2\nd1\t3\t\n");
    CHECK_THROWS_AS(read_index(bad), Error);
    std::stringstream wrong("something else\n");
    CHECK_THROWS_AS(read_index(wrong), Error);
  }

  TEST_CASE("directory and manifest corpora") {
    const auto dir = scratch("corpus");
    std::filesystem::create_directories(dir / "docs" / "sub");
    std::ofstream(dir / "docs" / "a.txt") << "alpha beta";
    std::ofstream(dir / "docs" / "sub" / "b.txt") << "beta gamma";
    const auto from_dir = load_corpus(dir / "docs");
    REQUIRE(from_dir.size() == 2);
    CHECK(from_dir[0].doc_id == "a.txt");
    CHECK(from_dir[1].doc_id == "sub/b.txt");
    CHECK(from_dir[1].body == "beta gamma");

    std::ofstream(dir / "corpus.tsv") << "first\tFirst Doc\tdocs/a.txt\nsecond\t\tdocs/sub/b.txt\n";
    const auto from_manifest = load_corpus(dir / "corpus.tsv");
    REQUIRE(from_manifest.size() == 2);
    CHECK(from_manifest[0].title == "First Doc");
    CHECK(from_manifest[1].body == "beta gamma");
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("shipped corpus indexes") {
    const auto docs = load_corpus(std::filesystem::path(VIRCIS_DATA_DIR) / "corpus");
    CHECK(docs.size() == 8);
    const auto index = index_documents(docs, default_stopwords());
    CHECK(!search(index, "viterbi", 10).empty());
  }
}
