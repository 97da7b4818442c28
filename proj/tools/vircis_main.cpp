// vircis: command-line driver for the voice-query collaborative search pipeline.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "vircis/cis/script.hpp"
#include "vircis/dsp/audio.hpp"
#include "vircis/dsp/mfcc.hpp"
#include "vircis/dsp/segment.hpp"
#include "vircis/dsp/synth.hpp"
#include "vircis/error.hpp"
#include "vircis/hmm/train.hpp"
#include "vircis/ir/corpus.hpp"
#include "vircis/ir/index.hpp"
#include "vircis/recognizer/recognizer.hpp"
#include "vircis/service/http.hpp"
#include "vircis/service/service.hpp"

namespace fs = std::filesystem;
using namespace vircis;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitInput = 2;

ir::StopWords stopwords_from(const std::string& path) {
  if (path.empty()) return ir::default_stopwords();
  return ir::load_stopwords(path);
}

// --corpus may name a directory, a manifest, or a serialized index.
ir::InvertedIndex load_or_build_index(const std::string& corpus, const std::string& index_file,
                                      const std::string& stopwords) {
  if (!index_file.empty()) return ir::load_index(index_file);
  if (corpus.empty()) throw Error(ErrorCode::configuration, "need --corpus or --index");
  return ir::index_documents(ir::load_corpus(corpus), stopwords_from(stopwords));
}

void print_ranked(std::ostream& out, const ir::RankedList& list) {
  out << std::setprecision(17);
  for (std::size_t i = 0; i < list.entries.size(); ++i) {
    out << i + 1 << '\t' << list.entries[i].doc_id << '\t' << list.entries[i].score << '\n';
  }
}

void print_merged(std::ostream& out, const cis::MergedResult& merged) {
  out << std::setprecision(17);
  for (std::size_t i = 0; i < merged.entries.size(); ++i) {
    const auto& e = merged.entries[i];
    out << i + 1 << '\t' << e.doc_id << '\t' << e.fused_score << '\t' << e.contributor_count << '\n';
  }
}

struct SynthArgs {
  std::string vocab;
  std::string out;
  std::size_t count = 10;
  std::uint64_t seed = 42;
  int rate = 16000;
  std::string manifest_name = "manifest.tsv";
};

int run_synth(const SynthArgs& a) {
  const auto words = dsp::load_tone_vocabulary(a.vocab);
  fs::create_directories(a.out);
  std::mt19937_64 rng(a.seed);
  dsp::SynthOptions options;
  options.sample_rate = a.rate;
  std::vector<recognizer::ManifestEntry> manifest;
  for (const auto& word : words) {
    for (std::size_t i = 0; i < a.count; ++i) {
      const auto clip = dsp::synthesize_word(word, options, rng);
      const fs::path file = fs::path(a.out) / (word.label + "_" + std::to_string(i) + ".wav");
      dsp::save_wav(clip, file);
      manifest.push_back({word.label, file});
    }
  }
  const fs::path manifest_path = fs::path(a.out) / a.manifest_name;
  recognizer::write_manifest(manifest_path, manifest);
  std::cout << "wrote " << manifest.size() << " clips and " << manifest_path.string() << '\n';
  return kExitOk;
}

int run_extract(const std::string& input, const std::string& output) {
  const auto features = dsp::extract_mfcc(dsp::load_wav(input), dsp::FrontendConfig{});
  if (output.empty() || output == "-") {
    dsp::write_features(std::cout, features);
  } else {
    dsp::save_features(features, output);
  }
  return kExitOk;
}

int run_train(const std::string& manifest, const std::string& out, const hmm::TrainingConfig& config) {
  const auto entries = recognizer::read_manifest(manifest);
  if (entries.empty()) throw Error(ErrorCode::training_data, "manifest " + manifest + " lists no clips");
  std::map<std::string, std::vector<dsp::FeatureMatrix>> by_label;
  for (const auto& clip : recognizer::load_labelled_clips(entries)) {
    by_label[clip.label].push_back(dsp::extract_mfcc(clip, dsp::FrontendConfig{}));
  }
  fs::create_directories(out);
  for (const auto& [label, sequences] : by_label) {
    const auto trained = hmm::train_model_traced(sequences, label, config);
    hmm::save_model(trained.model, fs::path(out) / (label + ".hmm"));
    std::cout << label << '\t' << sequences.size() << " clips\tlog-likelihood " << std::setprecision(10)
              << trained.log_likelihood.front() << " -> " << trained.log_likelihood.back() << '\n';
  }
  return kExitOk;
}

int run_recognize(const std::string& input, const std::string& models, bool segment) {
  const auto vocab = recognizer::load_vocabulary(models);
  const auto clip = dsp::load_wav(input);
  if (segment) {
    service::ServiceConfig config;
    std::cout << service::transcribe(clip, vocab, config) << '\n';
    return kExitOk;
  }
  const auto outcome = recognizer::recognize(clip, vocab, dsp::FrontendConfig{});
  std::cout << outcome.label << '\n' << std::setprecision(17);
  for (const auto& [label, score] : outcome.ranked) std::cout << label << '\t' << score << '\n';
  return kExitOk;
}

int run_eval(const std::string& manifest, const std::string& models) {
  const auto vocab = recognizer::load_vocabulary(models);
  const auto clips = recognizer::load_labelled_clips(recognizer::read_manifest(manifest));
  const auto report = recognizer::evaluate(clips, vocab, dsp::FrontendConfig{});
  recognizer::render_table(std::cout, report);
  std::cout << '\n';
  recognizer::render_json(std::cout, report);
  return kExitOk;
}

int run_index(const std::string& corpus, const std::string& output, const std::string& stopwords) {
  const auto index = ir::index_documents(ir::load_corpus(corpus), stopwords_from(stopwords));
  ir::save_index(index, output);
  std::cout << "indexed " << index.doc_count() << " documents, " << index.postings().size() << " terms\n";
  return kExitOk;
}

int run_search(const std::string& index_file, const std::string& query, std::size_t top_k) {
  const auto index = ir::load_index(index_file);
  print_ranked(std::cout, ir::search(index, query, top_k));
  return kExitOk;
}

struct ReplayArgs {
  std::string script;
  std::string index;
  std::string corpus;
  std::string models;
  std::string stopwords;
  double threshold = 0.0;
  double boost = 2.0;
  std::size_t top_k = 10;
};

int run_replay(const ReplayArgs& a) {
  const auto index = load_or_build_index(a.corpus, a.index, a.stopwords);
  const auto events = cis::load_script(a.script);
  cis::Transcriber transcriber;
  std::shared_ptr<recognizer::Vocabulary> vocab;
  if (!a.models.empty()) {
    vocab = std::make_shared<recognizer::Vocabulary>(recognizer::load_vocabulary(a.models));
    transcriber = [vocab](const fs::path& wav) {
      return service::transcribe(dsp::load_wav(wav), *vocab, service::ServiceConfig{});
    };
  }
  const cis::SessionConfig config{a.threshold, a.boost, a.top_k};
  const auto report = cis::replay(events, index, config, transcriber, fs::path(a.script).parent_path());
  for (const auto& t : report.transcripts) std::cout << "transcript\t" << t << '\n';
  print_merged(std::cout, report.merged);
  for (const auto& f : report.failures) std::cerr << "EXPECT_TOP failed: " << f << '\n';
  std::cout << "expectations " << report.expectations - report.failures.size() << "/" << report.expectations
            << " passed\n";
  return report.passed() ? kExitOk : kExitAssertion;
}

struct ServeArgs {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string corpus;
  std::string index;
  std::string models;
  std::string stopwords;
  double threshold = 0.0;
  double boost = 2.0;
  std::size_t top_k = 10;
};

int run_serve(const ServeArgs& a) {
  auto index = std::make_shared<const ir::InvertedIndex>(load_or_build_index(a.corpus, a.index, a.stopwords));
  auto vocab = std::make_shared<const recognizer::Vocabulary>(
      a.models.empty() ? recognizer::Vocabulary{} : recognizer::load_vocabulary(a.models));
  service::ServiceConfig config;
  config.session = {a.threshold, a.boost, a.top_k};
  service::Service svc(index, vocab, config);
  std::cout << "serving " << index->doc_count() << " documents, " << vocab->size() << " word models on http://"
            << a.host << ':' << a.port << std::endl;
  if (!service::run_server(svc, a.host, a.port)) {
    std::cerr << "error: cannot listen on " << a.host << ':' << a.port << '\n';
    return kExitInput;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vircis: spoken-query collaborative search (MFCC + HMM recognition, TF-IDF retrieval, CombMNZ fusion)"};
  app.require_subcommand(1);

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate labelled synthetic tone-word WAV clips and a manifest");
  synth_cmd->add_option("--vocab", synth.vocab, "Vocabulary spec: '<word> <hz> [<hz>...]' per line")->required();
  synth_cmd->add_option("--out", synth.out, "Output directory")->required();
  synth_cmd->add_option("--count", synth.count, "Clips per word")->capture_default_str();
  synth_cmd->add_option("--seed", synth.seed, "Random seed")->capture_default_str();
  synth_cmd->add_option("--rate", synth.rate, "Sample rate in Hz")->capture_default_str();
  synth_cmd->add_option("--manifest-name", synth.manifest_name, "Manifest file name")->capture_default_str();

  std::string extract_in;
  std::string extract_out;
  auto* extract_cmd = app.add_subcommand("extract", "Compute MFCC features of a WAV file");
  extract_cmd->add_option("--input", extract_in, "PCM-16 WAV file")->required();
  extract_cmd->add_option("--output", extract_out, "Feature file ('-' or omitted for stdout)");

  std::string train_manifest;
  std::string train_out;
  hmm::TrainingConfig train_config;
  auto* train_cmd = app.add_subcommand("train", "Train one HMM per label in a manifest");
  train_cmd->add_option("--manifest", train_manifest, "Manifest of 'label<TAB>wav-path' lines")->required();
  train_cmd->add_option("--out", train_out, "Model directory")->required();
  train_cmd->add_option("--states", train_config.num_states, "Emitting states per word")->capture_default_str();
  train_cmd->add_option("--iterations", train_config.iterations, "Viterbi re-estimation rounds")->capture_default_str();
  train_cmd->add_option("--seed", train_config.seed, "Random seed")->capture_default_str();

  std::string rec_in;
  std::string rec_models;
  bool rec_segment = false;
  auto* rec_cmd = app.add_subcommand("recognize", "Recognize a WAV clip against a model directory");
  rec_cmd->add_option("--input", rec_in, "PCM-16 WAV file")->required();
  rec_cmd->add_option("--models", rec_models, "Directory of .hmm files")->required();
  rec_cmd->add_flag("--segment", rec_segment, "Split on silence and recognize one word per segment");

  std::string eval_manifest;
  std::string eval_models;
  auto* eval_cmd = app.add_subcommand("eval", "Transcription accuracy over a labelled manifest");
  eval_cmd->add_option("--manifest", eval_manifest, "Test manifest")->required();
  eval_cmd->add_option("--models", eval_models, "Directory of .hmm files")->required();

  std::string index_corpus;
  std::string index_out;
  std::string index_stopwords;
  auto* index_cmd = app.add_subcommand("index", "Build an inverted index from a corpus");
  index_cmd->add_option("--corpus", index_corpus, "Directory of text files or 'doc_id<TAB>title<TAB>path' manifest")
      ->required();
  index_cmd->add_option("--output", index_out, "Index file")->required();
  index_cmd->add_option("--stopwords", index_stopwords, "Stop-word list (default: built-in English list)");

  std::string search_index;
  std::string search_query;
  std::size_t search_top_k = 10;
  auto* search_cmd = app.add_subcommand("search", "Ranked TF-IDF search over an index file");
  search_cmd->add_option("--index", search_index, "Index file")->required();
  search_cmd->add_option("--query", search_query, "Query text")->required();
  search_cmd->add_option("--top-k", search_top_k, "Maximum results (0 = all)")->capture_default_str();

  ReplayArgs replay;
  auto* session_cmd = app.add_subcommand("session", "Collaborative session tools");
  session_cmd->require_subcommand(1);
  auto* replay_cmd = session_cmd->add_subcommand("replay", "Replay a scripted session and check EXPECT_TOP lines");
  replay_cmd->add_option("--script", replay.script, "Session script")->required();
  replay_cmd->add_option("--index", replay.index, "Index file");
  replay_cmd->add_option("--corpus", replay.corpus, "Corpus directory or manifest (instead of --index)");
  replay_cmd->add_option("--models", replay.models, "Model directory for QUERY_WAV lines");
  replay_cmd->add_option("--stopwords", replay.stopwords, "Stop-word list when indexing --corpus");
  replay_cmd->add_option("--threshold", replay.threshold, "Relevance threshold in [0, 1]")->capture_default_str();
  replay_cmd->add_option("--boost", replay.boost, "Score multiplier for judged-relevant docs")->capture_default_str();
  replay_cmd->add_option("--top-k", replay.top_k, "Results per individual query")->capture_default_str();

  ServeArgs serve;
  auto* serve_cmd = app.add_subcommand("serve", "Start the HTTP/JSON session service");
  serve_cmd->add_option("--host", serve.host, "Bind address")->capture_default_str();
  serve_cmd->add_option("--port", serve.port, "Port")->envname("VIRCIS_PORT")->capture_default_str();
  serve_cmd->add_option("--corpus", serve.corpus, "Corpus directory or manifest")->envname("VIRCIS_CORPUS");
  serve_cmd->add_option("--index", serve.index, "Serialized index (instead of --corpus)");
  serve_cmd->add_option("--models", serve.models, "Model directory")->envname("VIRCIS_MODELS");
  serve_cmd->add_option("--stopwords", serve.stopwords, "Stop-word list when indexing --corpus");
  serve_cmd->add_option("--threshold", serve.threshold, "Relevance threshold in [0, 1]")->capture_default_str();
  serve_cmd->add_option("--boost", serve.boost, "Score multiplier for judged-relevant docs")->capture_default_str();
  serve_cmd->add_option("--top-k", serve.top_k, "Results per individual query")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*synth_cmd) return run_synth(synth);
    if (*extract_cmd) return run_extract(extract_in, extract_out);
    if (*train_cmd) return run_train(train_manifest, train_out, train_config);
    if (*rec_cmd) return run_recognize(rec_in, rec_models, rec_segment);
    if (*eval_cmd) return run_eval(eval_manifest, eval_models);
    if (*index_cmd) return run_index(index_corpus, index_out, index_stopwords);
    if (*search_cmd) return run_search(search_index, search_query, search_top_k);
    if (*replay_cmd) return run_replay(replay);
    if (*serve_cmd) return run_serve(serve);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return kExitInput;
  } catch (const service::ApiError& e) {
    std::cerr << "error (" << service::to_string(e.code()) << "): " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
