#include "vircis/recognizer/recognizer.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "vircis/error.hpp"
#include "vircis/hmm/viterbi.hpp"

namespace vircis::recognizer {

void Vocabulary::add(hmm::HmmModel model) {
  if (model.label().empty()) throw Error(ErrorCode::configuration, "vocabulary: model without a label");
  if (models_.count(model.label())) {
    throw Error(ErrorCode::configuration, "vocabulary: duplicate label '" + model.label() + "'");
  }
  if (!models_.empty() && model.dim() != dim_) {
    throw Error(ErrorCode::configuration, "vocabulary: model '" + model.label() + "' has dimension " +
                                              std::to_string(model.dim()) + ", expected " + std::to_string(dim_));
  }
  hmm::validate(model);
  dim_ = model.dim();
  std::string key = model.label();
  models_.emplace(std::move(key), std::move(model));
}

const hmm::HmmModel& Vocabulary::at(const std::string& label) const {
  const auto it = models_.find(label);
  if (it == models_.end()) throw Error(ErrorCode::not_found, "vocabulary: no model for '" + label + "'");
  return it->second;
}

std::vector<std::string> Vocabulary::labels() const {
  std::vector<std::string> out;
  out.reserve(models_.size());
  for (const auto& [label, model] : models_) out.push_back(label);
  return out;
}

Vocabulary load_vocabulary(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw Error(ErrorCode::io, "model directory not found: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".hmm") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  Vocabulary vocab;
  for (const auto& f : files) vocab.add(hmm::load_model(f));
  return vocab;
}

void save_vocabulary(const Vocabulary& vocab, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& [label, model] : vocab) hmm::save_model(model, dir / (label + ".hmm"));
}

RecognitionOutcome recognize_features(const dsp::FeatureMatrix& features, const Vocabulary& vocab) {
  if (vocab.empty()) throw Error(ErrorCode::configuration, "recognize: empty vocabulary");
  RecognitionOutcome outcome;
  outcome.ranked.reserve(vocab.size());
  for (const auto& [label, model] : vocab) {
    outcome.ranked.emplace_back(label, hmm::sequence_logprob(features, model));
  }
  // Models are visited in label order, so a stable sort keeps ties lexicographic.
  std::stable_sort(outcome.ranked.begin(), outcome.ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  outcome.label = outcome.ranked.front().first;
  outcome.log_prob = outcome.ranked.front().second;
  return outcome;
}

RecognitionOutcome recognize(const dsp::AudioClip& clip, const Vocabulary& vocab,
                             const dsp::FrontendConfig& frontend) {
  if (vocab.empty()) throw Error(ErrorCode::configuration, "recognize: empty vocabulary");
  return recognize_features(dsp::extract_mfcc(clip, frontend), vocab);
}

EvalReport tally(const std::vector<std::pair<std::string, std::string>>& outcomes) {
  EvalReport report;
  report.total = outcomes.size();
  for (const auto& [reference, hypothesis] : outcomes) {
    if (reference == hypothesis) ++report.correct;
    ++report.confusion[{reference, hypothesis}];
  }
  report.accuracy_percent =
      report.total == 0 ? 0.0 : 100.0 * static_cast<double>(report.correct) / static_cast<double>(report.total);
  return report;
}

EvalReport evaluate(const std::vector<dsp::AudioClip>& testset, const Vocabulary& vocab,
                    const dsp::FrontendConfig& frontend) {
  if (testset.empty()) throw Error(ErrorCode::parameter, "evaluate: empty test set");
  std::vector<std::pair<std::string, std::string>> outcomes;
  outcomes.reserve(testset.size());
  for (const auto& clip : testset) outcomes.emplace_back(clip.label, recognize(clip, vocab, frontend).label);
  return tally(outcomes);
}

void render_table(std::ostream& out, const EvalReport& report) {
  std::ostringstream acc;
  acc << std::fixed << std::setprecision(2) << report.accuracy_percent;
  out << std::left << std::setw(18) << "total" << report.total << '\n'
      << std::setw(18) << "correct" << report.correct << '\n'
      << std::setw(18) << "accuracy_percent" << acc.str() << '\n';
  if (report.confusion.empty()) return;

  std::size_t width = 12;
  for (const auto& [key, count] : report.confusion) {
    width = std::max({width, key.first.size() + 2, key.second.size() + 2});
  }
  out << '\n' << std::setw(static_cast<int>(width)) << "reference" << std::setw(static_cast<int>(width))
      << "recognized" << "count\n";
  for (const auto& [key, count] : report.confusion) {
    out << std::setw(static_cast<int>(width)) << key.first << std::setw(static_cast<int>(width)) << key.second
        << count << '\n';
  }
}

void render_json(std::ostream& out, const EvalReport& report) {
  std::ostringstream acc;
  acc << std::setprecision(17) << report.accuracy_percent;
  out << "{\"total\": " << report.total << ", \"correct\": " << report.correct
      << ", \"accuracy_percent\": " << acc.str() << "}\n";
}

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw Error(ErrorCode::io, "cannot open manifest " + manifest.string());
  const auto base = manifest.parent_path();
  std::vector<ManifestEntry> entries;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size()) {
      throw Error(ErrorCode::format,
                  manifest.string() + ":" + std::to_string(lineno) + ": expected 'label<TAB>path'");
    }
    std::filesystem::path path = line.substr(tab + 1);
    if (path.is_relative()) path = base / path;
    entries.push_back({line.substr(0, tab), std::move(path)});
  }
  return entries;
}

void write_manifest(const std::filesystem::path& manifest, const std::vector<ManifestEntry>& entries) {
  std::ofstream out(manifest);
  if (!out) throw Error(ErrorCode::io, "cannot write " + manifest.string());
  const auto base = manifest.parent_path();
  for (const auto& e : entries) {
    const auto rel = base.empty() ? e.path : e.path.lexically_relative(base);
    out << e.label << '\t' << (rel.empty() ? e.path : rel).generic_string() << '\n';
  }
}

std::vector<dsp::AudioClip> load_labelled_clips(const std::vector<ManifestEntry>& entries) {
  std::vector<dsp::AudioClip> clips;
  clips.reserve(entries.size());
  for (const auto& e : entries) {
    auto clip = dsp::load_wav(e.path);
    clip.label = e.label;
    clips.push_back(std::move(clip));
  }
  return clips;
}

}  // namespace vircis::recognizer
