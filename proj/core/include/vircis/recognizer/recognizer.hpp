#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "vircis/dsp/audio.hpp"
#include "vircis/dsp/mfcc.hpp"
#include "vircis/hmm/model.hpp"

namespace vircis::recognizer {

/// Closed set of word models sharing one feature dimension.
class Vocabulary {
 public:
  Vocabulary() = default;

  /// Throws Error{configuration} on an empty or duplicate label or a
  /// dimension that differs from the models already present.
  void add(hmm::HmmModel model);

  bool empty() const { return models_.empty(); }
  std::size_t size() const { return models_.size(); }
  std::size_t dim() const { return dim_; }
  const hmm::HmmModel& at(const std::string& label) const;
  std::vector<std::string> labels() const;

  // Iterates models in label order.
  auto begin() const { return models_.begin(); }
  auto end() const { return models_.end(); }

 private:
  std::map<std::string, hmm::HmmModel> models_;
  std::size_t dim_ = 0;
};

/// Loads every *.hmm file in dir.
Vocabulary load_vocabulary(const std::filesystem::path& dir);
void save_vocabulary(const Vocabulary& vocab, const std::filesystem::path& dir);

struct RecognitionOutcome {
  std::string label;
  double log_prob = 0.0;
  // All candidates, best first; equal scores ordered by label.
  std::vector<std::pair<std::string, double>> ranked;
};

RecognitionOutcome recognize_features(const dsp::FeatureMatrix& features, const Vocabulary& vocab);
RecognitionOutcome recognize(const dsp::AudioClip& clip, const Vocabulary& vocab,
                             const dsp::FrontendConfig& frontend = {});

struct EvalReport {
  std::size_t total = 0;
  std::size_t correct = 0;
  double accuracy_percent = 0.0;
  // (reference, hypothesis) -> count
  std::map<std::pair<std::string, std::string>, std::size_t> confusion;
};

/// Builds a report from (reference, hypothesis) pairs.
EvalReport tally(const std::vector<std::pair<std::string, std::string>>& outcomes);

/// Throws Error{parameter} for an empty test set.
EvalReport evaluate(const std::vector<dsp::AudioClip>& testset, const Vocabulary& vocab,
                    const dsp::FrontendConfig& frontend = {});

/// Aligned text table: summary lines then the confusion counts.
void render_table(std::ostream& out, const EvalReport& report);
/// {"total": .., "correct": .., "accuracy_percent": ..} on one line.
void render_json(std::ostream& out, const EvalReport& report);

struct ManifestEntry {
  std::string label;
  std::filesystem::path path;
};

// Lines "label<TAB>wav-path"; relative paths resolve against the manifest's directory.
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& manifest);
void write_manifest(const std::filesystem::path& manifest, const std::vector<ManifestEntry>& entries);
std::vector<dsp::AudioClip> load_labelled_clips(const std::vector<ManifestEntry>& entries);

}  // namespace vircis::recognizer
