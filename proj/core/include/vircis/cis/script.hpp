#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "vircis/cis/session.hpp"

namespace vircis::cis {

/// One line of a scripted session:
///   JOIN <collab>
///   QUERY <collab> <text...>
///   QUERY_WAV <collab> <wav-path>
///   JUDGE <collab> <doc_id> <rel|irrel>
///   EXPECT_TOP <doc_id>
struct ScriptEvent {
  enum class Kind { join, query, query_wav, judge, expect_top };

  Kind kind = Kind::join;
  std::string collaborator;
  std::string text;  // query text, wav path, or doc_id depending on kind
  Relevance relevance = Relevance::relevant;
  std::size_t line = 0;
};

/// Blank lines and lines starting with '#' are ignored. Throws Error{format}.
std::vector<ScriptEvent> parse_script(std::istream& in);
std::vector<ScriptEvent> load_script(const std::filesystem::path& path);

/// Turns a WAV file into query text; needed only for QUERY_WAV lines.
using Transcriber = std::function<std::string(const std::filesystem::path&)>;

struct ReplayReport {
  MergedResult merged;
  std::vector<std::string> transcripts;  // one per QUERY_WAV, in order
  std::vector<std::string> failures;     // failed EXPECT_TOP assertions
  std::size_t expectations = 0;

  bool passed() const { return failures.empty(); }
};

/// Replays events against a fresh session. Relative wav paths resolve
/// against base_dir. Library errors propagate (membership, judgments, ...).
ReplayReport replay(const std::vector<ScriptEvent>& events, const ir::InvertedIndex& index,
                    const SessionConfig& config = {}, const Transcriber& transcribe = {},
                    const std::filesystem::path& base_dir = {});

}  // namespace vircis::cis
