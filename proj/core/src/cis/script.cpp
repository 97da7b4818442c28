#include "vircis/cis/script.hpp"

#include <fstream>
#include <istream>
#include <sstream>

#include "vircis/error.hpp"

namespace vircis::cis {
namespace {

[[noreturn]] void bad_line(std::size_t lineno, const std::string& what) {
  throw Error(ErrorCode::format, "script line " + std::to_string(lineno) + ": " + what);
}

std::string rest_of_line(std::istringstream& fields) {
  std::string rest;
  std::getline(fields >> std::ws, rest);
  while (!rest.empty() && (rest.back() == ' ' || rest.back() == '\t')) rest.pop_back();
  return rest;
}

}  // namespace

std::vector<ScriptEvent> parse_script(std::istream& in) {
  std::vector<ScriptEvent> events;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream fields(line);
    std::string keyword;
    if (!(fields >> keyword) || keyword.front() == '#') continue;

    ScriptEvent ev;
    ev.line = lineno;
    if (keyword == "JOIN") {
      ev.kind = ScriptEvent::Kind::join;
      if (!(fields >> ev.collaborator)) bad_line(lineno, "JOIN needs a collaborator");
    } else if (keyword == "QUERY" || keyword == "QUERY_WAV") {
      ev.kind = keyword == "QUERY" ? ScriptEvent::Kind::query : ScriptEvent::Kind::query_wav;
      if (!(fields >> ev.collaborator)) bad_line(lineno, keyword + " needs a collaborator");
      ev.text = rest_of_line(fields);
      if (ev.kind == ScriptEvent::Kind::query_wav && ev.text.empty()) bad_line(lineno, "QUERY_WAV needs a path");
    } else if (keyword == "JUDGE") {
      ev.kind = ScriptEvent::Kind::judge;
      std::string verdict;
      if (!(fields >> ev.collaborator >> ev.text >> verdict)) bad_line(lineno, "JUDGE <collab> <doc_id> <rel|irrel>");
      if (verdict == "rel") {
        ev.relevance = Relevance::relevant;
      } else if (verdict == "irrel") {
        ev.relevance = Relevance::irrelevant;
      } else {
        bad_line(lineno, "judgment must be 'rel' or 'irrel'");
      }
    } else if (keyword == "EXPECT_TOP") {
      ev.kind = ScriptEvent::Kind::expect_top;
      if (!(fields >> ev.text)) bad_line(lineno, "EXPECT_TOP needs a doc_id");
    } else {
      bad_line(lineno, "unknown command '" + keyword + "'");
    }
    events.push_back(std::move(ev));
  }
  return events;
}

std::vector<ScriptEvent> load_script(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open script " + path.string());
  return parse_script(in);
}

ReplayReport replay(const std::vector<ScriptEvent>& events, const ir::InvertedIndex& index,
                    const SessionConfig& config, const Transcriber& transcribe,
                    const std::filesystem::path& base_dir) {
  Session session("replay", config);
  ReplayReport report;
  for (const auto& ev : events) {
    switch (ev.kind) {
      case ScriptEvent::Kind::join:
        session.join(ev.collaborator);
        break;
      case ScriptEvent::Kind::query:
        session.submit_query(ev.collaborator, ev.text, index);
        break;
      case ScriptEvent::Kind::query_wav: {
        if (!transcribe) {
          throw Error(ErrorCode::configuration,
                      "script line " + std::to_string(ev.line) + ": QUERY_WAV requires a model directory");
        }
        std::filesystem::path wav = ev.text;
        if (wav.is_relative()) wav = base_dir / wav;
        report.transcripts.push_back(transcribe(wav));
        session.submit_query(ev.collaborator, report.transcripts.back(), index);
        break;
      }
      case ScriptEvent::Kind::judge:
        session.judge(ev.collaborator, ev.text, ev.relevance);
        break;
      case ScriptEvent::Kind::expect_top: {
        ++report.expectations;
        const auto& entries = session.merged().entries;
        const std::string actual = entries.empty() ? "<empty>" : entries.front().doc_id;
        if (actual != ev.text) {
          report.failures.push_back("line " + std::to_string(ev.line) + ": expected top '" + ev.text +
                                    "', got '" + actual + "'");
        }
        break;
      }
    }
  }
  report.merged = session.merged();
  return report;
}

}  // namespace vircis::cis
