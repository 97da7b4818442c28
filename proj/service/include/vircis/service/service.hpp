#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "vircis/cis/session.hpp"
#include "vircis/dsp/audio.hpp"
#include "vircis/dsp/mfcc.hpp"
#include "vircis/dsp/segment.hpp"
#include "vircis/error.hpp"
#include "vircis/ir/index.hpp"
#include "vircis/recognizer/recognizer.hpp"

namespace vircis::service {

using Json = nlohmann::ordered_json;

enum class ApiErrorCode { not_found, conflict, bad_input, unsupported_media, internal };

int http_status(ApiErrorCode code);
std::string_view to_string(ApiErrorCode code);

class ApiError : public std::runtime_error {
 public:
  ApiError(ApiErrorCode code, const std::string& message) : std::runtime_error(message), code_(code) {}
  ApiErrorCode code() const noexcept { return code_; }

 private:
  ApiErrorCode code_;
};

/// Maps library errors onto the API error space.
ApiError to_api_error(const Error& e);

/// {"error": {"code": ..., "message": ...}}
Json error_body(const ApiError& e);

struct ApiResponse {
  int status = 200;
  Json body;
};

struct ServiceConfig {
  cis::SessionConfig session;
  dsp::FrontendConfig frontend;
  dsp::SegmentationConfig segmentation;
};

// Stable serializations shared by the HTTP layer and golden tests.
Json to_json(const ir::RankedList& list);
Json to_json(const cis::MergedResult& merged);
Json to_json(const cis::SplitAssignment& split);
Json snapshot(const cis::Session& session);

/// Recognizes each silence-delimited segment and joins the words with spaces.
/// Throws ApiError{bad_input} when the vocabulary is empty or no speech is found.
std::string transcribe(const dsp::AudioClip& clip, const recognizer::Vocabulary& vocab,
                       const ServiceConfig& config);

/// Transport-independent request handlers over a registry of sessions.
/// Each session has its own mutex, so mutations of one session are
/// totally ordered while different sessions proceed independently.
/// Handlers throw ApiError; the HTTP adapter turns it into a status code.
class Service {
 public:
  Service(std::shared_ptr<const ir::InvertedIndex> index, std::shared_ptr<const recognizer::Vocabulary> vocab,
          ServiceConfig config = {});

  ApiResponse create_session(const Json& body);
  ApiResponse join(const std::string& session_id, const Json& body);
  ApiResponse get_session(const std::string& session_id);
  ApiResponse text_query(const std::string& session_id, const Json& body);
  ApiResponse audio_query(const std::string& session_id, const std::string& collaborator_id,
                          std::string_view wav_bytes);
  ApiResponse judge(const std::string& session_id, const Json& body);
  ApiResponse split(const std::string& session_id);

  const ir::InvertedIndex& index() const { return *index_; }
  const recognizer::Vocabulary& vocabulary() const { return *vocab_; }
  const ServiceConfig& config() const { return config_; }

 private:
  struct Slot {
    std::mutex mutex;
    cis::Session session;
    explicit Slot(cis::Session s) : session(std::move(s)) {}
  };

  std::shared_ptr<Slot> find(const std::string& session_id);
  ApiResponse run_query(const std::string& session_id, const std::string& collaborator_id,
                        const std::string& text, const std::string& transcript);

  std::shared_ptr<const ir::InvertedIndex> index_;
  std::shared_ptr<const recognizer::Vocabulary> vocab_;
  ServiceConfig config_;
  std::mutex registry_mutex_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
};

}  // namespace vircis::service
