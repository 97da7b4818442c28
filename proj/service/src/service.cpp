#include "vircis/service/service.hpp"

#include <span>

#include "vircis/error.hpp"

namespace vircis::service {
namespace {

std::string require_string(const Json& body, const char* key) {
  if (!body.is_object() || !body.contains(key) || !body[key].is_string() || body[key].get<std::string>().empty()) {
    throw ApiError(ApiErrorCode::bad_input, std::string("expected non-empty string field '") + key + "'");
  }
  return body[key].get<std::string>();
}

}  // namespace

int http_status(ApiErrorCode code) {
  switch (code) {
    case ApiErrorCode::not_found: return 404;
    case ApiErrorCode::conflict: return 409;
    case ApiErrorCode::bad_input: return 400;
    case ApiErrorCode::unsupported_media: return 415;
    case ApiErrorCode::internal: return 500;
  }
  return 500;
}

std::string_view to_string(ApiErrorCode code) {
  switch (code) {
    case ApiErrorCode::not_found: return "not_found";
    case ApiErrorCode::conflict: return "conflict";
    case ApiErrorCode::bad_input: return "bad_input";
    case ApiErrorCode::unsupported_media: return "unsupported_media";
    case ApiErrorCode::internal: return "internal";
  }
  return "internal";
}

ApiError to_api_error(const Error& e) {
  switch (e.code()) {
    case ErrorCode::not_found: return {ApiErrorCode::not_found, e.what()};
    case ErrorCode::conflict: return {ApiErrorCode::conflict, e.what()};
    case ErrorCode::format:
    case ErrorCode::unsupported_format: return {ApiErrorCode::unsupported_media, e.what()};
    case ErrorCode::parameter:
    case ErrorCode::input_too_short:
    case ErrorCode::empty_observation:
    case ErrorCode::configuration:
    case ErrorCode::membership:
    case ErrorCode::invalid_judgment: return {ApiErrorCode::bad_input, e.what()};
    case ErrorCode::model:
    case ErrorCode::training_data:
    case ErrorCode::indexing:
    case ErrorCode::io: return {ApiErrorCode::internal, e.what()};
  }
  return {ApiErrorCode::internal, e.what()};
}

Json error_body(const ApiError& e) {
  Json err;
  err["code"] = to_string(e.code());
  err["message"] = e.what();
  Json body;
  body["error"] = std::move(err);
  return body;
}

Json to_json(const ir::RankedList& list) {
  Json entries = Json::array();
  for (const auto& e : list.entries) {
    Json item;
    item["doc_id"] = e.doc_id;
    item["score"] = e.score;
    entries.push_back(std::move(item));
  }
  return entries;
}

Json to_json(const cis::MergedResult& merged) {
  Json entries = Json::array();
  for (const auto& e : merged.entries) {
    Json item;
    item["doc_id"] = e.doc_id;
    item["score"] = e.fused_score;
    item["contributors"] = e.contributor_count;
    entries.push_back(std::move(item));
  }
  return entries;
}

Json to_json(const cis::SplitAssignment& split) {
  Json assignment = Json::object();
  for (const auto& [collaborator, docs] : split.assignment) assignment[collaborator] = docs;
  return assignment;
}

Json snapshot(const cis::Session& session) {
  Json out;
  out["session_id"] = session.id();
  out["collaborators"] = Json(session.collaborators());

  Json histories = Json::object();
  for (const auto& [collaborator, entries] : session.history()) {
    Json list = Json::array();
    for (const auto& h : entries) {
      Json item;
      item["query"] = h.query;
      item["query_terms"] = h.result.query_terms;
      item["results"] = to_json(h.result);
      list.push_back(std::move(item));
    }
    histories[collaborator] = std::move(list);
  }
  out["histories"] = std::move(histories);

  Json judgments = Json::array();
  for (const auto& [key, verdict] : session.judgments()) {
    Json item;
    item["collaborator_id"] = key.first;
    item["doc_id"] = key.second;
    item["relevant"] = verdict == cis::Relevance::relevant;
    judgments.push_back(std::move(item));
  }
  out["judgments"] = std::move(judgments);
  out["merged_results"] = to_json(session.merged());

  Json suggestions = Json::object();
  for (const auto& c : session.collaborators()) suggestions[c] = session.suggest_queries(c);
  out["suggestions"] = std::move(suggestions);
  return out;
}

std::string transcribe(const dsp::AudioClip& clip, const recognizer::Vocabulary& vocab,
                       const ServiceConfig& config) {
  if (vocab.empty()) throw ApiError(ApiErrorCode::bad_input, "recognition requested but no word models are loaded");
  const auto segments = dsp::split_on_silence(clip, config.segmentation);
  if (segments.empty()) throw ApiError(ApiErrorCode::bad_input, "no speech detected in audio");
  std::string transcript;
  for (const auto& seg : segments) {
    if (!transcript.empty()) transcript += ' ';
    transcript += recognizer::recognize(seg, vocab, config.frontend).label;
  }
  return transcript;
}

Service::Service(std::shared_ptr<const ir::InvertedIndex> index,
                 std::shared_ptr<const recognizer::Vocabulary> vocab, ServiceConfig config)
    : index_(std::move(index)), vocab_(std::move(vocab)), config_(config) {
  if (!index_) throw Error(ErrorCode::configuration, "service: no index");
  if (!vocab_) vocab_ = std::make_shared<const recognizer::Vocabulary>();
}

std::shared_ptr<Service::Slot> Service::find(const std::string& session_id) {
  std::lock_guard lock(registry_mutex_);
  const auto it = sessions_.find(session_id);
  if (it == sessions_.end()) throw ApiError(ApiErrorCode::not_found, "no session '" + session_id + "'");
  return it->second;
}

ApiResponse Service::create_session(const Json& body) {
  const std::string id = require_string(body, "session_id");
  auto slot = std::make_shared<Slot>(cis::Session(id, config_.session));
  {
    std::lock_guard lock(registry_mutex_);
    if (!sessions_.emplace(id, slot).second) {
      throw ApiError(ApiErrorCode::conflict, "session '" + id + "' already exists");
    }
  }
  std::lock_guard lock(slot->mutex);
  return {201, snapshot(slot->session)};
}

ApiResponse Service::join(const std::string& session_id, const Json& body) {
  const std::string collaborator = require_string(body, "collaborator_id");
  auto slot = find(session_id);
  std::lock_guard lock(slot->mutex);
  slot->session.join(collaborator);
  return {200, snapshot(slot->session)};
}

ApiResponse Service::get_session(const std::string& session_id) {
  auto slot = find(session_id);
  std::lock_guard lock(slot->mutex);
  return {200, snapshot(slot->session)};
}

ApiResponse Service::run_query(const std::string& session_id, const std::string& collaborator_id,
                               const std::string& text, const std::string& transcript) {
  auto slot = find(session_id);
  std::lock_guard lock(slot->mutex);
  try {
    const auto& individual = slot->session.submit_query(collaborator_id, text, *index_);
    Json out;
    out["transcript"] = transcript;
    out["query_terms"] = individual.query_terms;
    out["individual_results"] = to_json(individual);
    out["merged_results"] = to_json(slot->session.merged());
    return {200, std::move(out)};
  } catch (const Error& e) {
    throw to_api_error(e);
  }
}

ApiResponse Service::text_query(const std::string& session_id, const Json& body) {
  const std::string collaborator = require_string(body, "collaborator_id");
  if (!body.contains("text") || !body["text"].is_string()) {
    throw ApiError(ApiErrorCode::bad_input, "expected string field 'text'");
  }
  const std::string text = body["text"].get<std::string>();
  return run_query(session_id, collaborator, text, text);
}

ApiResponse Service::audio_query(const std::string& session_id, const std::string& collaborator_id,
                                 std::string_view wav_bytes) {
  if (collaborator_id.empty()) throw ApiError(ApiErrorCode::bad_input, "expected field 'collaborator_id'");
  {
    // Membership first so an unknown caller gets 400 before any decoding work.
    auto slot = find(session_id);
    std::lock_guard lock(slot->mutex);
    if (!slot->session.is_member(collaborator_id)) {
      throw ApiError(ApiErrorCode::bad_input, "collaborator '" + collaborator_id + "' is not a member");
    }
  }
  dsp::AudioClip clip;
  try {
    clip = dsp::parse_wav(std::as_bytes(std::span<const char>(wav_bytes.data(), wav_bytes.size())));
  } catch (const Error& e) {
    throw ApiError(ApiErrorCode::unsupported_media, std::string("audio must be PCM-16 WAV: ") + e.what());
  }
  std::string transcript;
  try {
    transcript = transcribe(clip, *vocab_, config_);
  } catch (const Error& e) {
    throw ApiError(ApiErrorCode::bad_input, e.what());
  }
  return run_query(session_id, collaborator_id, transcript, transcript);
}

ApiResponse Service::judge(const std::string& session_id, const Json& body) {
  const std::string collaborator = require_string(body, "collaborator_id");
  const std::string doc = require_string(body, "doc_id");
  if (!body.contains("relevant") || !body["relevant"].is_boolean()) {
    throw ApiError(ApiErrorCode::bad_input, "expected boolean field 'relevant'");
  }
  const auto verdict = body["relevant"].get<bool>() ? cis::Relevance::relevant : cis::Relevance::irrelevant;
  auto slot = find(session_id);
  std::lock_guard lock(slot->mutex);
  try {
    slot->session.judge(collaborator, doc, verdict);
  } catch (const Error& e) {
    throw to_api_error(e);
  }
  Json out;
  out["merged_results"] = to_json(slot->session.merged());
  return {200, std::move(out)};
}

ApiResponse Service::split(const std::string& session_id) {
  auto slot = find(session_id);
  std::lock_guard lock(slot->mutex);
  if (slot->session.collaborators().empty()) {
    throw ApiError(ApiErrorCode::bad_input, "session '" + session_id + "' has no collaborators");
  }
  Json out;
  out["assignment"] = to_json(slot->session.split());
  return {200, std::move(out)};
}

}  // namespace vircis::service
