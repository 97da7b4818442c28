#include "vircis/error.hpp"

namespace vircis {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::format: return "format";
    case ErrorCode::unsupported_format: return "unsupported_format";
    case ErrorCode::parameter: return "parameter";
    case ErrorCode::input_too_short: return "input_too_short";
    case ErrorCode::model: return "model";
    case ErrorCode::empty_observation: return "empty_observation";
    case ErrorCode::training_data: return "training_data";
    case ErrorCode::configuration: return "configuration";
    case ErrorCode::indexing: return "indexing";
    case ErrorCode::membership: return "membership";
    case ErrorCode::conflict: return "conflict";
    case ErrorCode::not_found: return "not_found";
    case ErrorCode::invalid_judgment: return "invalid_judgment";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

}  // namespace vircis
