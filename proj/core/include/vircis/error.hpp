#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vircis {

enum class ErrorCode {
  format,              // malformed file contents
  unsupported_format,  // well-formed but not a codec/layout we read
  parameter,           // argument outside its documented range
  input_too_short,
  model,               // model/observation mismatch or malformed model
  empty_observation,
  training_data,
  configuration,
  indexing,
  membership,          // collaborator is not part of the session
  conflict,
  not_found,
  invalid_judgment,
  io,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace vircis
