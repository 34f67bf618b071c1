#pragma once

#include <stdexcept>
#include <string>

namespace hvbk {

enum class ErrorCode {
  invalid_argument,
  grid_mismatch,
  gauge_violation,
  not_divergence_free,
  precondition,
  config,
  io,
  checkpoint_corrupt,
  checkpoint_truncated,
  checkpoint_version,
  blowup,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised when the integrated state stops being finite or exceeds the
// vorticity ceiling. Carries the last time at which the state was valid.
class BlowupError : public Error {
 public:
  BlowupError(double last_valid_time, const std::string& what)
      : Error(ErrorCode::blowup, what), last_valid_time_(last_valid_time) {}

  double last_valid_time() const noexcept { return last_valid_time_; }

 private:
  double last_valid_time_;
};

}  // namespace hvbk
