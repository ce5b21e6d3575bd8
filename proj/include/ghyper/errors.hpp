#pragma once

#include <stdexcept>
#include <string>

namespace ghyper {

// Every contract violation carries one of these codes; the CLI prints the
// code name so callers can match on it.
enum class Errc {
  zero_total,
  sign_violation,
  draw_count_violation,
  gamma_violation,
  length_error,
  dimension_mismatch,
  tail_epsilon_zero_on_infinite_support,
  infeasible_total,
  infeasible_color_zero,
  scale_too_small,
  non_positive_ball_count,
  scale_cap_exceeded,
  step_cap_exceeded,
  insufficient_trials,
  support_mismatch,
  range_error,
  usage_error,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace ghyper
