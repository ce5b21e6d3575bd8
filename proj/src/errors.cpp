#include "ghyper/errors.hpp"

namespace ghyper {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::zero_total: return "ZeroTotal";
    case Errc::sign_violation: return "SignViolation";
    case Errc::draw_count_violation: return "DrawCountViolation";
    case Errc::gamma_violation: return "GammaViolation";
    case Errc::length_error: return "LengthError";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::tail_epsilon_zero_on_infinite_support: return "TailEpsilonZeroOnInfiniteSupport";
    case Errc::infeasible_total: return "InfeasibleTotal";
    case Errc::infeasible_color_zero: return "InfeasibleColorZero";
    case Errc::scale_too_small: return "ScaleTooSmall";
    case Errc::non_positive_ball_count: return "NonPositiveBallCount";
    case Errc::scale_cap_exceeded: return "ScaleCapExceeded";
    case Errc::step_cap_exceeded: return "StepCapExceeded";
    case Errc::insufficient_trials: return "InsufficientTrials";
    case Errc::support_mismatch: return "SupportMismatch";
    case Errc::range_error: return "RangeError";
    case Errc::usage_error: return "UsageError";
  }
  return "UnknownError";
}

}  // namespace ghyper
