#include "nhrm/error.hpp"

namespace nhrm {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonSquareSymmetric: return "NonSquareSymmetric";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::NonFiniteEntry: return "NonFiniteEntry";
    case ErrorCode::AsymmetricEntries: return "AsymmetricEntries";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::InfeasibleBound: return "InfeasibleBound";
    case ErrorCode::BadBeta: return "BadBeta";
    case ErrorCode::BadAlpha: return "BadAlpha";
    case ErrorCode::BadP: return "BadP";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::NonzeroDiagonal: return "NonzeroDiagonal";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::NotATree: return "NotATree";
    case ErrorCode::BadExponents: return "BadExponents";
    case ErrorCode::BadWeights: return "BadWeights";
    case ErrorCode::BadShape: return "BadShape";
    case ErrorCode::PlanMismatch: return "PlanMismatch";
    case ErrorCode::UnknownGenerator: return "UnknownGenerator";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

}  // namespace nhrm
