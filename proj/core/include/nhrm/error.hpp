#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nhrm {

enum class ErrorCode {
  NonSquareSymmetric,
  NegativeEntry,
  NonFiniteEntry,
  AsymmetricEntries,
  NotSymmetric,
  ShapeMismatch,
  ConvergenceFailure,
  InfeasibleBound,
  BadBeta,
  BadAlpha,
  BadP,
  CapExceeded,
  NonzeroDiagonal,
  Disconnected,
  NotATree,
  BadExponents,
  BadWeights,
  BadShape,
  PlanMismatch,
  UnknownGenerator,
  BadParams,
  BadConfig,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace nhrm
