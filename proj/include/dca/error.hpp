#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dca {

enum class ErrorCode {
  kCycleDetected,
  kNotGraded,
  kNotSemilattice,
  kTooLarge,
  kNotPolar,
  kBadAlpha,
  kNotConnected,
  kNotModular,
  kNotWeaklyModular,
  kNotSwm,
  kNotOrientedModular,
  kSameVertex,
  kSearchBudgetExceeded,
  kLocalBudgetExceeded,
  kNotLConvex,
  kEmptyFilter,
  kNotAChain,
  kOutOfRegion,
  kUnsupportedComplex,
  kBadBounds,
  kBadInput,
  kInvariantViolated,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library; the code tells callers which
// precondition or budget failed.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Internal consistency check: a failure means a theorem-backed identity did
// not hold on the given input, which is either bad input or a bug.
inline void ensure(bool condition, const std::string& what) {
  if (!condition) throw Error(ErrorCode::kInvariantViolated, what);
}

}  // namespace dca
