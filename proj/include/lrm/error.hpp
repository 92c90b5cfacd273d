#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lrm {

enum class Errc {
  DivisionByZero,
  ContextMismatch,
  NotASubgroup,
  NoRelation,
  Ambiguous,
  FrameMismatch,
  ValueMismatch,
  Precondition,
  StepBoundExceeded,
  PreconditionValueInGroup,
  BinomialObstruction,
  DefectSuspected,
  Case2Signal,
  NotCase2,
  NotOstrowski,
  JumpNotGtOne,
  Parse,
  Unsupported,
  Internal,
};

/// Stable upper-case name of an error code, e.g. "DIVISION-BY-ZERO".
std::string_view errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace lrm
