#include "lrm/error.hpp"

namespace lrm {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::DivisionByZero: return "DIVISION-BY-ZERO";
    case Errc::ContextMismatch: return "CONTEXT-MISMATCH";
    case Errc::NotASubgroup: return "NOT-A-SUBGROUP";
    case Errc::NoRelation: return "NO-RELATION";
    case Errc::Ambiguous: return "AMBIGUOUS";
    case Errc::FrameMismatch: return "FRAME-MISMATCH";
    case Errc::ValueMismatch: return "VALUE-MISMATCH";
    case Errc::Precondition: return "PRECONDITION";
    case Errc::StepBoundExceeded: return "STEP-BOUND-EXCEEDED";
    case Errc::PreconditionValueInGroup: return "PRECONDITION-VALUE-IN-GROUP";
    case Errc::BinomialObstruction: return "BINOMIAL-OBSTRUCTION";
    case Errc::DefectSuspected: return "DEFECT-SUSPECTED";
    case Errc::Case2Signal: return "CASE2-SIGNAL";
    case Errc::NotCase2: return "NOT-CASE2";
    case Errc::NotOstrowski: return "NOT-OSTROWSKI";
    case Errc::JumpNotGtOne: return "JUMP-NOT-GT-ONE";
    case Errc::Parse: return "PARSE";
    case Errc::Unsupported: return "UNSUPPORTED";
    case Errc::Internal: return "INTERNAL";
  }
  return "UNKNOWN";
}

}  // namespace lrm
