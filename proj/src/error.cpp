#include "mbrank/error.hpp"

namespace mbrank {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::InvalidData: return "INVALID_DATA";
    case Errc::InvalidConfig: return "INVALID_CONFIG";
    case Errc::EmptySubset: return "EMPTY_SUBSET";
    case Errc::AlreadyCentered: return "ALREADY_CENTERED";
    case Errc::NotCentered: return "NOT_CENTERED";
    case Errc::DimensionMismatch: return "DIMENSION_MISMATCH";
    case Errc::BadTarget: return "BAD_TARGET";
    case Errc::SingularConditioning: return "SINGULAR_CONDITIONING";
    case Errc::TooFewSamples: return "TOO_FEW_SAMPLES";
    case Errc::BadExperiment: return "BAD_EXPERIMENT";
    case Errc::EmptyTruth: return "EMPTY_TRUTH";
    case Errc::BadOrder: return "BAD_ORDER";
    case Errc::BadK: return "BAD_K";
    case Errc::UndefinedScore: return "UNDEFINED_SCORE";
    case Errc::TooFewTrials: return "TOO_FEW_TRIALS";
    case Errc::NotPositiveDefinite: return "NOT_POSITIVE_DEFINITE";
    case Errc::Io: return "IO";
    case Errc::Parse: return "PARSE";
  }
  return "UNKNOWN";
}

}  // namespace mbrank
