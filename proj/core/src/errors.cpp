#include "pathforest/errors.hpp"

namespace pathforest {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::empty_input: return "EmptyInput";
    case Errc::non_monotone_time: return "NonMonotoneTime";
    case Errc::constant_path: return "ConstantPath";
    case Errc::non_finite_value: return "NonFiniteValue";
    case Errc::out_of_range: return "OutOfRange";
    case Errc::non_positive_scale: return "NonPositiveScale";
    case Errc::empty_trimmed_tree: return "EmptyTrimmedTree";
    case Errc::invalid_exponent: return "InvalidExponent";
    case Errc::insufficient_scales: return "InsufficientScales";
    case Errc::too_few_leaves: return "TooFewLeaves";
    case Errc::non_convergent: return "NonConvergent";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::invalid_hurst: return "InvalidHurst";
    case Errc::invalid_alpha: return "InvalidAlpha";
    case Errc::embedding_not_psd: return "EmbeddingNotPSD";
    case Errc::no_convergence: return "NoConvergence";
    case Errc::io_error: return "IoError";
    case Errc::internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace pathforest
