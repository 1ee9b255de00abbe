#pragma once

#include <stdexcept>
#include <string>

namespace pathforest {

enum class Errc {
  empty_input,
  non_monotone_time,
  constant_path,
  non_finite_value,
  out_of_range,
  non_positive_scale,
  empty_trimmed_tree,
  invalid_exponent,
  insufficient_scales,
  too_few_leaves,
  non_convergent,
  dimension_mismatch,
  invalid_hurst,
  invalid_alpha,
  embedding_not_psd,
  no_convergence,
  io_error,
  internal,
};

/// Stable machine-readable name, used in CLI error JSON.
const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace pathforest
