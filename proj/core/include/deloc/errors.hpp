#pragma once

#include <stdexcept>
#include <string>

namespace deloc {

// Structured rejection categories. Commands map these onto exit codes:
// malformed input / bad parameters are usage errors, everything else is an
// analysis failure.
enum class errc {
  bad_argument,
  non_regular,
  malformed_line,
  self_loop,
  duplicate_edge,
  unsupported_degree,
  parity,
  rejection_limit_exceeded,
  n_odd,
  depth_too_small,
  unsupported_exponent,
  no_decay,
  degenerate_range,
  mass_below_epsilon,
  recipe_mismatch,
  bad_exponent,
  size_budget_exceeded,
};

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

const char* errc_name(errc code) noexcept;

// True for rejections caused by bad input rather than a failed analysis.
bool is_usage_error(errc code) noexcept;

}  // namespace deloc
