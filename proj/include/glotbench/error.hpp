#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace glotbench {

enum class ErrorKind {
  invalid_parameter,
  too_few_samples,
  unknown_vowel,
  silent_signal,
  out_of_range,
  edge_gci,
  degenerate_frame,
  zero_polynomial,
  no_peak,
  empty_input,
  mismatched_rate,
  too_few_gcis,
  io,
  config,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries a kind so callers (the harness
// in particular) can record it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace glotbench
