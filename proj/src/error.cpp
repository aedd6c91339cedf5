#include "glotbench/error.hpp"

namespace glotbench {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_parameter: return "invalid_parameter";
    case ErrorKind::too_few_samples: return "too_few_samples";
    case ErrorKind::unknown_vowel: return "unknown_vowel";
    case ErrorKind::silent_signal: return "silent_signal";
    case ErrorKind::out_of_range: return "out_of_range";
    case ErrorKind::edge_gci: return "edge_gci";
    case ErrorKind::degenerate_frame: return "degenerate_frame";
    case ErrorKind::zero_polynomial: return "zero_polynomial";
    case ErrorKind::no_peak: return "no_peak";
    case ErrorKind::empty_input: return "empty_input";
    case ErrorKind::mismatched_rate: return "mismatched_rate";
    case ErrorKind::too_few_gcis: return "too_few_gcis";
    case ErrorKind::io: return "io";
    case ErrorKind::config: return "config";
  }
  return "unknown";
}

}  // namespace glotbench
