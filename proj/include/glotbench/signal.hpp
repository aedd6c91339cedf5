#pragma once

#include <cstddef>
#include <vector>

namespace glotbench {

/// Uniformly sampled real signal. `gcis` lists glottal closure instants as
/// sample indices (strictly increasing, all < samples.size()); it is empty
/// when the signal carries no GCI annotation.
struct SampledSignal {
  std::vector<double> samples;
  int fs = 8000;
  std::vector<std::size_t> gcis;

  std::size_t size() const noexcept { return samples.size(); }

  /// Throws Error(invalid_parameter) if fs <= 0 or the GCI list is not
  /// strictly increasing within range.
  void validate() const;
};

/// A two-period analysis frame. `gci_offset` is the position of the
/// centre GCI inside `samples`.
struct Frame {
  std::vector<double> samples;
  std::size_t gci_offset = 0;
  int fs = 8000;
};

}  // namespace glotbench
