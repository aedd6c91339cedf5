#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "glotbench/acdr.hpp"
#include "glotbench/iaif.hpp"
#include "glotbench/spectral.hpp"
#include "glotbench/vowel_synthesis.hpp"

namespace glotbench {

enum class Method { zzt = 0, iaif = 1, acdr_speech = 2, acdr_iaif = 3 };

inline constexpr std::array<Method, 4> kAllMethods{Method::zzt, Method::iaif,
                                                   Method::acdr_speech, Method::acdr_iaif};

std::string_view to_string(Method m) noexcept;
/// Throws Error(config) for an unknown name.
Method parse_method(std::string_view name);
std::vector<Method> parse_method_list(std::string_view comma_separated);

struct LfShape {
  double oq = 0.6;
  double am = 0.67;
  double qa = 0.05;

  friend auto operator<=>(const LfShape&, const LfShape&) = default;
};

/// The factorial test grid. Every combination of the five lists is a cell.
struct GridSpec {
  std::vector<double> f0_values;
  std::vector<char> vowels;
  std::vector<double> snr_values;  // +inf for clean
  std::vector<double> gci_error_fracs;
  std::vector<LfShape> lf_shapes;
  std::size_t n_periods = 6;
  int fs = 8000;

  /// 10 F0 x 4 vowels x 6 SNR x 11 GCI errors x 3 shapes = 7920 cells.
  static GridSpec desk();

  std::size_t cell_count() const;
  void validate() const;
};

/// Shapes used by GridSpec::desk(): tense, modal and lax phonation.
std::vector<LfShape> default_lf_shapes();

struct CellCondition {
  double f0 = 100.0;
  char vowel = 'a';
  double snr_db = kClean;
  double gci_error_frac = 0.0;
  LfShape shape;
  std::size_t n_periods = 6;
  int fs = 8000;

  LfParams lf_params() const;
};

/// Canonical ordering of conditions: f0, vowel, SNR (clean last), GCI
/// error, shape.
bool condition_less(const CellCondition& a, const CellCondition& b);

/// Stable 64-bit seed: FNV-1a over the global seed and the condition tuple
/// printed with %.12g, finalised with splitmix64.
std::uint64_t cell_seed(std::uint64_t global_seed, const CellCondition& cond);

struct MethodResult {
  std::string status = "skipped";  // "ok", "skipped", or an ErrorKind name
  std::optional<double> sd_db;
  std::optional<double> fg_est;

  std::optional<double> rel_error(double fg_ref) const;
};

struct ExperimentRecord {
  CellCondition cond;
  std::size_t gci_index = 0;
  double fg_ref = 0.0;
  std::array<MethodResult, 4> methods;

  const MethodResult& result(Method m) const { return methods[static_cast<std::size_t>(m)]; }
  MethodResult& result(Method m) { return methods[static_cast<std::size_t>(m)]; }
};

struct RunOptions {
  std::vector<Method> methods{kAllMethods.begin(), kAllMethods.end()};
  std::uint64_t global_seed = 0;
  IaifConfig iaif;
  AcdrOptions acdr;
  WindowSpec zzt_window = WindowSpec::blackman();
  /// Window over the single period of the IAIF estimate that is scored.
  WindowSpec iaif_window = WindowSpec::blackman();
};

/// One period of a whole-frame estimate centred on the GCI (length
/// 2*floor(gci_offset/2)+1), multiplied by `window`. This is how the IAIF
/// estimate is turned into a single-cycle spectrum.
std::vector<double> one_period_segment(std::span<const double> estimate, std::size_t gci_offset,
                                       const WindowSpec& window = WindowSpec::blackman());

/// Normalised magnitude spectrum of the true LF pulse: the target every
/// estimate is compared with.
MagnitudeSpectrum reference_spectrum(const LfParams& lf, int fs);

/// Synthesises the cell, perturbs its GCIs and runs every requested method
/// on each interior GCI. Method failures are stored in the record.
std::vector<ExperimentRecord> run_cell(const CellCondition& cond, const RunOptions& options);

struct GridResult {
  std::vector<ExperimentRecord> records;
  std::size_t cells = 0;
  std::size_t failed_cells = 0;
  std::vector<std::string> failures;  // one message per failed cell
};

/// All cells of the grid on `jobs` worker threads. Records come back in
/// canonical condition order whatever the scheduling.
GridResult run_grid(const GridSpec& spec, const RunOptions& options, unsigned jobs = 1);

/// Enumerates the grid's cells in canonical order.
std::vector<CellCondition> enumerate_cells(const GridSpec& spec);

}  // namespace glotbench
