#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "glotbench/harness.hpp"
#include "glotbench/metrics.hpp"

namespace glotbench {

enum class Factor { snr, gci_error, f0, vowel };

inline constexpr std::array<Factor, 4> kAllFactors{Factor::snr, Factor::gci_error, Factor::f0,
                                                   Factor::vowel};

std::string_view to_string(Factor f) noexcept;
Factor parse_factor(std::string_view name);

/// Records a view keeps. The SNR view keeps everything; the GCI view keeps
/// clean speech; the F0 and vowel views keep clean speech with exact GCIs.
bool in_view(const ExperimentRecord& rec, Factor f);

/// One (factor level, method) cell of a report.
struct ReportRow {
  Factor factor = Factor::snr;
  double level = 0.0;       // numeric level (vowel: its F1)
  std::string label;        // CSV level: "10", "inf", "-0.1", "a", ...
  std::string annotation;   // axis text, e.g. "a (F1=728)"
  Method method = Method::zzt;
  double mean_sd_db = 0.0;  // NaN when no frame produced an SD
  double determination_rate = 0.0;
  std::size_t n = 0;            // records at this level
  std::size_t sd_failures = 0;  // records without an SD
};

/// Per-level, per-method mean SD and determination rate over the records
/// in the factor's view. Methods that were never run are left out. Throws
/// empty_input when the view holds no record.
std::vector<ReportRow> aggregate(std::span<const ExperimentRecord> records, Factor factor);

/// Rows for one method, in level order.
std::vector<ReportRow> rows_for(std::span<const ReportRow> rows, Method m);

/// `factor,level,method,mean_sd_db,determination_rate,n`
void write_report_csv(std::ostream& out, std::span<const ReportRow> rows);

enum class Metric { mean_sd_db, determination_rate };

/// Line plot of one metric for one factor: a polyline per method.
void write_report_svg(std::ostream& out, std::span<const ReportRow> rows, Metric metric);

/// Long-format record table, one row per (record, method).
void write_records_csv(std::ostream& out, std::span<const ExperimentRecord> records);
std::vector<ExperimentRecord> read_records_csv(std::istream& in);

/// Relative Fg errors of one method (failures excluded) plus failure count.
std::vector<FgError> fg_errors(std::span<const ExperimentRecord> records, Method m);

/// Writes report.csv, <factor>_sd.svg, <factor>_rate.svg and
/// histogram_<method>.csv into dir; returns the paths written. I/O errors
/// are raised as Error(io) naming the file.
std::vector<std::filesystem::path> export_report(std::span<const ExperimentRecord> records,
                                                 const std::filesystem::path& dir);

}  // namespace glotbench
