#include "glotbench/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "glotbench/error.hpp"
#include "glotbench/vowel_synthesis.hpp"

namespace glotbench {

std::string_view to_string(Factor f) noexcept {
  switch (f) {
    case Factor::snr: return "snr";
    case Factor::gci_error: return "gci_error";
    case Factor::f0: return "f0";
    case Factor::vowel: return "vowel";
  }
  return "unknown";
}

Factor parse_factor(std::string_view name) {
  for (Factor f : kAllFactors) {
    if (to_string(f) == name) return f;
  }
  throw Error(ErrorKind::config, "unknown factor '" + std::string(name) + "'");
}

bool in_view(const ExperimentRecord& rec, Factor f) {
  const bool clean = std::isinf(rec.cond.snr_db);
  switch (f) {
    case Factor::snr: return true;
    case Factor::gci_error: return clean;
    case Factor::f0:
    case Factor::vowel: return clean && rec.cond.gci_error_frac == 0.0;
  }
  return false;
}

namespace {

std::string fmt_num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double parse_num(const std::string& s) {
  if (s == "inf" || s == "clean") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan" || s.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw Error(ErrorKind::config, "bad number '" + s + "'");
  return v;
}

double level_of(const ExperimentRecord& rec, Factor f) {
  switch (f) {
    case Factor::snr: return rec.cond.snr_db;
    case Factor::gci_error: return rec.cond.gci_error_frac;
    case Factor::f0: return rec.cond.f0;
    case Factor::vowel: return static_cast<double>(rec.cond.vowel);
  }
  return 0.0;
}

}  // namespace

std::vector<ReportRow> aggregate(std::span<const ExperimentRecord> records, Factor factor) {
  struct Acc {
    double sd_sum = 0.0;
    std::size_t sd_n = 0;
    std::size_t hits = 0;
    std::size_t n = 0;
    bool ran = false;
  };
  // Vowels are keyed by their letter so the rows come out a, e, i, u.
  std::map<double, std::array<Acc, 4>> levels;
  for (const auto& rec : records) {
    if (!in_view(rec, factor)) continue;
    auto& accs = levels[level_of(rec, factor)];
    for (Method m : kAllMethods) {
      const MethodResult& r = rec.result(m);
      Acc& a = accs[static_cast<std::size_t>(m)];
      ++a.n;
      if (r.status == "skipped") continue;
      a.ran = true;
      if (r.sd_db) {
        a.sd_sum += *r.sd_db;
        ++a.sd_n;
      }
      if (const auto e = r.rel_error(rec.fg_ref); e && std::abs(*e) <= 0.10) ++a.hits;
    }
  }
  if (levels.empty()) {
    throw Error(ErrorKind::empty_input,
                "no records in the " + std::string(to_string(factor)) + " view");
  }
  std::vector<ReportRow> rows;
  for (const auto& [level, accs] : levels) {
    for (Method m : kAllMethods) {
      const Acc& a = accs[static_cast<std::size_t>(m)];
      if (!a.ran) continue;
      ReportRow row;
      row.factor = factor;
      row.method = m;
      if (factor == Factor::vowel) {
        const char v = static_cast<char>(level);
        row.level = vowel_f1(v);
        row.label = std::string(1, v);
        row.annotation = row.label + " (F1=" + fmt_num(row.level) + ")";
      } else {
        row.level = level;
        row.label = fmt_num(level);
        row.annotation = row.label;
      }
      row.mean_sd_db = a.sd_n ? a.sd_sum / static_cast<double>(a.sd_n)
                              : std::numeric_limits<double>::quiet_NaN();
      row.determination_rate = static_cast<double>(a.hits) / static_cast<double>(a.n);
      row.n = a.n;
      row.sd_failures = a.n - a.sd_n;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<ReportRow> rows_for(std::span<const ReportRow> rows, Method m) {
  std::vector<ReportRow> out;
  for (const auto& r : rows) {
    if (r.method == m) out.push_back(r);
  }
  return out;
}

void write_report_csv(std::ostream& out, std::span<const ReportRow> rows) {
  out << "factor,level,method,mean_sd_db,determination_rate,n\n";
  for (const auto& r : rows) {
    out << to_string(r.factor) << ',' << r.label << ',' << to_string(r.method) << ','
        << fmt_num(r.mean_sd_db) << ',' << fmt_num(r.determination_rate) << ',' << r.n << '\n';
  }
}

void write_report_svg(std::ostream& out, std::span<const ReportRow> rows, Metric metric) {
  constexpr double width = 640, height = 400;
  constexpr double left = 70, right = 150, top = 40, bottom = 60;
  const double plot_w = width - left - right, plot_h = height - top - bottom;
  static constexpr const char* colours[4] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd"};

  // Categorical x axis: one slot per distinct level, in row order.
  std::vector<std::string> labels;
  std::vector<std::string> annotations;
  for (const auto& r : rows) {
    if (std::find(labels.begin(), labels.end(), r.label) == labels.end()) {
      labels.push_back(r.label);
      annotations.push_back(r.annotation);
    }
  }
  auto value = [metric](const ReportRow& r) {
    return metric == Metric::mean_sd_db ? r.mean_sd_db : r.determination_rate;
  };
  double lo = 0.0, hi = metric == Metric::determination_rate ? 1.0 : 0.0;
  for (const auto& r : rows) {
    if (std::isfinite(value(r))) hi = std::max(hi, value(r));
  }
  if (hi <= lo) hi = lo + 1.0;
  auto x_of = [&](std::size_t i) {
    return labels.size() < 2 ? left + plot_w / 2
                             : left + plot_w * static_cast<double>(i) /
                                          static_cast<double>(labels.size() - 1);
  };
  auto y_of = [&](double v) { return top + plot_h * (1.0 - (v - lo) / (hi - lo)); };

  const std::string factor = rows.empty() ? "" : std::string(to_string(rows.front().factor));
  const char* y_label = metric == Metric::mean_sd_db ? "mean spectral distortion (dB)"
                                                     : "determination rate (+/-10%)";
  char buf[256];
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf,
                "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
                left, top + plot_h, left + plot_w, top + plot_h);
  out << buf;
  std::snprintf(buf, sizeof buf,
                "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n", left,
                top, left, top + plot_h);
  out << buf;
  for (int t = 0; t <= 4; ++t) {
    const double v = lo + (hi - lo) * t / 4.0;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\">%.3g</text>\n", left - 6,
                  y_of(v) + 4, v);
    out << buf;
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">",
                  x_of(i), top + plot_h + 18);
    out << buf << annotations[i] << "</text>\n";
  }
  std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">",
                left + plot_w / 2, height - 15);
  out << buf << factor << "</text>\n";
  std::snprintf(buf, sizeof buf,
                "<text transform=\"translate(18,%.1f) rotate(-90)\" text-anchor=\"middle\">",
                top + plot_h / 2);
  out << buf << y_label << "</text>\n";

  std::size_t legend = 0;
  for (Method m : kAllMethods) {
    const auto mine = rows_for(rows, m);
    if (mine.empty()) continue;
    const char* colour = colours[static_cast<std::size_t>(m)];
    out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\" points=\"";
    bool first = true;
    for (const auto& r : mine) {
      if (!std::isfinite(value(r))) continue;
      const auto slot = static_cast<std::size_t>(
          std::find(labels.begin(), labels.end(), r.label) - labels.begin());
      std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", first ? "" : " ", x_of(slot),
                    y_of(value(r)));
      out << buf;
      first = false;
    }
    out << "\"/>\n";
    const double ly = top + 16.0 * static_cast<double>(legend++);
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"%s\" "
                  "stroke-width=\"2\"/><text x=\"%.1f\" y=\"%.1f\">",
                  left + plot_w + 15, ly, left + plot_w + 35, ly, colour, left + plot_w + 40,
                  ly + 4);
    out << buf << to_string(m) << "</text>\n";
  }
  out << "</svg>\n";
}

void write_records_csv(std::ostream& out, std::span<const ExperimentRecord> records) {
  out << "f0,vowel,snr_db,gci_error_frac,oq,am,qa,n_periods,gci_index,fg_ref,method,status,"
         "sd_db,fg_est\n";
  for (const auto& rec : records) {
    const auto& c = rec.cond;
    const std::string prefix = fmt_num(c.f0) + ',' + c.vowel + ',' + fmt_num(c.snr_db) + ',' +
                               fmt_num(c.gci_error_frac) + ',' + fmt_num(c.shape.oq) + ',' +
                               fmt_num(c.shape.am) + ',' + fmt_num(c.shape.qa) + ',' +
                               std::to_string(c.n_periods) + ',' +
                               std::to_string(rec.gci_index) + ',' + fmt_num(rec.fg_ref) + ',';
    for (Method m : kAllMethods) {
      const auto& r = rec.result(m);
      out << prefix << to_string(m) << ',' << r.status << ','
          << (r.sd_db ? fmt_num(*r.sd_db) : "") << ','
          << (r.fg_est ? fmt_num(*r.fg_est) : "") << '\n';
    }
  }
}

std::vector<ExperimentRecord> read_records_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::config, "records file is empty");
  std::vector<ExperimentRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    if (f.size() != 14) {
      throw Error(ErrorKind::config, "records line " + std::to_string(line_no) +
                                         ": expected 14 fields");
    }
    try {
      CellCondition c;
      c.f0 = parse_num(f[0]);
      c.vowel = f[1].empty() ? '?' : f[1][0];
      c.snr_db = parse_num(f[2]);
      c.gci_error_frac = parse_num(f[3]);
      c.shape = {parse_num(f[4]), parse_num(f[5]), parse_num(f[6])};
      c.n_periods = std::stoul(f[7]);
      const std::size_t gci = std::stoul(f[8]);
      const double fg_ref = parse_num(f[9]);
      const Method m = parse_method(f[10]);
      const bool same = !records.empty() && records.back().gci_index == gci &&
                        !condition_less(records.back().cond, c) &&
                        !condition_less(c, records.back().cond);
      if (!same) {
        ExperimentRecord rec;
        rec.cond = c;
        rec.gci_index = gci;
        rec.fg_ref = fg_ref;
        records.push_back(std::move(rec));
      }
      MethodResult& r = records.back().result(m);
      r.status = f[11];
      if (!f[12].empty()) r.sd_db = parse_num(f[12]);
      if (!f[13].empty()) r.fg_est = parse_num(f[13]);
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::config, "records line " + std::to_string(line_no) + ": bad number");
    }
  }
  return records;
}

std::vector<FgError> fg_errors(std::span<const ExperimentRecord> records, Method m) {
  std::vector<FgError> out;
  for (const auto& rec : records) {
    const auto& r = rec.result(m);
    if (r.status == "skipped") continue;
    out.push_back(r.fg_est ? FgError::from_estimate(*r.fg_est, rec.fg_ref)
                           : FgError::failure(rec.fg_ref));
  }
  return out;
}

std::vector<std::filesystem::path> export_report(std::span<const ExperimentRecord> records,
                                                 const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::io, "cannot create " + dir.string() + ": " + ec.message());

  std::vector<std::filesystem::path> written;
  auto open = [&](const std::filesystem::path& p) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw Error(ErrorKind::io, "cannot write " + p.string());
    written.push_back(p);
    return f;
  };
  auto close = [](std::ofstream& f, const std::filesystem::path& p) {
    f.close();
    if (!f) throw Error(ErrorKind::io, "error writing " + p.string());
  };

  std::vector<ReportRow> all;
  for (Factor factor : kAllFactors) {
    std::vector<ReportRow> rows;
    try {
      rows = aggregate(records, factor);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::empty_input) continue;
      throw;
    }
    all.insert(all.end(), rows.begin(), rows.end());
    for (Metric metric : {Metric::mean_sd_db, Metric::determination_rate}) {
      const auto path = dir / (std::string(to_string(factor)) +
                               (metric == Metric::mean_sd_db ? "_sd.svg" : "_rate.svg"));
      auto f = open(path);
      write_report_svg(f, rows, metric);
      close(f, path);
    }
  }
  if (all.empty()) throw Error(ErrorKind::empty_input, "no records to report");
  {
    const auto path = dir / "report.csv";
    auto f = open(path);
    write_report_csv(f, all);
    close(f, path);
  }
  for (Method m : kAllMethods) {
    const auto errors = fg_errors(records, m);
    if (errors.empty()) continue;
    const auto path = dir / ("histogram_" + std::string(to_string(m)) + ".csv");
    auto f = open(path);
    write_histogram_csv(f, error_histogram(errors));
    close(f, path);
  }
  return written;
}

}  // namespace glotbench
