#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "glotbench/acdr.hpp"
#include "glotbench/error.hpp"
#include "glotbench/glottal_model.hpp"
#include "glotbench/grid_config.hpp"
#include "glotbench/harness.hpp"
#include "glotbench/iaif.hpp"
#include "glotbench/metrics.hpp"
#include "glotbench/polynomial.hpp"
#include "glotbench/report.hpp"
#include "glotbench/spectral.hpp"
#include "glotbench/vowel_synthesis.hpp"
#include "glotbench/zzt.hpp"

namespace py = pybind11;
using namespace glotbench;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<double> to_vector(const Array& a) {
  if (a.ndim() != 1) throw py::value_error("expected a 1-D array");
  return {a.data(), a.data() + a.size()};
}

Array to_array(const std::vector<double>& v) {
  Array out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Glottal source estimation benchmark on synthetic speech";

  static py::exception<Error> error_type(m, "GlotbenchError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::handle(error_type.ptr())(e.what());
      exc.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  py::class_<LfParams>(m, "LfParams")
      .def(py::init([](double f0, double ee, double oq, double am, double qa) {
             return LfParams{f0, ee, oq, am, qa};
           }),
           py::arg("f0") = 100.0, py::arg("ee") = 1.0, py::arg("oq") = 0.6,
           py::arg("am") = 0.67, py::arg("qa") = 0.05)
      .def_readwrite("f0", &LfParams::f0)
      .def_readwrite("ee", &LfParams::ee)
      .def_readwrite("oq", &LfParams::oq)
      .def_readwrite("am", &LfParams::am)
      .def_readwrite("qa", &LfParams::qa)
      .def("validate", &LfParams::validate)
      .def("__repr__", [](const LfParams& p) {
        std::ostringstream s;
        s << "LfParams(f0=" << p.f0 << ", ee=" << p.ee << ", oq=" << p.oq << ", am=" << p.am
          << ", qa=" << p.qa << ")";
        return s.str();
      });

  py::class_<SampledSignal>(m, "SampledSignal")
      .def(py::init<>())
      .def_property(
          "samples", [](const SampledSignal& s) { return to_array(s.samples); },
          [](SampledSignal& s, const Array& a) { s.samples = to_vector(a); })
      .def_readwrite("fs", &SampledSignal::fs)
      .def_readwrite("gcis", &SampledSignal::gcis)
      .def("__len__", &SampledSignal::size);

  m.def("lf_pulse", &lf_pulse, py::arg("params"), py::arg("fs") = 8000);
  m.def("lf_pulse_train", &lf_pulse_train, py::arg("params"), py::arg("n_periods"),
        py::arg("fs") = 8000);
  m.def("reference_glottal_formant", &reference_glottal_formant, py::arg("params"),
        py::arg("fs") = 8000);

  py::class_<VowelFilter>(m, "VowelFilter")
      .def_readonly("label", &VowelFilter::label)
      .def_readonly("ar_coeffs", &VowelFilter::ar_coeffs)
      .def_readonly("f1_hz", &VowelFilter::f1_hz);
  m.def("builtin_vowel", &builtin_vowel, py::arg("label"), py::arg("fs") = 8000);

  m.def(
      "synthesize",
      [](const LfParams& lf, char vowel, double snr_db, std::uint64_t seed,
         std::size_t n_periods, int fs) {
        SynthesisCondition c;
        c.lf = lf;
        c.vowel = vowel;
        c.snr_db = snr_db;
        c.seed = seed;
        c.n_periods = n_periods;
        c.fs = fs;
        const Utterance u = synthesize_utterance(c);
        return py::make_tuple(u.speech, u.source);
      },
      py::arg("lf") = LfParams{}, py::arg("vowel") = 'a', py::arg("snr_db") = kClean,
      py::arg("seed") = 0, py::arg("n_periods") = 10, py::arg("fs") = 8000,
      "Returns (speech, source); both carry the true GCIs.");
  m.def("add_noise", &add_noise, py::arg("x"), py::arg("snr_db"), py::arg("seed"));
  m.def(
      "perturb_gcis",
      [](const std::vector<std::size_t>& g, double frac, std::size_t t0, std::size_t len) {
        return perturb_gcis(g, frac, t0, len);
      },
      py::arg("gcis"), py::arg("gci_error_frac"), py::arg("t0_samples"),
      py::arg("signal_length"));

  py::class_<MagnitudeSpectrum>(m, "MagnitudeSpectrum")
      .def_property_readonly("values_db",
                             [](const MagnitudeSpectrum& s) { return to_array(s.values_db); })
      .def_readonly("fs", &MagnitudeSpectrum::fs);
  m.def(
      "magnitude_spectrum_db",
      [](const Array& x, int fs) { return magnitude_spectrum_db(to_vector(x), fs); },
      py::arg("frame"), py::arg("fs") = 8000);
  m.def("normalize_mean_db", &normalize_mean_db, py::arg("spectrum"), py::arg("lo_hz") = 20,
        py::arg("hi_hz") = 4000);
  m.def(
      "lpc",
      [](const Array& x, std::size_t order) {
        const auto model = lpc(to_vector(x), order);
        return py::make_tuple(to_array(model.coeffs), model.gain);
      },
      py::arg("frame"), py::arg("order"), "Returns (A(z) coefficients, gain).");
  m.def(
      "highpass",
      [](const Array& x, double cutoff, int fs) {
        return to_array(highpass(to_vector(x), cutoff, fs));
      },
      py::arg("x"), py::arg("cutoff_hz") = 40.0, py::arg("fs") = 8000);

  m.def(
      "polynomial_roots", [](const Array& c) { return polynomial_roots(to_vector(c)); },
      py::arg("coeffs"));

  py::class_<Frame>(m, "Frame")
      .def_property_readonly("samples", [](const Frame& f) { return to_array(f.samples); })
      .def_readonly("gci_offset", &Frame::gci_offset)
      .def_readonly("fs", &Frame::fs);
  m.def("extract_frame", py::overload_cast<const SampledSignal&, std::size_t>(&extract_frame),
        py::arg("signal"), py::arg("k"));

  py::class_<ZztDecomposition>(m, "ZztDecomposition")
      .def_readonly("gain", &ZztDecomposition::gain)
      .def_readonly("anticausal_roots", &ZztDecomposition::anticausal_roots)
      .def_readonly("causal_roots", &ZztDecomposition::causal_roots)
      .def_readonly("n", &ZztDecomposition::n)
      .def_readonly("leading_trim", &ZztDecomposition::leading_trim);
  m.def(
      "zzt_decompose",
      [](const Array& frame, bool blackman) {
        return zzt_decompose(to_vector(frame),
                             blackman ? WindowSpec::blackman() : WindowSpec::rectangular());
      },
      py::arg("frame"), py::arg("blackman") = true);
  m.def(
      "zzt_decompose_frame",
      [](const Frame& f) { return zzt_decompose(f); }, py::arg("frame"),
      "Blackman window centred on the frame's GCI.");
  m.def(
      "anticausal_spectrum",
      [](const ZztDecomposition& d, int fs) { return anticausal_spectrum(d, fs).spectrum; },
      py::arg("decomposition"), py::arg("fs") = 8000);
  m.def(
      "causal_spectrum",
      [](const ZztDecomposition& d, int fs) { return causal_spectrum(d, fs).spectrum; },
      py::arg("decomposition"), py::arg("fs") = 8000);

  py::class_<IaifConfig>(m, "IaifConfig")
      .def(py::init<>())
      .def_readwrite("vt_order", &IaifConfig::vt_order)
      .def_readwrite("glottal_order_pass2", &IaifConfig::glottal_order_pass2)
      .def_readwrite("rho", &IaifConfig::rho)
      .def_readwrite("hp_cutoff_hz", &IaifConfig::hp_cutoff_hz)
      .def_readwrite("use_dap", &IaifConfig::use_dap);
  m.def(
      "iaif",
      [](const Array& speech, int fs, const IaifConfig& cfg, std::optional<double> f0) {
        return to_array(iaif(to_vector(speech), fs, cfg, f0));
      },
      py::arg("speech"), py::arg("fs") = 8000, py::arg("config") = IaifConfig{},
      py::arg("f0_hint") = py::none());
  m.def(
      "acdr_estimate",
      [](const Array& frame, std::size_t gci_offset, double alpha) {
        AcdrOptions opts;
        opts.window = WindowSpec::hanning_poisson(alpha);
        return to_array(acdr_estimate(to_vector(frame), gci_offset, opts));
      },
      py::arg("frame"), py::arg("gci_offset"), py::arg("alpha") = 2.0);

  m.def("spectral_distortion", &spectral_distortion, py::arg("est"), py::arg("ref"));
  m.def("detect_glottal_formant", &detect_glottal_formant, py::arg("spectrum"), py::arg("f0"));
  m.def(
      "determination_rate",
      [](const std::vector<double>& e, double bound) { return determination_rate(e, bound); },
      py::arg("rel_errors"), py::arg("bound") = 0.10);
  py::class_<ErrorHistogram>(m, "ErrorHistogram")
      .def_readonly("counts", &ErrorHistogram::counts)
      .def_readonly("underflow", &ErrorHistogram::underflow)
      .def_readonly("overflow", &ErrorHistogram::overflow)
      .def_readonly("failures", &ErrorHistogram::failures)
      .def("total", &ErrorHistogram::total)
      .def("bin_center", &ErrorHistogram::bin_center);
  m.def(
      "error_histogram",
      [](const std::vector<double>& e) { return error_histogram(std::span<const double>(e)); },
      py::arg("rel_errors"));

  py::class_<GridSpec>(m, "GridSpec")
      .def(py::init<>())
      .def_static("desk", &GridSpec::desk)
      .def_static("parse", &parse_grid_text, py::arg("text"))
      .def_readwrite("f0_values", &GridSpec::f0_values)
      .def_readwrite("vowels", &GridSpec::vowels)
      .def_readwrite("snr_values", &GridSpec::snr_values)
      .def_readwrite("gci_error_fracs", &GridSpec::gci_error_fracs)
      .def_property(
          "lf_shapes",
          [](const GridSpec& g) {
            py::list out;
            for (const auto& s : g.lf_shapes) out.append(py::make_tuple(s.oq, s.am, s.qa));
            return out;
          },
          [](GridSpec& g, const std::vector<std::tuple<double, double, double>>& shapes) {
            g.lf_shapes.clear();
            for (const auto& [oq, am, qa] : shapes) g.lf_shapes.push_back({oq, am, qa});
          })
      .def_readwrite("n_periods", &GridSpec::n_periods)
      .def("cell_count", &GridSpec::cell_count)
      .def("validate", &GridSpec::validate)
      .def("__str__", &format_grid_config);

  m.def(
      "run_grid_csv",
      [](const GridSpec& spec, std::uint64_t seed, unsigned jobs,
         const std::vector<std::string>& methods) {
        RunOptions opts;
        opts.global_seed = seed;
        if (!methods.empty()) {
          opts.methods.clear();
          for (const auto& name : methods) opts.methods.push_back(parse_method(name));
        }
        GridResult result;
        {
          py::gil_scoped_release release;
          result = run_grid(spec, opts, jobs);
        }
        std::ostringstream out;
        write_records_csv(out, result.records);
        return py::make_tuple(out.str(), result.failed_cells);
      },
      py::arg("spec"), py::arg("seed") = 0, py::arg("jobs") = 1,
      py::arg("methods") = std::vector<std::string>{},
      "Runs the grid; returns (records CSV text, failed cell count).");
  m.def(
      "report_csv",
      [](const std::string& records_csv, const std::string& factor) {
        std::istringstream in(records_csv);
        const auto records = read_records_csv(in);
        std::ostringstream out;
        write_report_csv(out, aggregate(records, parse_factor(factor)));
        return out.str();
      },
      py::arg("records_csv"), py::arg("factor"));
}
