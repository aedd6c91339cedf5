import math

import numpy as np
import pytest

import glotbench as gb


def test_lf_pulse_has_one_period():
    p = gb.LfParams(f0=100.0)
    pulse = gb.lf_pulse(p, 8000)
    assert len(pulse) == 80
    assert abs(min(pulse.samples) + 1.0) < 1e-6


def test_synthesize_returns_speech_and_source():
    speech, source = gb.synthesize(gb.LfParams(f0=125.0), "a", n_periods=8)
    assert len(speech) == len(source)
    assert list(speech.gcis) == list(source.gcis)
    assert np.all(np.isfinite(speech.samples))


def test_unknown_vowel_raises_typed_error():
    with pytest.raises(gb.GlotbenchError) as info:
        gb.builtin_vowel("x")
    assert info.value.kind == "unknown_vowel"


def test_zzt_roots_split_by_unit_circle():
    speech, _ = gb.synthesize(gb.LfParams(), "a", n_periods=8)
    frame = gb.extract_frame(speech, 3)
    d = gb.zzt_decompose_frame(frame)
    assert all(abs(z) > 1.0 for z in d.anticausal_roots)
    assert all(abs(z) <= 1.0 + 1e-8 for z in d.causal_roots)
    assert len(d.anticausal_roots) + len(d.causal_roots) == d.n - 1 - d.leading_trim


def test_lpc_recovers_ar2():
    rng = np.random.default_rng(1)
    e = rng.standard_normal(20000)
    x = np.zeros_like(e)
    for n in range(len(e)):
        x[n] = e[n] + 1.2 * (x[n - 1] if n else 0.0) - 0.5 * (x[n - 2] if n > 1 else 0.0)
    a, _ = gb.lpc(x, 2)
    assert a[0] == 1.0
    assert a[1] == pytest.approx(-1.2, abs=0.03)
    assert a[2] == pytest.approx(0.5, abs=0.03)


def test_spectral_distortion_is_zero_on_identity():
    x = np.hanning(64)
    s = gb.magnitude_spectrum_db(x, 8000)
    assert gb.spectral_distortion(s, s) == 0.0


def test_determination_rate_bound():
    assert gb.determination_rate([0.05, -0.05, 0.2, math.nan]) == 0.5


def test_grid_parse_and_run():
    spec = gb.GridSpec.parse("f0 = 100\nvowels = a\nsnr = inf\ngci_error = 0\nlf_shapes = 0.6/0.67/0.05\n")
    assert spec.cell_count() == 1
    csv, failed = gb.run_grid_csv(spec, seed=3, jobs=1, methods=["zzt", "acdr_speech"])
    assert failed == 0
    lines = csv.strip().splitlines()
    assert lines[0].startswith("f0,vowel,snr_db")
    # One row per analysed period and method; unselected methods are skipped.
    rows = [line.split(",") for line in lines[1:]]
    assert {r[10] for r in rows} == set(gb.METHODS)
    assert all(r[11] == "skipped" for r in rows if r[10] in ("iaif", "acdr_iaif"))
    assert all(r[11] == "ok" for r in rows if r[10] in ("zzt", "acdr_speech"))
    report = gb.report_csv(csv, "f0")
    assert report.splitlines()[0] == "factor,level,method,mean_sd_db,determination_rate,n"


def test_bad_grid_raises():
    with pytest.raises(gb.GlotbenchError):
        gb.GridSpec.parse("f0 = -5\n")
