"""Acceptance criteria, one test per criterion.

Each test carries a ``criterion`` marker; conftest prints a PASS/FAIL line
per criterion at the end of the run.
"""
import itertools
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from gdm.carriers import CarrierSet, correlation_matrix
from gdm.cli import main
from gdm.errors import InvalidSpectrum
from gdm.ffft import TransformPlan, ffft
from gdm.finite_field import FieldParams, GaloisField, element_order, format_poly, minimal_polynomial
from gdm.modem import ChannelModel, FrameModulation, ser_curve, snr_grid
from gdm.mux import (
    CompressedSpectrum,
    GdmConfig,
    bandwidth_requirements,
    compactness_factor,
    compress,
    compress_codes,
    count_irreducible,
    cyclotomic_cosets,
    decompress,
    decompress_codes,
    demultiplex,
    multiplex,
)
from gdm.simulation import LinkConfig, monte_carlo_ser

from conftest import REF_FRAME, REF_SPECTRUM, SHORT_FRAME, SHORT_SPECTRUM, as_powers
from test_finite_field import GF16_ROWS
from test_mux import COSETS_N15

GF16 = FieldParams.from_bits("10011")


@pytest.mark.criterion("AC1", "GF(16) table rows reproduced")
def test_ac1_field_table():
    start = time.perf_counter()
    field = GaloisField(GF16)
    for i, (vector, order, minpoly) in GF16_ROWS.items():
        e = field.power(i)
        assert e.vector == vector
        assert element_order(e) == order
        assert format_poly(minimal_polynomial(e)) == minpoly
    assert len({field.power(i).code for i in range(15)}) == 15
    assert time.perf_counter() - start < 1.0


@pytest.mark.criterion("AC2", "transform golden vectors")
def test_ac2_transform():
    field = GaloisField(GF16)
    assert as_powers(ffft(TransformPlan(field, 15), REF_FRAME)) == REF_SPECTRUM
    short = TransformPlan(field, 5, field.power(3))
    assert as_powers(ffft(short, SHORT_FRAME)) == SHORT_SPECTRUM


@pytest.mark.criterion("AC3", "compression golden vectors and compactness")
def test_ac3_compression():
    cfg15, cfg5 = GdmConfig(GF16, 15), GdmConfig(GF16, 5)
    f = cfg15.field
    c15 = compress(multiplex(cfg15, REF_FRAME), cfg15.structure)
    c5 = compress(multiplex(cfg5, SHORT_FRAME), cfg5.structure)
    assert as_powers(c15.leader_values) == (0, None, 10, 5, 10)
    assert as_powers(c5.leader_values) == (0, 7)
    given15 = CompressedSpectrum(cfg15.structure, [f.one, f.zero, f.power(10), f.power(5), f.power(10)])
    given5 = CompressedSpectrum(cfg5.structure, [f.one, f.power(7)])
    assert as_powers(decompress(given15)) == REF_SPECTRUM
    assert as_powers(decompress(given5)) == SHORT_SPECTRUM
    assert compactness_factor(cfg15.structure) == 3
    assert compactness_factor(cfg5.structure) == Fraction(5, 2)


@pytest.mark.criterion("AC4", "cyclotomic cosets and class count")
def test_ac4_cosets():
    field = GaloisField(GF16)
    s = cyclotomic_cosets(15, 2)
    assert s.cosets == tuple(COSETS_N15)
    assert s.leaders == (0, 1, 3, 5, 7)
    for coset, poly in COSETS_N15.items():
        assert format_poly(minimal_polynomial(field.power(coset[0]))) == poly
    census = sum(count_irreducible(k, 2) for k in range(1, 5) if 4 % k == 0) - 1
    assert census == 5 == s.v


@pytest.mark.criterion("AC5", "carrier correlation is diagonal")
def test_ac5_orthogonality():
    start = time.perf_counter()
    field = GaloisField(GF16)
    for n in (15, 5):
        mat = correlation_matrix(CarrierSet(TransformPlan(field, n)))
        diag = mat[0][0]
        assert not diag.is_zero
        for i, t in itertools.product(range(n), repeat=2):
            assert mat[i][t] == (diag if i == t else field.zero)
    assert time.perf_counter() - start < 1.0


@pytest.mark.criterion("AC6", "mux/compress/decompress/demux identity")
def test_ac6_identity():
    start = time.perf_counter()
    cfg5 = GdmConfig(GF16, 5)
    for frame in itertools.product((0, 1), repeat=5):
        V = multiplex(cfg5, frame)
        assert decompress(compress(V, cfg5.structure)) == V
        assert tuple(demultiplex(cfg5, decompress(compress(V, cfg5.structure)))) == frame

    cfg15 = GdmConfig(GF16, 15)
    frames = np.random.default_rng(2024).integers(0, 2, size=(10_000, 15))
    spectra = cfg15.plan.forward_codes(frames)
    restored, ok = decompress_codes(compress_codes(spectra, cfg15.structure), cfg15.structure, cfg15.field)
    assert ok.all()
    assert np.array_equal(restored, spectra)
    assert np.array_equal(cfg15.plan.inverse_codes(restored), frames)
    # the element-level path on a sample of the same frames
    for frame in frames[:500].tolist():
        V = multiplex(cfg15, frame)
        assert demultiplex(cfg15, decompress(compress(V, cfg15.structure))) == frame
    assert time.perf_counter() - start < 10.0


@pytest.mark.criterion("AC7", "conjugacy of base-field spectra")
def test_ac7_conjugacy():
    cfg = GdmConfig(GF16, 15)
    f = cfg.field
    frames = np.random.default_rng(7).integers(0, 2, size=(10_000, 15))
    spectra = cfg.plan.forward_codes(frames)
    k = np.arange(15)
    assert np.array_equal(f.pow_arrays(spectra, 2), spectra[:, (2 * k) % 15])
    bad = [f.zero] * 15
    bad[1] = f.alpha  # V_2 would have to equal alpha^2
    with pytest.raises(InvalidSpectrum):
        compress(bad, cfg.structure)


@pytest.mark.criterion("AC8", "modulation symbols and bandwidth per frame")
def test_ac8_frame_accounting():
    cfg = GdmConfig(GF16, 15)
    expected = {"bpsk": (60, 20), "qpsk": (30, 10), "16qam": (15, 5)}
    for kind, (full, comp) in expected.items():
        fm = FrameModulation(GF16, kind)
        assert fm.symbols_per_frame(15, compressed=False) == full
        assert fm.symbols_per_frame(15, compressed=True) == comp
        assert fm.bandwidth(15, compressed=True) == comp
    assert bandwidth_requirements(cfg, compressed=True) == 5


@pytest.mark.criterion("AC9a", "analytical frame error follows from symbol error")
def test_ac9a_frame_error_relation():
    grid = snr_grid("0:20:0.5")
    for kind in ("bpsk", "qpsk", "8psk", "16qam"):
        for exponent in (15, 5, 2):
            curve = ser_curve(kind, exponent, grid)
            for _, pm, pe in curve.points:
                exact = 1 - (1 - Fraction(pm)) ** exponent
                assert pe == pytest.approx(float(exact), rel=1e-12, abs=1e-300)


@pytest.mark.criterion("AC9b", "analytical curves monotone in SNR and exponent")
def test_ac9b_monotone():
    grid = snr_grid("0:20:0.5")
    for kind in ("bpsk", "qpsk", "8psk", "16qam"):
        curves = [ser_curve(kind, e, grid) for e in (2, 5, 15)]
        for c in curves:
            assert np.all(np.diff(c.p_m) < 0)
            assert np.all(np.diff(c.p_e) < 0)
        for lo, hi in zip(curves, curves[1:]):
            assert np.all(hi.p_e > lo.p_e)


@pytest.mark.criterion("AC9c", "Monte Carlo chain within 3 sigma of analytical")
def test_ac9c_monte_carlo():
    start = time.perf_counter()
    cfg = GdmConfig(GF16, 15)
    report = []
    for kind, compressed, db in itertools.product(("bpsk", "qpsk", "16qam"), (False, True), (4.0, 8.0, 12.0)):
        link = LinkConfig(cfg, kind, compressed)
        frames = math.ceil(100_000 / link.symbols_per_frame)
        r = monte_carlo_ser(link, frames, ChannelModel(db, rng_seed=9), workers=4)
        assert r.n_symbols >= 100_000
        pm, pe = link.predicted(db)
        z_m = (r.p_m - pm) / math.sqrt(pm * (1 - pm) / r.n_symbols)
        z_e = (r.p_e - pe) / math.sqrt(pe * (1 - pe) / r.n_frames)
        report.append((kind, compressed, db, z_m, z_e))
    bad = [row for row in report if abs(row[3]) > 3 or abs(row[4]) > 3]
    assert not bad, bad
    assert time.perf_counter() - start < 120.0


@pytest.mark.criterion("AC10", "ser-mc output identical for any worker count")
def test_ac10_determinism(tmp_path, capsys):
    outputs = []
    for workers in (1, 1, 3, 8):
        out = tmp_path / f"w{workers}_{len(outputs)}"
        code = main(["ser-mc", "--mod", "bpsk,16qam", "--compressed", "--snr", "2,6,10",
                     "--frames", "5000", "--seed", "42", "--workers", str(workers), "--out", str(out)])
        assert code == 0
        outputs.append({p.name: p.read_bytes() for p in sorted(out.iterdir())})
    capsys.readouterr()
    assert len(outputs[0]) == 2
    assert all(o == outputs[0] for o in outputs[1:])
