import math

import numpy as np
import pytest

from nvsinc.exceptions import EmptyWindow, NvsincError, WindowExceedsGrid
from nvsinc.interpolator import (
    MAX_GRID_POINTS, TruncationWindow, convergence_sweep, interpolate, report,
)
from nvsinc.kernel import Kind
from nvsinc.signals import Cosine, SampleGrid, random_trig_poly, sample

OMEGA = 5 * math.pi / 12


def test_window_resolution():
    assert TruncationWindow.centered_at_zero(10).resolve(123.4) == (-10, 10)
    assert TruncationWindow.centered_at_t(10).resolve(123.4) == (113, 133)
    assert TruncationWindow.centered_at_t(10).resolve(123.5) == (114, 134)
    assert TruncationWindow.explicit(-3, 4).resolve(0.0) == (-3, 4)
    assert TruncationWindow.parse("5:9").resolve(0.0) == (5, 9)
    assert TruncationWindow.parse("t", L=3) == TruncationWindow.centered_at_t(3)
    with pytest.raises(EmptyWindow):
        TruncationWindow.explicit(4, 3)
    with pytest.raises(EmptyWindow):
        TruncationWindow.centered_at_zero(0)
    with pytest.raises(NvsincError):
        TruncationWindow.parse("middle")


@pytest.mark.parametrize("kind", list(Kind))
def test_exact_at_samples(cfg, kind):
    sig = random_trig_poly(OMEGA, 10, 3)
    grid = sample(sig, -60, 60)
    w = TruncationWindow.explicit(-60, 60)
    for k in range(-60, 61):
        assert interpolate(cfg, grid, float(k), w, kind) == grid.values[k + 60]


def test_window_exceeds_grid(cfg):
    grid = sample(Cosine(OMEGA), -10, 10)
    with pytest.raises(WindowExceedsGrid):
        interpolate(cfg, grid, 0.5, TruncationWindow.centered_at_t(20))
    with pytest.raises(NvsincError):
        interpolate(None, grid, 0.5, TruncationWindow.centered_at_t(5), Kind.MODIFIED)


def test_too_large_window_rejected(cfg):
    with pytest.raises(WindowExceedsGrid):
        report(cfg, Cosine(OMEGA), 0.5, TruncationWindow.centered_at_zero(MAX_GRID_POINTS))


def test_trig_poly_reconstruction(cfg):
    sig = random_trig_poly(OMEGA, 10, 11)
    errs = []
    for L in (1000, 2000, 4000, 10000):
        rep = report(cfg, sig, 4.5, TruncationWindow.centered_at_t(L))
        errs.append(rep.abs_err_modified)
    assert errs[-1] <= 1e-3
    assert errs[1] <= errs[0] / 2 and errs[2] <= errs[1] / 2


def test_report_consistency(cfg):
    rep = report(cfg, random_trig_poly(OMEGA, 5, 1), 17.3, TruncationWindow.centered_at_t(200))
    assert rep.abs_err_modified == abs(rep.estimate_modified - rep.truth)
    assert rep.abs_err_classical == abs(rep.estimate_classical - rep.truth)
    assert (rep.k_lo, rep.k_hi) == (-183, 217)
    d = rep.to_dict()
    assert d["window"] == {"mode": "t", "L": 200, "k_lo": -183, "k_hi": 217}
    assert d["config"]["n"] == 4


def test_report_at_integer(cfg):
    rep = report(cfg, Cosine(OMEGA, 0.3), 12.0, TruncationWindow.centered_at_t(50))
    assert rep.abs_err_modified == 0.0 and rep.abs_err_classical == 0.0


def test_sinc_sum_reconstruction(cfg):
    js = np.arange(-20, 21)

    def narrow(t):  # band OMEGA, admissible for the modified formula
        x = OMEGA * (np.asarray(t, dtype=float)[..., None] - js)
        return np.sum(np.sinc(x / math.pi), axis=-1)

    def full(t):  # band pi, classical formula only
        return np.sum(np.sinc(np.asarray(t, dtype=float)[..., None] - js), axis=-1)

    L = 10**4
    rng = np.random.default_rng(0)
    for t in rng.uniform(-30, 30, 10):
        w = TruncationWindow.centered_at_t(L)
        lo, hi = w.resolve(t)
        ks = np.arange(lo, hi + 1, dtype=float)
        g_narrow = SampleGrid(lo, hi, narrow(ks))
        g_full = SampleGrid(lo, hi, full(ks))
        assert abs(interpolate(cfg, g_narrow, t, w, Kind.MODIFIED) - narrow(t)) <= 1e-6
        assert abs(interpolate(None, g_full, t, w, Kind.CLASSICAL) - full(t)) <= 1e-6


def test_convergence_sweep(cfg):
    sig = Cosine(OMEGA, 0.0)
    reps = convergence_sweep(cfg, sig, 47830.4, [10**3, 10**4, 10**5], "t")
    mod = [r.abs_err_modified for r in reps]
    assert all(b <= 4 * a for a, b in zip(mod, mod[1:]))
    assert mod[-1] < 1e-9
    single = convergence_sweep(cfg, sig, 4.5, [100])[0]
    assert single == report(cfg, sig, 4.5, TruncationWindow.centered_at_t(100))
    with pytest.raises(EmptyWindow):
        convergence_sweep(cfg, sig, 4.5, [])
    with pytest.raises(NvsincError):
        convergence_sweep(cfg, sig, 4.5, [100, 10])


def test_median_error_drops_with_L(cfg):
    rng = np.random.default_rng(5)
    sig = random_trig_poly(OMEGA, 10, 21)
    ts = rng.uniform(-500, 500, 20)
    med = []
    for L in (100, 1000):
        med.append(np.median([report(cfg, sig, t, TruncationWindow.centered_at_t(L)).abs_err_modified
                              for t in ts]))
    assert med[1] < med[0]


def test_determinism(cfg):
    sig = random_trig_poly(OMEGA, 10, 2)
    a = report(cfg, sig, 123.456, TruncationWindow.centered_at_zero(5000))
    b = report(cfg, sig, 123.456, TruncationWindow.centered_at_zero(5000))
    assert a == b
