"""Truncated interpolation sums and reconstruction-error reports."""
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .exceptions import EmptyWindow, NvsincError, WindowExceedsGrid
from .kernel import Kind, classical_coeffs, modified_coeffs
from .params import SamplingConfig, _check_time
from .signals import sample

MAX_GRID_POINTS = 10**7


def _round_half_up(t):
    return math.floor(t + 0.5)


@dataclass(frozen=True)
class TruncationWindow:
    """Index set replacing the full integer line in the interpolation sum.

    ``mode`` is one of ``"zero"`` (``[-L, L]``), ``"t"``
    (``[round(t)-L, round(t)+L]``) or ``"explicit"`` (``[k_lo, k_hi]``).
    """

    mode: str
    L: Optional[int] = None
    k_lo: Optional[int] = None
    k_hi: Optional[int] = None

    def __post_init__(self):
        if self.mode in ("zero", "t"):
            if self.L is None or self.L < 1:
                raise EmptyWindow(f"window mode {self.mode!r} needs L >= 1, got {self.L!r}")
        elif self.mode == "explicit":
            if self.k_lo is None or self.k_hi is None or self.k_lo > self.k_hi:
                raise EmptyWindow(f"explicit window [{self.k_lo}, {self.k_hi}] is empty")
        else:
            raise NvsincError(f"unknown window mode {self.mode!r}")

    @classmethod
    def centered_at_zero(cls, L):
        return cls("zero", L=int(L))

    @classmethod
    def centered_at_t(cls, L):
        return cls("t", L=int(L))

    @classmethod
    def explicit(cls, k_lo, k_hi):
        return cls("explicit", k_lo=int(k_lo), k_hi=int(k_hi))

    @classmethod
    def parse(cls, text, L=None):
        """``zero``, ``t`` (both need ``L``) or ``lo:hi``."""
        text = text.strip()
        if text in ("zero", "t"):
            return cls(text, L=None if L is None else int(L))
        lo, sep, hi = text.partition(":")
        if not sep:
            raise NvsincError(f"bad window {text!r}; expected zero, t or lo:hi")
        return cls.explicit(int(lo), int(hi))

    def resolve(self, t):
        if self.mode == "zero":
            return -self.L, self.L
        if self.mode == "t":
            c = _round_half_up(_check_time(t))
            return c - self.L, c + self.L
        return self.k_lo, self.k_hi

    def label(self):
        if self.mode == "explicit":
            return f"{self.k_lo}:{self.k_hi}"
        return self.mode


def _weighted_sum(coeffs, samples):
    # fsum is exactly rounded, so the result does not depend on term order
    prod = coeffs * samples
    if np.iscomplexobj(prod):
        return complex(math.fsum(prod.real), math.fsum(prod.imag))
    return math.fsum(prod)


def interpolate(config, grid, t, window, kind=Kind.MODIFIED):
    """Evaluate the truncated series ``sum_k c_k(t) x(k)`` over ``window``.

    Parameters
    ----------
    config : SamplingConfig or None
        Needed for the modified kind only.
    grid : SampleGrid
        Must cover the resolved window.
    t : float
    window : TruncationWindow
    kind : Kind or str
        ``"modified"`` or ``"classical"``.
    """
    t = _check_time(t)
    kind = Kind(kind)
    k_lo, k_hi = window.resolve(t)
    if k_lo < grid.k_lo or k_hi > grid.k_hi:
        raise WindowExceedsGrid(
            f"window [{k_lo}, {k_hi}] is not inside the sample grid [{grid.k_lo}, {grid.k_hi}]")
    ks = np.arange(k_lo, k_hi + 1, dtype=np.int64)
    if kind is Kind.MODIFIED:
        if not isinstance(config, SamplingConfig):
            raise NvsincError("the modified kernel needs a SamplingConfig")
        c = modified_coeffs(config, t, ks)
    else:
        c = classical_coeffs(t, ks)
    return _weighted_sum(c, grid.window(k_lo, k_hi))


@dataclass(frozen=True)
class ErrorReport:
    t: float
    truth: complex
    estimate_modified: complex
    estimate_classical: complex
    abs_err_modified: float
    abs_err_classical: float
    window: TruncationWindow
    k_lo: int
    k_hi: int
    config: SamplingConfig

    def to_dict(self):
        def num(z):
            if isinstance(z, complex):
                return {"re": z.real, "im": z.imag}
            return z

        return {
            "t": self.t,
            "truth": num(self.truth),
            "estimate_modified": num(self.estimate_modified),
            "estimate_classical": num(self.estimate_classical),
            "abs_err_modified": self.abs_err_modified,
            "abs_err_classical": self.abs_err_classical,
            "window": {"mode": self.window.mode, "L": self.window.L, "k_lo": self.k_lo, "k_hi": self.k_hi},
            "config": self.config.to_dict(),
        }


def _check_grid_size(k_lo, k_hi):
    if k_hi - k_lo + 1 > MAX_GRID_POINTS:
        raise WindowExceedsGrid(
            f"window [{k_lo}, {k_hi}] needs more than {MAX_GRID_POINTS} samples; use a smaller L")


def report(config, signal, t, window):
    """Both estimates at ``t`` from one grid sampled over the resolved window."""
    t = _check_time(t)
    k_lo, k_hi = window.resolve(t)
    _check_grid_size(k_lo, k_hi)
    grid = sample(signal, k_lo, k_hi)
    truth = signal(t)
    est_mod = interpolate(config, grid, t, window, Kind.MODIFIED)
    est_cls = interpolate(config, grid, t, window, Kind.CLASSICAL)
    return ErrorReport(
        t=t,
        truth=truth,
        estimate_modified=est_mod,
        estimate_classical=est_cls,
        abs_err_modified=abs(est_mod - truth),
        abs_err_classical=abs(est_cls - truth),
        window=window,
        k_lo=k_lo,
        k_hi=k_hi,
        config=config,
    )


def convergence_sweep(config, signal, t, L_values, mode="t"):
    """One :func:`report` per truncation half-width in ``L_values``."""
    L_values = [int(L) for L in L_values]
    if not L_values:
        raise EmptyWindow("L_values is empty")
    if any(b <= a for a, b in zip(L_values, L_values[1:])):
        raise NvsincError(f"L_values must be strictly ascending, got {L_values}")
    return [report(config, signal, t, TruncationWindow(mode, L=L)) for L in L_values]
