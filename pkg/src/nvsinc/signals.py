"""Test signals with accurate evaluation at large times, and integer-grid
sampling.

Three families are provided:

* :class:`TrigPoly` -- finite sum ``sum_j amp_j * exp(i*(freq_j*t + phase_j))``
* :class:`KptSinc`  -- ``A*[sinc(M*pi*t) + sinc(M*pi*(t-1)/2)]`` (variant 1)
  or ``A*[sinc(M*pi*t) + sinc(M*pi*(t-1))/2]`` (variant 2)
* :class:`Cosine`   -- ``cos(omega*t - shift)`` ("literal") or
  ``cos(omega*(t - shift))`` ("delayed")

``sinc`` is the unnormalised ``sin(x)/x``.  All phases are reduced with
error-free transformations, so ``cos(omega*k)`` stays accurate for ``k``
around ``1e5`` and beyond.
"""
import math
import re
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from ._numerics import phase, sinpi_dd, two_prod, two_sum
from .exceptions import BandEdgeOutOfRange, EmptyWindow, NonFiniteTime, NvsincError

__all__ = [
    "Cosine", "KptSinc", "SampleGrid", "Signal", "TrigPoly",
    "eval_signal", "parse_number", "parse_signal", "random_trig_poly", "sample",
]


def _as_times(t):
    t = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(t)):
        raise NonFiniteTime("signal evaluated at a non-finite time")
    return t


class Signal:
    """Base class: subclasses implement ``evaluate`` on arrays of times."""

    band_limit: float
    is_real: bool = True

    def evaluate(self, t):
        raise NotImplementedError

    def __call__(self, t):
        out = self.evaluate(_as_times(t))
        if out.ndim == 0:
            return complex(out) if np.iscomplexobj(out) else float(out)
        return out

    def to_spec(self):
        raise NotImplementedError


@dataclass(frozen=True)
class TrigPoly(Signal):
    freqs: Tuple[float, ...]
    amps: Tuple[complex, ...]
    phases: Tuple[float, ...]
    band_limit: float
    is_real = False
    # set when built by random_trig_poly so the spec string round-trips
    origin: Tuple = field(default=None, compare=False)

    def __post_init__(self):
        if not len(self.freqs) == len(self.amps) == len(self.phases):
            raise ValueError("freqs, amps and phases must have equal length")
        if any(abs(f) > self.band_limit for f in self.freqs):
            raise BandEdgeOutOfRange("a TrigPoly frequency exceeds its band limit")

    def evaluate(self, t):
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape, dtype=complex)
        for f, a, p in zip(self.freqs, self.amps, self.phases):
            out = out + a * np.exp(1j * phase(f, t, -p))
        return out

    def to_spec(self):
        if self.origin is None:
            raise NvsincError("only seeded TrigPoly signals have a spec string")
        band, count, seed = self.origin
        return f"trig:band={band!r},count={count},seed={seed}"


def _sinc_pi(hi, lo):
    """``sin(pi*x)/(pi*x)`` for ``x = hi + lo``, 1 at ``x == 0``."""
    out = np.ones(np.shape(hi))
    nz = hi != 0
    out[nz] = sinpi_dd(hi[nz], lo[nz]) / (math.pi * hi[nz])
    return out


@dataclass(frozen=True)
class KptSinc(Signal):
    M: float
    A: float
    variant: int = 1

    def __post_init__(self):
        if not (self.M > 0 and self.A > 0):
            raise ValueError("KptSinc needs M > 0 and A > 0")
        if self.variant not in (1, 2):
            raise ValueError("KptSinc variant must be 1 or 2")

    @property
    def band_limit(self):
        return self.M * math.pi

    def evaluate(self, t):
        t = np.asarray(t, dtype=float)
        x1, e1 = two_prod(self.M, t)
        first = _sinc_pi(np.atleast_1d(x1), np.atleast_1d(e1))
        d, de = two_sum(t, -1.0)
        scale = self.M / 2 if self.variant == 1 else self.M
        x2, e2 = two_prod(scale, d)
        second = _sinc_pi(np.atleast_1d(x2), np.atleast_1d(e2 + scale * de))
        if self.variant == 2:
            second = second / 2
        return (self.A * (first + second)).reshape(t.shape)

    def to_spec(self):
        return f"kpt:M={self.M!r},A={self.A!r},variant={self.variant}"


@dataclass(frozen=True)
class Cosine(Signal):
    omega: float
    shift: float = 0.0
    variant: str = "literal"

    def __post_init__(self):
        if self.variant not in ("literal", "delayed"):
            raise ValueError("Cosine variant must be 'literal' or 'delayed'")

    @property
    def band_limit(self):
        return abs(self.omega)

    def evaluate(self, t):
        t = np.asarray(t, dtype=float)
        if self.variant == "literal":
            return np.cos(phase(self.omega, t, self.shift))
        d, de = two_sum(t, -self.shift)
        return np.cos(phase(self.omega, d, 0.0, de))

    def to_spec(self):
        return f"cosine:omega={self.omega!r},shift={self.shift!r},variant={self.variant}"


def eval_signal(signal, t):
    """Evaluate ``signal`` at scalar or array ``t``."""
    return signal(t)


@dataclass(frozen=True)
class SampleGrid:
    """Samples ``x(k)`` for the contiguous integers ``k_lo..k_hi``."""

    k_lo: int
    k_hi: int
    values: np.ndarray

    def __post_init__(self):
        if self.k_hi < self.k_lo:
            raise EmptyWindow(f"empty grid [{self.k_lo}, {self.k_hi}]")
        if len(self.values) != self.k_hi - self.k_lo + 1:
            raise ValueError("grid length does not match its index range")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("grid contains non-finite samples")

    @property
    def indices(self):
        return np.arange(self.k_lo, self.k_hi + 1)

    def window(self, k_lo, k_hi):
        return self.values[k_lo - self.k_lo:k_hi - self.k_lo + 1]


def sample(signal, k_lo, k_hi):
    k_lo, k_hi = int(k_lo), int(k_hi)
    if k_lo > k_hi:
        raise EmptyWindow(f"empty window [{k_lo}, {k_hi}]")
    ks = np.arange(k_lo, k_hi + 1, dtype=float)
    return SampleGrid(k_lo, k_hi, signal.evaluate(ks))


def random_trig_poly(band, count, seed):
    """Seeded ``TrigPoly`` with frequencies uniform in ``[-band, band]``,
    amplitudes uniform in ``[0.5, 1.5]`` and phases uniform in ``[0, 2*pi)``.
    """
    band = float(band)
    if not 0.0 < band < math.pi:
        raise BandEdgeOutOfRange(f"band={band!r} must lie in (0, pi)")
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.default_rng(seed)
    freqs = rng.uniform(-band, band, count)
    amps = rng.uniform(0.5, 1.5, count)
    phases = rng.uniform(0.0, 2 * math.pi, count)
    return TrigPoly(
        tuple(float(f) for f in freqs),
        tuple(complex(a) for a in amps),
        tuple(float(p) for p in phases),
        band,
        origin=(band, int(count), int(seed)),
    )


_SYMBOLIC = re.compile(r"^(?P<sign>-)?(?:(?P<mul>[^*/]+)\*)?(?P<sym>pi|L)(?:/(?P<div>[^*/]+))?$")


def parse_number(text, L=None):
    """Parse a float, optionally written as ``[a*]pi[/b]`` or ``[a*]L[/b]``."""
    text = str(text).strip()
    match = _SYMBOLIC.match(text)
    if not match:
        return float(text)
    if match["sym"] == "L":
        if L is None:
            raise NvsincError(f"value {text!r} refers to L but no L is bound")
        value = float(L)
    else:
        value = math.pi
    if match["mul"]:
        value *= float(match["mul"])
    if match["div"]:
        value /= float(match["div"])
    return -value if match["sign"] else value


def parse_signal(spec, L=None):
    """Build a signal from a specifier such as ``cosine:omega=1.3,shift=L/2``.

    Numeric values accept plain floats, ``<x>*pi`` and (when ``L`` is given)
    the forms ``L``, ``L/<x>`` and ``<x>*L``.
    """
    try:
        family, _, body = spec.partition(":")
        fields = dict(item.split("=", 1) for item in body.split(",") if item.strip())
        fields = {k.strip(): v.strip() for k, v in fields.items()}
        family = family.strip().lower()
        if family == "cosine":
            return Cosine(
                parse_number(fields["omega"], L),
                parse_number(fields.get("shift", "0"), L),
                fields.get("variant", "literal"),
            )
        if family == "kpt":
            M = parse_number(fields.get("M", "256"), L)
            A = parse_number(fields["A"], L) if "A" in fields else math.sqrt(M * 4 / 5)
            return KptSinc(M, A, int(fields.get("variant", "1")))
        if family == "trig":
            return random_trig_poly(
                parse_number(fields["band"], L), int(fields.get("count", "10")), int(fields.get("seed", "0")))
    except NvsincError:
        raise
    except (KeyError, ValueError) as exc:
        raise NvsincError(f"bad signal spec {spec!r}: {exc}") from exc
    raise NvsincError(f"unknown signal family in {spec!r}")
