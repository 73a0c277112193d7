"""Sampling parameters (band edge, oversampled band edge, even integer N)
and the 1-periodic sawtooth frequency ``g(t)``.
"""
import math
from dataclasses import dataclass
from fractions import Fraction

from .exceptions import BandEdgeOutOfRange, NonFiniteTime, NTooSmall, OddN

_PI = Fraction(math.pi)


@dataclass(frozen=True)
class SamplingConfig:
    """Validated ``(omega, omega1, n_even)``; build it with :func:`validate_config`.

    Attributes
    ----------
    omega : float
        Band edge of the signals to reconstruct, in ``(0, pi)``.
    omega1 : float
        Oversampled band edge in ``(omega, pi)``; ``g(t) >= omega1`` everywhere.
    n_even : int
        Even integer with ``n_even > omega/(pi-omega)`` and
        ``n_even >= omega1/(pi-omega1)``.
    """

    omega: float
    omega1: float
    n_even: int

    @property
    def g_min(self):
        """Lower bound ``pi*N/(N+1)`` of the sawtooth frequency."""
        return math.pi * self.n_even / (self.n_even + 1)

    def to_dict(self):
        return {"omega": self.omega, "omega1": self.omega1, "n": self.n_even}


@dataclass(frozen=True)
class SegmentedTime:
    t: float
    m: int
    tau: float


def _check_band(omega, omega1=None):
    if not (math.isfinite(omega) and 0.0 < omega < math.pi):
        raise BandEdgeOutOfRange(f"omega={omega!r} must lie in (0, pi)")
    if omega1 is not None and not (math.isfinite(omega1) and omega < omega1 < math.pi):
        raise BandEdgeOutOfRange(f"omega1={omega1!r} must lie in (omega, pi) with omega={omega!r}")


def validate_config(omega, omega1, n):
    """Check a parameter triple and return a :class:`SamplingConfig`.

    Both inequalities on ``n`` are decided exactly on the binary values of
    the inputs (and of ``math.pi``) using rational arithmetic.
    """
    omega = float(omega)
    omega1 = float(omega1)
    _check_band(omega, omega1)
    if int(n) != n:
        raise OddN(f"n={n!r} is not an integer")
    n = int(n)
    if n % 2:
        raise OddN(f"n={n} must be even")
    if n < 2:
        raise NTooSmall(f"n={n} must be at least 2")
    w, w1 = Fraction(omega), Fraction(omega1)
    if not n > w / (_PI - w):
        raise NTooSmall(f"n={n} must exceed omega/(pi-omega)={omega / (math.pi - omega):.6g}")
    if not n >= w1 / (_PI - w1):
        raise NTooSmall(f"n={n} must be >= omega1/(pi-omega1)={omega1 / (math.pi - omega1):.6g}")
    return SamplingConfig(omega, omega1, n)


def default_config(omega):
    """Config with ``omega1 = (omega+pi)/2`` and the smallest admissible even ``n``.

    ``n`` is the smallest even integer strictly greater than
    ``omega1/(pi-omega1)``.
    """
    omega = float(omega)
    _check_band(omega)
    omega1 = (omega + math.pi) / 2
    ratio = Fraction(omega1) / (_PI - Fraction(omega1))
    n = 2 * (math.floor(ratio / 2) + 1)
    return validate_config(omega, omega1, n)


def make_config(omega, omega1=None, n=None):
    """Fill omitted fields from :func:`default_config`, then validate."""
    if omega1 is None and n is None:
        return default_config(omega)
    if omega1 is None:
        omega1 = (float(omega) + math.pi) / 2
    if n is None:
        _check_band(float(omega), float(omega1))
        ratio = Fraction(float(omega1)) / (_PI - Fraction(float(omega1)))
        n = 2 * (math.floor(ratio / 2) + 1)
    return validate_config(omega, omega1, n)


def _check_time(t):
    t = float(t)
    if not math.isfinite(t):
        raise NonFiniteTime(f"t={t!r} is not finite")
    return t


def segment(config, t):
    """Return the unique ``m`` with ``N <= t - m < N + 1``."""
    t = _check_time(t)
    m = math.floor(t) - config.n_even
    tau = t - m
    if tau >= config.n_even + 1:
        # t just below an integer with |t| tiny: t - m rounded up to N+1
        m += 1
        tau = t - m
    return SegmentedTime(t, m, tau)


def g_of_t(config, t):
    """Sawtooth frequency ``pi*N/(N+tau)``, 1-periodic in ``t``."""
    seg = segment(config, t)
    return math.pi * config.n_even / seg.tau
