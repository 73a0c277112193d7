"""Interpolation coefficients: the fast-decaying modified kernel and the
classical cardinal-sine kernel.

For ``t`` in ``[N+m, N+m+1)`` with ``tau = t - m`` and ``g = pi*N/tau`` the
modified coefficients are::

    a_m(t) = 1 - g/pi
    a_k(t) = tau * sin(g*(k-m)) / (pi * (k-m) * (k-t)),   k != m

and decay like ``1/k**2``.  The classical coefficients
``sin(pi*(k-t)) / (pi*(k-t))`` decay like ``1/k``.
"""
import enum
import math
from dataclasses import dataclass

import numpy as np

from ._numerics import sinpi_ratio, sinpi_dd, two_sum
from .exceptions import EmptyWindow
from .params import _check_time, segment


class Kind(str, enum.Enum):
    MODIFIED = "modified"
    CLASSICAL = "classical"


@dataclass(frozen=True)
class CoefficientRow:
    t: float
    k_lo: int
    k_hi: int
    values: np.ndarray
    kind: Kind

    @property
    def indices(self):
        return np.arange(self.k_lo, self.k_hi + 1)


def modified_coeffs(config, t, ks):
    """Vectorised modified coefficients ``a_k(t)`` for an integer array ``ks``.

    The whole computation is done in terms of ``j = k - m`` and the reduced
    time ``tau``; ``k - t`` is evaluated as ``j - tau`` so that the
    numerator and denominator see the same representation of ``t``.
    """
    seg = segment(config, t)
    n = config.n_even
    j = np.asarray(ks, dtype=np.int64) - seg.m
    tau = seg.tau
    if tau == n:
        # t is an integer: Kronecker row
        return (j == n).astype(float)
    out = np.empty(j.shape, dtype=float)
    at_m = j == 0
    out[at_m] = (tau - n) / tau  # == 1 - g/pi without cancellation
    jj = j[~at_m].astype(float)
    s = sinpi_ratio(n * jj, tau)
    out[~at_m] = tau * s / (math.pi * jj * (jj - tau))
    return out


def classical_coeffs(t, ks):
    """Vectorised ``sin(pi*(k-t))/(pi*(k-t))`` with value 1 at ``k == t``."""
    t = _check_time(t)
    d_hi, d_lo = two_sum(np.asarray(ks, dtype=float), -t)
    out = np.ones(d_hi.shape, dtype=float)
    nz = d_hi != 0
    out[nz] = sinpi_dd(d_hi[nz], d_lo[nz]) / (math.pi * d_hi[nz])
    return out


def coeff(config, t, k):
    """Single modified coefficient ``a_k(t)``."""
    return float(modified_coeffs(config, t, np.array([k]))[0])


def classical_coeff(t, k):
    """Single classical coefficient."""
    return float(classical_coeffs(t, np.array([k]))[0])


def coeff_row(config, t, k_lo, k_hi, kind=Kind.MODIFIED):
    """Coefficients for every ``k`` in ``[k_lo, k_hi]``.

    ``config`` is ignored for the classical kind and may be ``None``.
    """
    k_lo, k_hi = int(k_lo), int(k_hi)
    if k_lo > k_hi:
        raise EmptyWindow(f"empty window [{k_lo}, {k_hi}]")
    kind = Kind(kind)
    ks = np.arange(k_lo, k_hi + 1, dtype=np.int64)
    if kind is Kind.MODIFIED:
        values = modified_coeffs(config, t, ks)
    else:
        values = classical_coeffs(t, ks)
    return CoefficientRow(float(t), k_lo, k_hi, values, kind)


def shift_check(config, t, k, m):
    """Return ``(a_k(t+m), a_{k-m}(t))``; equal by shift invariance."""
    _check_time(t)
    return coeff(config, t + m, k), coeff(config, t, k - m)
