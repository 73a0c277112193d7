"""Error-free transformations and argument reduction for trig evaluation.

Sample indices reach 1e5 and beyond, where ``np.sin(omega * k)`` already
loses ~10 digits to the rounding of the product.  The helpers here carry
the argument as an unevaluated sum ``hi + lo`` and reduce it exactly before
calling the library sin/cos on a small argument.
"""
import numpy as np

_SPLITTER = 134217729.0  # 2**27 + 1

TWO_PI_HI = 6.283185307179586
TWO_PI_LO = 2.4492935982947064e-16


def two_sum(a, b):
    """Return ``(s, e)`` with ``s = fl(a + b)`` and ``a + b = s + e`` exactly."""
    s = a + b
    bb = s - a
    e = (a - (s - bb)) + (b - bb)
    return s, e


def _split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def two_prod(a, b):
    """Return ``(p, e)`` with ``p = fl(a * b)`` and ``a * b = p + e`` exactly."""
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    e = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, e


def _parity_sign(n):
    # (-1)**n for float-valued integers n
    return 1.0 - 2.0 * np.abs(np.fmod(n, 2.0))


def sinpi_dd(hi, lo=0.0):
    """sin(pi * (hi + lo)) with exact reduction modulo 2."""
    hi = np.asarray(hi, dtype=float)
    n = np.rint(hi)
    r = (hi - n) + lo
    return _parity_sign(n) * np.sin(np.pi * r)


def cospi_dd(hi, lo=0.0):
    """cos(pi * (hi + lo)) with exact reduction modulo 2."""
    hi = np.asarray(hi, dtype=float)
    n = np.rint(hi)
    r = (hi - n) + lo
    return _parity_sign(n) * np.cos(np.pi * r)


def sinpi_ratio(num, den):
    """sin(pi * num / den) for exactly representable ``num`` and scalar ``den > 0``.

    The quotient is never rounded before reduction: with ``q = rint(num/den)``
    the remainder ``num - q*den`` is recovered exactly via :func:`two_prod`.
    Requires ``|num| >= den/2`` wherever ``q != 0``, which holds for the
    kernel's use (``num = N*j`` with ``den`` in ``[N, N+1)``).
    """
    num = np.asarray(num, dtype=float)
    q = np.rint(num / den)
    ph, pl = two_prod(q, den)
    rem = ((num - ph) - pl) / den
    return _parity_sign(q) * np.sin(np.pi * rem)


def reduce_angle(hi, lo=0.0):
    """Reduce ``hi + lo`` modulo 2*pi into roughly ``[-pi, pi]``."""
    hi = np.asarray(hi, dtype=float)
    n = np.rint(hi / TWO_PI_HI)
    ph, pl = two_prod(n, TWO_PI_HI)
    return (((hi - ph) - pl) - n * TWO_PI_LO) + lo


def phase(omega, t, shift=0.0, t_lo=0.0):
    """Accurately reduced ``omega * (t + t_lo) - shift``."""
    omega = np.asarray(omega, dtype=float)
    p, e = two_prod(omega, np.asarray(t, dtype=float))
    s, e2 = two_sum(p, -np.asarray(shift, dtype=float))
    return reduce_angle(s, (e + e2) + omega * t_lo)
