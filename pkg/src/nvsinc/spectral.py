"""Frequency-domain construction behind the modified kernel, used as an
independent oracle.

``E(t, w)`` equals ``exp(i*w*t)`` for ``|w| <= g(t)`` and ``exp(i*w*m)``
beyond, on ``[-pi, pi]``.  Its Fourier coefficients

    a_k(t) = 1/(2 pi) * integral_{-pi}^{pi} E(t, w) exp(-i*w*k) dw

are the interpolation coefficients; :func:`coeff_by_quadrature` evaluates
that integral numerically without using the closed form.
"""
import math
from functools import lru_cache

import numpy as np

from ._numerics import phase
from .exceptions import OmegaOutOfRange, QuadratureNotConverged
from .kernel import modified_coeffs
from .params import g_of_t, segment

GL_ORDER = 16
SETTLE_TOL = 1e-11
ACCEPT_TOL = 1e-10
IMAG_TOL = 1e-10


def e_values(config, t, omegas):
    """Vectorised ``E(t, w)`` for ``w`` in ``[-pi, pi]``."""
    w = np.asarray(omegas, dtype=float)
    if np.any(np.abs(w) > math.pi):
        raise OmegaOutOfRange("E(t, w) is only defined here for |w| <= pi")
    seg = segment(config, t)
    g = g_of_t(config, t)
    inside = np.abs(w) <= g
    # exp(i*g*tau) == 1 exactly in exact arithmetic (g*tau = pi*N, N even)
    arg = np.where(inside, w * seg.t, w * seg.m)
    return np.exp(1j * arg)


def e_value(config, t, omega):
    return complex(e_values(config, t, np.array([float(omega)]))[0])


@lru_cache(maxsize=8)
def _gauss_legendre(order):
    return np.polynomial.legendre.leggauss(order)


def _composite(f, a, b, panels):
    """Composite Gauss-Legendre rule on ``[a, b]``; returns per-node terms."""
    x, w = _gauss_legendre(GL_ORDER)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return weights * f(nodes)


def _estimate(config, t, k, panels):
    g = g_of_t(config, t)

    def integrand(w):
        return e_values(config, t, w) * np.exp(-1j * w * k)

    terms = []
    for a, b in ((-math.pi, -g), (-g, g), (g, math.pi)):
        if b > a:
            terms.append(_composite(integrand, a, b, panels))
    terms = np.concatenate(terms)
    # fsum: exact, order-independent accumulation
    return complex(math.fsum(terms.real), math.fsum(terms.imag)) / (2 * math.pi)


def coeff_by_quadrature(config, t, k, panels=64, max_doublings=6, return_complex=False):
    """Coefficient ``a_k(t)`` from its defining Fourier integral.

    The integration range is split at ``+-g(t)``, where ``E`` jumps, and each
    piece gets ``panels`` Gauss-Legendre panels.  Panels are doubled until
    two successive estimates agree to ``1e-11``.

    Raises
    ------
    QuadratureNotConverged
        If successive estimates still differ by more than ``1e-10`` after
        ``max_doublings`` doublings, or if the imaginary part (zero by
        Hermitian symmetry) exceeds ``1e-10``.
    """
    if panels < 64:
        raise ValueError(f"panels={panels} must be >= 64")
    prev = _estimate(config, t, k, panels)
    diff = math.inf
    for _ in range(max_doublings):
        panels *= 2
        cur = _estimate(config, t, k, panels)
        diff = abs(cur - prev)
        prev = cur
        if diff <= SETTLE_TOL:
            break
    if diff > ACCEPT_TOL:
        raise QuadratureNotConverged(
            f"a_{k}({t}): successive estimates differ by {diff:.3e} at {panels} panels")
    if abs(prev.imag) > IMAG_TOL:
        raise QuadratureNotConverged(
            f"a_{k}({t}): imaginary residue {prev.imag:.3e} exceeds {IMAG_TOL:g}")
    return prev if return_complex else prev.real


def exp_reconstruction_error(config, t, omega, K, allow_out_of_band=False):
    """``|sum_{|k-m|<=K} a_k(t) exp(i*w*k) - exp(i*w*t)|``.

    The series reproduces ``exp(i*w*t)`` only for ``|w| <= omega1``; pass
    ``allow_out_of_band=True`` to probe frequencies up to ``pi`` where it
    converges to ``E(t, w)`` instead.
    """
    omega = float(omega)
    limit = math.pi if allow_out_of_band else config.omega1
    if abs(omega) > limit:
        raise OmegaOutOfRange(f"|omega|={abs(omega)!r} exceeds {limit!r}")
    if K < 1:
        raise ValueError("K must be >= 1")
    seg = segment(config, t)
    ks = np.arange(seg.m - K, seg.m + K + 1, dtype=np.int64)
    a = modified_coeffs(config, seg.t, ks)
    ph = phase(omega, ks.astype(float))
    ph_t = float(phase(omega, seg.t))
    re = math.fsum(np.append(a * np.cos(ph), -math.cos(ph_t)))
    im = math.fsum(np.append(a * np.sin(ph), -math.sin(ph_t)))
    return math.hypot(re, im)
