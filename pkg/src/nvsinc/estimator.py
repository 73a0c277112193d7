"""scikit-learn compatible front end for the interpolation formulas."""
import math

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .exceptions import NvsincError
from .interpolator import TruncationWindow, interpolate
from .kernel import Kind
from .params import make_config
from .signals import SampleGrid


def _times(X, name):
    X = check_array(X, ensure_2d=False, dtype=np.float64, input_name=name)
    if X.ndim == 2:
        if X.shape[1] != 1:
            raise ValueError(f"{name} must have a single column of times, got shape {X.shape}")
        X = X[:, 0]
    return X


class WSKInterpolator(RegressorMixin, BaseEstimator):
    """Reconstruct a band-limited signal from its integer-time samples.

    ``fit`` stores the samples ``y`` taken at the integer times ``X``;
    ``predict`` evaluates the truncated interpolation series at arbitrary
    real times.

    Parameters
    ----------
    omega : float, default=5*pi/12
        Band edge of the signal, in ``(0, pi)``.
    omega1, n : optional
        Oversampled band edge and even integer; filled from the default
        recipe when omitted.  Ignored for ``kind="classical"``.
    kind : {"modified", "classical"}, default="modified"
    window : {"t", "zero", "all"}, default="t"
        ``"t"`` sums over ``round(t)-L..round(t)+L``, ``"zero"`` over
        ``-L..L`` and ``"all"`` over every fitted sample.
    L : int, optional
        Truncation half-width; required unless ``window="all"``.

    Attributes
    ----------
    config_ : SamplingConfig
    grid_ : SampleGrid
    n_features_in_ : int
    """

    def __init__(self, omega=5 * math.pi / 12, omega1=None, n=None, kind="modified", window="t", L=None):
        self.omega = omega
        self.omega1 = omega1
        self.n = n
        self.kind = kind
        self.window = window
        self.L = L

    def _window(self):
        if self.window == "all":
            return TruncationWindow.explicit(self.grid_.k_lo, self.grid_.k_hi)
        if self.window in ("t", "zero"):
            if self.L is None:
                raise ValueError(f"window={self.window!r} requires L")
            return TruncationWindow(self.window, L=int(self.L))
        raise ValueError(f"unknown window {self.window!r}")

    def fit(self, X, y):
        Kind(self.kind)
        k = _times(X, "X")
        y = np.asarray(y)
        if y.ndim == 2 and y.shape[1] == 1:
            y = y[:, 0]
        if y.ndim != 1 or len(y) != len(k):
            raise ValueError(f"y must be 1-d with {len(k)} entries, got shape {y.shape}")
        if not np.all(np.isfinite(y)):
            raise ValueError("y contains non-finite values")
        if np.any(k != np.round(k)):
            raise ValueError("sample times X must be integers")
        order = np.argsort(k, kind="stable")
        k = k[order].astype(np.int64)
        if len(k) == 0 or np.any(np.diff(k) != 1):
            raise ValueError("sample times X must form a contiguous run of integers")
        dtype = complex if np.iscomplexobj(y) else float
        self.config_ = make_config(self.omega, self.omega1, self.n)
        self.grid_ = SampleGrid(int(k[0]), int(k[-1]), y[order].astype(dtype))
        self.n_features_in_ = 1
        return self

    def predict(self, X):
        check_is_fitted(self, "grid_")
        ts = _times(X, "X")
        window = self._window()
        out = [interpolate(self.config_, self.grid_, t, window, self.kind) for t in ts]
        return np.asarray(out, dtype=self.grid_.values.dtype)

    def score(self, X, y, sample_weight=None):
        if np.iscomplexobj(y) or np.iscomplexobj(self.grid_.values):
            raise NvsincError("R^2 score is only defined for real-valued signals")
        return super().score(X, y, sample_weight)
