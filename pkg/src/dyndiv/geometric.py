"""Weighted matrix geometric means and the geometric Renyi quantity.

``G_alpha(X, Y) = Y^{1/2} (Y^{-1/2} X Y^{-1/2})^alpha Y^{1/2}`` and, for the
order-one limit, ``Ghat(X, Y) = X^{1/2} log2(X^{1/2} Y^{-1} X^{1/2}) X^{1/2}``.
Both are congruence covariant, so for a channel pair the value at input
``rho_A`` is ``Tr[rho_A^T Tr_B G(J_M, J_N)]``; optimizing over inputs gives
``lambda_max`` (alpha >= 1) or ``lambda_min`` (alpha < 1) of the marginal.
"""

from __future__ import annotations

import math

import numpy as np

from . import linalg
from .classical import INF, DivergenceValue
from .errors import BadAlpha
from .tolerances import ToleranceConfig, resolve

# perturbations used for the alpha < 1 branch without support inclusion
EPSILON_SEQUENCE = (1e-4, 1e-6, 1e-8)


def _compress(y, tol):
    w, u = linalg.psd_eig(y, tol)
    v = u[:, w > 0]
    return v, w[w > 0]


def geometric_mean(x, y, alpha: float, tol: ToleranceConfig | None = None) -> np.ndarray:
    """``G_alpha(X, Y)`` for PSD ``X`` with supp(X) inside supp(Y), computed on supp(Y)."""
    tol = resolve(tol)
    v, wy = _compress(y, tol)
    if v.shape[1] == 0:
        return np.zeros_like(np.asarray(x, dtype=complex))
    xc = v.conj().T @ np.asarray(x) @ v
    ys = np.sqrt(wy)
    inner = linalg.hermitize(xc / np.outer(ys, ys))
    mid = linalg.fn_on_support(inner, ("pow", alpha), tol)
    g = mid * np.outer(ys, ys)
    return linalg.hermitize(v @ g @ v.conj().T)


def geometric_mean_regularized(x, y, alpha: float, tol: ToleranceConfig | None = None) -> np.ndarray:
    """``G_alpha(X, Y) = X^{1/2} (X^{-1/2} Y X^{-1/2})^{1-alpha} X^{1/2}`` for invertible ``X``.

    This form stays finite for singular ``Y`` when ``alpha < 1``.
    """
    tol = resolve(tol)
    w, u = linalg.hermitian_eig(x, tol)
    xs = np.sqrt(w)
    ut = u.conj().T @ np.asarray(y) @ u
    inner = linalg.hermitize(ut / np.outer(xs, xs))
    mid = linalg.fn_on_support(inner, ("pow", 1.0 - alpha), tol)
    g = mid * np.outer(xs, xs)
    return linalg.hermitize(u @ g @ u.conj().T)


def log_geometric_mean(x, y, tol: ToleranceConfig | None = None) -> np.ndarray:
    """``Ghat(X, Y)`` with base-2 log and ``Y^{-1}`` taken on its support."""
    tol = resolve(tol)
    xh = linalg.fn_on_support(x, "sqrt", tol)
    yinv = linalg.fn_on_support(y, "inverse", tol)
    mid = linalg.fn_on_support(linalg.hermitize(xh @ yinv @ xh), "log2", tol)
    return linalg.hermitize(xh @ mid @ xh)


def aitken(values) -> tuple:
    """Aitken delta-squared limit of three terms and an error estimate."""
    v0, v1, v2 = values
    d1, d2 = v1 - v0, v2 - v1
    den = d2 - d1
    if den == 0 or abs(d2) <= 1e-15 * max(1.0, abs(v2)) or d1 * d2 <= 0:
        return v2, abs(d2)
    lim = v2 - d2 * d2 / den
    # a limit outside the monotone trend is not trustworthy
    if (lim - v2) * d2 < 0:
        return v2, abs(d2)
    return lim, abs(lim - v2)


def check_alpha(alpha: float) -> None:
    if not (0 < alpha <= 2):
        raise BadAlpha(f"geometric Renyi order must lie in (0, 2], got {alpha}")


def geometric_renyi_value(jm, jn, alpha: float, dims, tol: ToleranceConfig | None = None) -> DivergenceValue:
    """Geometric Renyi divergence of two (Choi) operators on A (x) B, in bits.

    ``dims = (|A|, |B|)``; states are the case ``|A| = 1``.
    """
    check_alpha(alpha)
    tol = resolve(tol)
    jm = np.asarray(jm, dtype=complex)
    jn = np.asarray(jn, dtype=complex)
    nested = linalg.support_contained(jm, jn, tol)

    def marginal(g):
        return linalg.hermitize(linalg.partial_trace(g, dims, keep="A"))

    if alpha == 1:
        if not nested:
            return DivergenceValue(INF)
        return DivergenceValue(linalg.lambda_max(marginal(log_geometric_mean(jm, jn, tol)), tol))
    if alpha > 1:
        if not nested:
            return DivergenceValue(INF)
        q = linalg.lambda_max(marginal(geometric_mean(jm, jn, alpha, tol)), tol)
        return DivergenceValue(math.log2(q) / (alpha - 1))
    if nested:
        q = linalg.lambda_min(marginal(geometric_mean(jm, jn, alpha, tol)), tol)
        err = 0.0
    else:
        eye = np.eye(jm.shape[0])
        seq = [linalg.lambda_min(marginal(geometric_mean_regularized(jm + e * eye, jn, alpha, tol)), tol)
               for e in EPSILON_SEQUENCE]
        q, err = aitken(seq)
    if q <= tol.psd:
        return DivergenceValue(INF, uncertainty=err)
    unc = err / (q * math.log(2) * (1 - alpha)) if err else 0.0
    return DivergenceValue(math.log2(q) / (alpha - 1), uncertainty=unc)
