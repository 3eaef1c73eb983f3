"""Divergences between probability vectors, in bits.

Atoms with ``p_x = q_x = 0`` are dropped before every computation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BadAlpha, BadEpsilon, DimensionMismatch
from .linalg import LN2

INF = math.inf


@dataclass(frozen=True)
class DivergenceValue:
    """A divergence in bits.

    ``exact`` is False for optimizer lower bounds; ``upper`` optionally holds
    a certified upper bound and ``uncertainty`` an extrapolation error
    estimate.
    """

    value: float
    exact: bool = True
    upper: float | None = None
    uncertainty: float = 0.0

    def __float__(self) -> float:
        return float(self.value)

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.value)


def _bits(nats: float) -> float:
    return nats / LN2


def _pair(p, q):
    p = np.asarray(p, dtype=float).ravel()
    q = np.asarray(q, dtype=float).ravel()
    if p.shape != q.shape:
        raise DimensionMismatch(f"probability vectors differ in length: {p.size} vs {q.size}")
    keep = (p > 0) | (q > 0)
    return p[keep], q[keep]


def kl(p, q) -> DivergenceValue:
    p, q = _pair(p, q)
    on = p > 0
    if np.any(q[on] == 0):
        return DivergenceValue(INF)
    val = float(np.sum(p[on] * (np.log(p[on]) - np.log(q[on]))))
    return DivergenceValue(_bits(val))


def dmax_c(p, q) -> DivergenceValue:
    p, q = _pair(p, q)
    on = p > 0
    if np.any(q[on] == 0):
        return DivergenceValue(INF)
    return DivergenceValue(_bits(float(np.max(np.log(p[on]) - np.log(q[on])))))


def dmin_c(p, q) -> DivergenceValue:
    p, q = _pair(p, q)
    mass = float(np.sum(q[p > 0]))
    if mass <= 0:
        return DivergenceValue(INF)
    return DivergenceValue(-math.log2(min(mass, 1.0)) + 0.0)


def renyi(p, q, alpha: float) -> DivergenceValue:
    """Renyi divergence of order ``alpha`` in [0, inf]; the orders 0, 1, inf are the limits."""
    if not alpha >= 0:
        raise BadAlpha(f"alpha must be >= 0, got {alpha}")
    if alpha == 0:
        return dmin_c(p, q)
    if alpha == 1:
        return kl(p, q)
    if math.isinf(alpha):
        return dmax_c(p, q)
    p, q = _pair(p, q)
    on = p > 0
    if alpha > 1 and np.any(q[on] == 0):
        return DivergenceValue(INF)
    both = on & (q > 0)
    if not np.any(both):
        return DivergenceValue(INF)
    logs = alpha * np.log(p[both]) + (1 - alpha) * np.log(q[both])
    top = logs.max()
    log_s = top + math.log(float(np.sum(np.exp(logs - top))))
    return DivergenceValue(_bits(log_s / (alpha - 1)))


def ratio_sorted(p, q):
    """Atoms sorted by descending likelihood ratio p/q (ties by index), 0/0 atoms dropped."""
    p, q = _pair(p, q)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(q > 0, p / np.where(q > 0, q, 1.0), INF)
    order = np.argsort(-ratio, kind="stable")
    return p[order], q[order]


def type2_error(p, q, epsilon: float) -> float:
    """Minimal sum(q*t) over tests 0 <= t <= 1 with sum(p*t) >= 1 - epsilon."""
    if not 0 <= epsilon < 1:
        raise BadEpsilon(f"epsilon must lie in [0, 1), got {epsilon}")
    ps, qs = ratio_sorted(p, q)
    target = 1.0 - epsilon
    if epsilon == 0:
        return float(np.sum(qs[ps > 0]))
    beta = 0.0
    acc = 0.0
    for px, qx in zip(ps, qs):
        if acc + px >= target:
            if px > 0:
                beta += (target - acc) / px * qx
            return beta
        acc += px
        beta += qx
    return beta


def hyptest_c(p, q, epsilon: float) -> DivergenceValue:
    """Hypothesis-testing divergence -log2 of the Neyman-Pearson type-II error."""
    if epsilon == 0:
        return dmin_c(p, q)
    beta = type2_error(p, q, epsilon)
    if beta <= 0:
        return DivergenceValue(INF)
    return DivergenceValue(-math.log2(min(beta, 1.0)) + 0.0)


CLASSICAL_DIVERGENCES = {
    "kl": kl,
    "dmax": dmax_c,
    "dmin": dmin_c,
    "renyi": renyi,
    "hyptest": hyptest_c,
}


def resolve_divergence(div, **params):
    """Turn a tag (``"kl"``, ``"renyi"``, ...) or a callable into ``f(p, q) -> DivergenceValue``.

    ``renyi`` takes ``alpha=`` and ``hyptest`` takes ``epsilon=``.
    """
    if callable(div):
        return div
    try:
        fn = CLASSICAL_DIVERGENCES[div]
    except KeyError:
        raise ValueError(f"unknown classical divergence {div!r}") from None
    if div == "renyi":
        alpha = params["alpha"]
        return lambda p, q: renyi(p, q, alpha)
    if div == "hyptest":
        eps = params["epsilon"]
        return lambda p, q: hyptest_c(p, q, eps)
    return fn
