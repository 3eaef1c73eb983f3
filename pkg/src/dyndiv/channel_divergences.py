"""Divergences between quantum channels.

Exact quantities (``channel_dmax``, ``geometric_renyi_channel``,
``isometry_max_ext``) come from closed formulas on Choi matrices.  The
input-optimized quantities maximize a state divergence of the outputs over
pure inputs on ``R (x) A`` and are returned as lower bounds (``exact=False``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.optimize import minimize

from . import linalg
from .channels import (
    QuantumChannel,
    _rng,
    apply_channel,
    as_channel,
    channel_is_isometry,
    random_density_matrix,
    random_pure_state,
)
from .classical import INF, DivergenceValue
from .errors import BadConfig, BadEpsilon, NotIsometry, ShapeMismatch
from .geometric import check_alpha, geometric_renyi_value
from .states import dmax_q, hyptest_q, umegaki
from .tolerances import ToleranceConfig, resolve


@dataclass(frozen=True)
class OptimizerConfig:
    """Budget for the pure-input searches.

    Every search starts from the maximally entangled input and the product
    inputs ``|0>_R |a>_A``, then ``restarts`` Haar-random inputs.
    ``ref_dim=None`` means ``|R| = |A|``.
    """

    restarts: int = 4
    max_iters: int = 200
    step_tol: float = 1e-9
    seed: int = 0
    ref_dim: Optional[int] = None

    def __post_init__(self):
        if self.restarts < 0 or self.max_iters < 1 or not self.step_tol > 0:
            raise BadConfig(f"invalid optimizer budget {self}")
        if self.ref_dim is not None and self.ref_dim < 1:
            raise BadConfig("ref_dim must be positive")


def _pair(m, n):
    m, n = as_channel(m), as_channel(n)
    if m.shape != n.shape:
        raise ShapeMismatch(f"channels have different shapes {m.shape} vs {n.shape}")
    return m, n


def channel_dmax(m, n, tol: ToleranceConfig | None = None) -> DivergenceValue:
    """log2 min{t : t J_N - J_M is PSD}, via the largest eigenvalue of J_N^{-1/2} J_M J_N^{-1/2}."""
    m, n = _pair(m, n)
    return dmax_q(m.choi, n.choi, tol)


def geometric_renyi_channel(m, n, alpha: float, tol: ToleranceConfig | None = None) -> DivergenceValue:
    """Geometric Renyi channel divergence for alpha in (0, 2] from the Choi matrices."""
    check_alpha(alpha)
    m, n = _pair(m, n)
    return geometric_renyi_value(m.choi, n.choi, alpha, m.shape, tol)


def isometry_max_ext(v, n, tol: ToleranceConfig | None = None) -> DivergenceValue:
    """Maximal extension for an isometry channel: log2 Tr[J_N^{-1} J_V]."""
    tol = resolve(tol)
    v, n = _pair(v, n)
    if not channel_is_isometry(v):
        raise NotIsometry("first channel does not have a rank-one Choi matrix")
    if not linalg.support_contained(v.choi, n.choi, tol):
        return DivergenceValue(INF)
    inv = linalg.fn_on_support(n.choi, "inverse", tol)
    return DivergenceValue(math.log2(float(np.real(np.trace(inv @ v.choi)))))


# ---------------------------------------------------------------------------
# pure-input optimization


@dataclass
class SearchResult:
    value: float
    psi: np.ndarray


def _starts(dim_r: int, dim_a: int, cfg: OptimizerConfig):
    starts = [np.eye(dim_r, dim_a, dtype=complex).ravel() / math.sqrt(min(dim_r, dim_a))]
    for a in range(dim_a):
        e = np.zeros(dim_r * dim_a, dtype=complex)
        e[a] = 1.0
        starts.append(e)
    rng = _rng(cfg.seed)
    starts.extend(random_pure_state(dim_r * dim_a, rng) for _ in range(cfg.restarts))
    return starts


def maximize_over_pure_inputs(objective: Callable[[np.ndarray, np.ndarray], float],
                              m: QuantumChannel, n: QuantumChannel,
                              cfg: OptimizerConfig) -> SearchResult:
    """Maximize ``objective(M(psi), N(psi))`` over unit vectors psi on R (x) A.

    Each start is refined by L-BFGS on the real parameters of an
    unnormalized vector (normalized inside the objective) with
    finite-difference gradients.  An infinite value at a starting point ends
    the search.  Refined points may not certify infinity: near inputs with
    tiny Schmidt coefficients the PSD floor can split a genuinely nested
    pair, so infinite values there are discarded.  The maximally entangled
    start already detects every support violation of the Choi matrices.
    """
    dim_a = m.dim_in
    dim_r = cfg.ref_dim or dim_a
    size = dim_r * dim_a

    def value(psi):
        nrm = np.linalg.norm(psi)
        if nrm == 0:
            return -INF
        psi = psi / nrm
        rho = np.outer(psi, psi.conj())
        return objective(apply_channel(m, rho, dim_r), apply_channel(n, rho, dim_r))

    def unpack(x):
        return x[:size] + 1j * x[size:]

    best = SearchResult(-INF, np.zeros(size, dtype=complex))
    for psi0 in _starts(dim_r, dim_a, cfg):
        v0 = value(psi0)
        if v0 > best.value:
            best = SearchResult(v0, psi0)
        if math.isinf(v0) and v0 > 0:
            return best
        if not math.isfinite(v0):
            continue

        def neg(x):
            v = value(unpack(x))
            return -v if math.isfinite(v) else 1e300

        x0 = np.concatenate([psi0.real, psi0.imag])
        res = minimize(neg, x0, method="L-BFGS-B",
                       options={"maxiter": cfg.max_iters, "ftol": cfg.step_tol, "gtol": 1e-10})
        psi = unpack(res.x)
        psi = psi / np.linalg.norm(psi)
        v = value(psi)
        if math.isfinite(v) and v > best.value:
            best = SearchResult(v, psi)
    return best


def channel_umegaki(m, n, cfg: OptimizerConfig | None = None,
                    tol: ToleranceConfig | None = None) -> DivergenceValue:
    """Input-optimized Umegaki channel divergence (lower bound; ``upper`` = channel D_max)."""
    cfg = cfg or OptimizerConfig()
    m, n = _pair(m, n)
    res = maximize_over_pure_inputs(lambda a, b: umegaki(a, b, tol).value, m, n, cfg)
    upper = channel_dmax(m, n, tol).value
    return DivergenceValue(res.value, exact=False, upper=upper)


def channel_hyptest(m, n, epsilon: float, cfg: OptimizerConfig | None = None,
                    tol: ToleranceConfig | None = None) -> DivergenceValue:
    """Input-optimized hypothesis-testing channel divergence (lower bound).

    ``epsilon = 0`` gives the channel min-relative entropy; +inf is returned
    only when an input with orthogonal outputs is actually found.
    """
    if not 0 <= epsilon < 1:
        raise BadEpsilon(f"epsilon must lie in [0, 1), got {epsilon}")
    cfg = cfg or OptimizerConfig()
    m, n = _pair(m, n)
    res = maximize_over_pure_inputs(lambda a, b: hyptest_q(a, b, epsilon, tol).value, m, n, cfg)
    return DivergenceValue(res.value, exact=False)


def channel_dmin(m, n, cfg: OptimizerConfig | None = None, tol=None) -> DivergenceValue:
    return channel_hyptest(m, n, 0.0, cfg, tol)


def amortized_lb(m, n, cfg: OptimizerConfig | None = None,
                 tol: ToleranceConfig | None = None) -> DivergenceValue:
    """Sampled lower bound on the amortized Umegaki channel divergence.

    Best of ``D(M(rho) || N(sigma)) - D(rho || sigma)`` over random mixed
    pairs on ``R (x) A`` and the ``rho = sigma`` pure-input optimum.
    """
    cfg = cfg or OptimizerConfig()
    m, n = _pair(m, n)
    best = channel_umegaki(m, n, cfg, tol).value
    if math.isinf(best):
        return DivergenceValue(best, exact=False)
    dim_r = cfg.ref_dim or m.dim_in
    rng = _rng(cfg.seed + 1)
    size = dim_r * m.dim_in
    for _ in range(4 * max(cfg.restarts, 1)):
        rho = random_density_matrix(size, rng)
        sigma = random_density_matrix(size, rng)
        base = umegaki(rho, sigma, tol).value
        if not math.isfinite(base):
            continue
        out = umegaki(apply_channel(m, rho, dim_r), apply_channel(n, sigma, dim_r), tol).value
        best = max(best, out - base)
        if math.isinf(best):
            break
    return DivergenceValue(best, exact=False)
