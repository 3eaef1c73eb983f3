"""Divergences between density matrices, in bits.

Support inclusion supp(rho) in supp(sigma) is decided once, by
:func:`dyndiv.linalg.support_contained`, for every finiteness branch.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import brentq

from . import linalg
from .channels import haar_unitary, _rng
from .classical import INF, DivergenceValue, kl
from .errors import BadAlpha, BadEpsilon, DimensionMismatch, NoConvergence
from .geometric import geometric_renyi_value
from .tolerances import ToleranceConfig, resolve


def _pair(rho, sigma):
    rho = np.asarray(rho, dtype=complex)
    sigma = np.asarray(sigma, dtype=complex)
    if rho.ndim != 2 or rho.shape != sigma.shape or rho.shape[0] != rho.shape[1]:
        raise DimensionMismatch(f"states have incompatible shapes {rho.shape} and {sigma.shape}")
    return rho, sigma


def umegaki(rho, sigma, tol: ToleranceConfig | None = None) -> DivergenceValue:
    """Umegaki relative entropy Tr[rho log rho] - Tr[rho log sigma]."""
    tol = resolve(tol)
    rho, sigma = _pair(rho, sigma)
    if not linalg.support_contained(rho, sigma, tol):
        return DivergenceValue(INF)
    w, _ = linalg.psd_eig(rho, tol)
    w = w[w > 0]
    neg_entropy = float(np.sum(w * np.log2(w)))
    cross = float(np.real(np.trace(rho @ linalg.fn_on_support(sigma, "log2", tol))))
    return DivergenceValue(neg_entropy - cross)


def dmax_q(rho, sigma, tol: ToleranceConfig | None = None) -> DivergenceValue:
    """Max-relative entropy log2 min{t : t sigma >= rho}."""
    tol = resolve(tol)
    rho, sigma = _pair(rho, sigma)
    if not linalg.support_contained(rho, sigma, tol):
        return DivergenceValue(INF)
    s = linalg.fn_on_support(sigma, "inv_sqrt", tol)
    lam = linalg.lambda_max(linalg.hermitize(s @ rho @ s), tol)
    if lam <= 0:
        return DivergenceValue(-INF)
    return DivergenceValue(math.log2(lam))


def dmin_q(rho, sigma, tol: ToleranceConfig | None = None) -> DivergenceValue:
    """Min-relative entropy -log2 Tr[sigma Pi_rho]; +inf when the overlap vanishes."""
    tol = resolve(tol)
    rho, sigma = _pair(rho, sigma)
    mass = float(np.real(np.trace(sigma @ linalg.support_projector(rho, tol))))
    if mass <= tol.psd:
        return DivergenceValue(INF)
    return DivergenceValue(-math.log2(min(mass, 1.0)) + 0.0)


def _positive_part(h, tol):
    w, u = linalg.hermitian_eig(h, tol)
    pos = w > 0
    v = u[:, pos]
    return w[pos], v


def type2_error_q(rho, sigma, epsilon: float, tol: ToleranceConfig | None = None,
                  max_iter: int = 200) -> float:
    """min Tr[sigma E] over 0 <= E <= I with Tr[rho E] >= 1 - epsilon.

    Solved through the one-dimensional concave dual
    ``h(mu) = mu (1 - eps) - Tr[(mu rho - sigma)_+]``, whose slope is
    ``(1 - eps) - Tr[rho P_+(mu rho - sigma)]``; the maximizer is bracketed
    and bisected on the sign of the slope.
    """
    if not 0 <= epsilon < 1:
        raise BadEpsilon(f"epsilon must lie in [0, 1), got {epsilon}")
    tol = resolve(tol)
    rho, sigma = _pair(rho, sigma)
    rho = linalg.hermitize(rho)
    sigma = linalg.hermitize(sigma)
    if epsilon == 0:
        return float(np.real(np.trace(sigma @ linalg.support_projector(rho, tol))))
    target = 1.0 - epsilon

    def evaluate(mu):
        _, v = _positive_part(mu * rho - sigma, tol)
        r_plus = float(np.real(np.trace(v.conj().T @ rho @ v)))
        s_plus = float(np.real(np.trace(v.conj().T @ sigma @ v)))
        return mu * (target - r_plus) + s_plus, target - r_plus

    lo, hi = 0.0, 1.0
    h0, slope0 = evaluate(0.0)
    if slope0 <= 0:
        # rho already has mass >= 1 - eps on ker(sigma): the test costs nothing
        return max(h0, 0.0)
    for _ in range(2000):
        if evaluate(hi)[1] <= 0:
            break
        lo, hi = hi, hi * 2.0
    else:
        raise NoConvergence("could not bracket the Neyman-Pearson multiplier")
    if evaluate(hi)[1] == 0:
        return max(evaluate(hi)[0], 0.0)
    # the slope is monotone but may jump; brentq then converges onto the jump
    root = brentq(lambda mu: evaluate(mu)[1], lo, hi, xtol=1e-15 * hi, rtol=4 * np.finfo(float).eps,
                  maxiter=max_iter)
    step = max(abs(root), 1.0) * 1e-14
    best = max(evaluate(root)[0], evaluate(max(root - step, 0.0))[0], evaluate(root + step)[0])
    return max(best, 0.0)


def hyptest_q(rho, sigma, epsilon: float, tol: ToleranceConfig | None = None) -> DivergenceValue:
    """Hypothesis-testing divergence -log2 of the optimal type-II error."""
    tol = resolve(tol)
    if epsilon == 0:
        return dmin_q(rho, sigma, tol)
    beta = type2_error_q(rho, sigma, epsilon, tol)
    if beta <= tol.psd * 1e-3:
        return DivergenceValue(INF)
    return DivergenceValue(-math.log2(min(beta, 1.0)) + 0.0)


def sandwiched_renyi(rho, sigma, alpha: float, tol: ToleranceConfig | None = None) -> DivergenceValue:
    """Sandwiched Renyi divergence, alpha >= 1/2 (alpha = 1 is Umegaki, alpha = inf is D_max)."""
    tol = resolve(tol)
    if not alpha >= 0.5:
        raise BadAlpha(f"sandwiched Renyi order must be >= 1/2, got {alpha}")
    if alpha == 1:
        return umegaki(rho, sigma, tol)
    if math.isinf(alpha):
        return dmax_q(rho, sigma, tol)
    rho, sigma = _pair(rho, sigma)
    nested = linalg.support_contained(rho, sigma, tol)
    if alpha > 1 and not nested:
        return DivergenceValue(INF)
    s = linalg.fn_on_support(sigma, ("pow", (1 - alpha) / (2 * alpha)), tol)
    inner = linalg.hermitize(s @ rho @ s)
    w, _ = linalg.psd_eig(inner, tol)
    w = w[w > 0]
    total = float(np.sum(w ** alpha))
    if total <= 0:
        return DivergenceValue(INF)
    return DivergenceValue(math.log2(total) / (alpha - 1))


def geometric_renyi_state(rho, sigma, alpha: float, tol: ToleranceConfig | None = None) -> DivergenceValue:
    """Geometric Renyi divergence of states, alpha in (0, 2]; alpha = 1 is Belavkin-Staszewski."""
    rho, sigma = _pair(rho, sigma)
    return geometric_renyi_value(rho, sigma, alpha, (1, rho.shape[0]), tol)


# ---------------------------------------------------------------------------
# measured relative entropy (heuristic lower bound)


def _basis_kl(u, rho, sigma) -> float:
    p = np.real(np.einsum("ki,ij,kj->k", u.conj(), rho, u))
    q = np.real(np.einsum("ki,ij,kj->k", u.conj(), sigma, u))
    p = np.clip(p, 0, None)
    q = np.clip(q, 0, None)
    return kl(p / p.sum(), q / q.sum()).value


def _givens(d, i, j, theta, phi):
    g = np.eye(d, dtype=complex)
    c, s = math.cos(theta), math.sin(theta)
    g[i, i] = c
    g[j, j] = c
    g[i, j] = -np.exp(1j * phi) * s
    g[j, i] = np.exp(-1j * phi) * s
    return g


def _coordinate_ascent(u, rho, sigma, step_tol: float, max_sweeps: int = 10_000):
    d = u.shape[0]
    best = _basis_kl(u, rho, sigma)
    if math.isinf(best):
        return best, u
    h = 0.5
    sweeps = 0
    while h >= step_tol and sweeps < max_sweeps:
        sweeps += 1
        improved = False
        for i in range(d):
            for j in range(i + 1, d):
                for theta in (h, -h):
                    for phi in (0.0, math.pi / 2):
                        cand = _givens(d, i, j, theta, phi) @ u
                        val = _basis_kl(cand, rho, sigma)
                        if val > best:
                            best, u, improved = val, cand, True
        if not improved:
            h /= 2
    return best, u


def measured_candidates(rho, sigma, restarts: int, seed, tol=None):
    """Starting bases: eigenbasis of sigma, eigenbasis of rho, then Haar unitaries."""
    tol = resolve(tol)
    rng = _rng(seed)
    d = rho.shape[0]
    fixed = [linalg.hermitian_eig(sigma, tol)[1].T, linalg.hermitian_eig(rho, tol)[1].T]
    out = []
    for k in range(restarts):
        out.append(fixed[k] if k < len(fixed) else haar_unitary(d, rng))
    return out


def measured_lb(rho, sigma, restarts: int = 8, seed=0, step_tol: float = 1e-6,
                tol: ToleranceConfig | None = None) -> DivergenceValue:
    """Lower bound on the measured relative entropy from projective measurements.

    Each starting basis is refined by Givens-rotation coordinate ascent; the
    best KL divergence of the outcome distributions is returned with
    ``exact=False``.  The candidate list for ``k`` restarts is a prefix of the
    list for ``k + 1``, so the value is nondecreasing in ``restarts``.
    """
    rho, sigma = _pair(rho, sigma)
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    best = -INF
    for u in measured_candidates(rho, sigma, restarts, seed, tol):
        val, _ = _coordinate_ascent(u, rho, sigma, step_tol)
        best = max(best, val)
    return DivergenceValue(float(max(best, 0.0)), exact=False)
