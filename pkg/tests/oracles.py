"""Reference computations used to check the library.

Each oracle takes a different route from the implementation it checks:
LPs instead of Lorenz curves, bisection instead of spectral formulas, scipy
matrix functions instead of eigendecompositions on the support, and a
direct search over the dual multiplier instead of root finding.
"""

import math
from fractions import Fraction

import mpmath
import numpy as np
import scipy.linalg as sla
from scipy.optimize import linprog, minimize_scalar

# A two-input classical channel pair with a known optimal join and Lorenz curve
EXAMPLE_M = np.array([[1 / 3, 5 / 12], [1 / 4, 1 / 6], [1 / 4, 1 / 4], [1 / 6, 1 / 6]])
EXAMPLE_N = np.array([[1 / 12, 1 / 12], [1 / 6, 1 / 12], [1 / 3, 1 / 2], [5 / 12, 1 / 3]])
EXAMPLE_P = np.array([5, 2, 3, 2]) / 12
EXAMPLE_Q = np.array([1, 1, 5, 5]) / 12
EXAMPLE_VERTICES = np.array([[0, 0], [5 / 12, 1 / 12], [7 / 12, 2 / 12], [5 / 6, 7 / 12], [1, 1]])


def blackwell_lp(p, q, p2, q2, slack=1e-9) -> bool:
    """Is there a column-stochastic T with T p = p2 and T q = q2 (up to ``slack``)?"""
    n, m = len(p), len(p2)
    # variables T[i, j] flattened row-major, i in range(m), j in range(n)
    a_eq, b_eq = [], []
    for j in range(n):
        row = np.zeros(m * n)
        row[j::n] = 1.0
        a_eq.append(row)
        b_eq.append(1.0)
    a_ub, b_ub = [], []
    for vec, target in ((p, p2), (q, q2)):
        for i in range(m):
            row = np.zeros(m * n)
            row[i * n:(i + 1) * n] = vec
            a_ub.append(row)
            b_ub.append(target[i] + slack)
            a_ub.append(-row)
            b_ub.append(-target[i] + slack)
    # HiGHS presolve at its default 1e-7 feasibility tolerance rejects some
    # exactly feasible splitting problems, so the tolerance is tightened below the slack
    res = linprog(np.zeros(m * n), A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=b_eq,
                  bounds=(0, None), method="highs",
                  options={"primal_feasibility_tolerance": 1e-10, "dual_feasibility_tolerance": 1e-10})
    return res.status == 0


def type2_lp(p, q, eps) -> float:
    """min q.t subject to p.t >= 1 - eps, 0 <= t <= 1."""
    res = linprog(q, A_ub=[-np.asarray(p)], b_ub=[-(1 - eps)], bounds=(0, 1), method="highs",
                  options={"primal_feasibility_tolerance": 1e-10, "dual_feasibility_tolerance": 1e-10})
    assert res.status == 0
    return float(res.fun)


def _pos_trace(h):
    w = np.linalg.eigvalsh((h + h.conj().T) / 2)
    return float(np.sum(w[w > 0]))


def type2_dual_grid(rho, sigma, eps, points=4001) -> float:
    """Maximize t (1 - eps) - Tr[(t rho - sigma)_+] over a log grid in t, then refine.

    The objective is concave in t, so a bounded scalar search inside the
    best grid cell converges to the optimum.
    """
    def h(t):
        return t * (1 - eps) - _pos_trace(t * rho - sigma)

    hi = 1.0
    while (1 - eps) - _slope_part(hi, rho, sigma) > 0:
        hi *= 2
    grid = np.concatenate([[0.0], np.geomspace(1e-8 * hi, hi, points)])
    vals = np.array([h(t) for t in grid])
    k = int(np.argmax(vals))
    lo_t, hi_t = grid[max(k - 1, 0)], grid[min(k + 1, len(grid) - 1)]
    res = minimize_scalar(lambda t: -h(t), bounds=(lo_t, hi_t), method="bounded",
                          options={"xatol": 1e-14 * max(hi_t, 1.0)})
    return max(float(vals[k]), -float(res.fun))


def _slope_part(t, rho, sigma):
    w, u = np.linalg.eigh(t * rho - sigma)
    v = u[:, w > 0]
    return float(np.real(np.trace(v.conj().T @ rho @ v)))


def type2_sdp(rho, sigma, eps) -> float:
    import cvxpy as cp

    d = rho.shape[0]
    e = cp.Variable((d, d), hermitian=True)
    cons = [e >> 0, np.eye(d) - e >> 0, cp.real(cp.trace(rho @ e)) >= 1 - eps]
    prob = cp.Problem(cp.Minimize(cp.real(cp.trace(sigma @ e))), cons)
    prob.solve(solver=cp.CLARABEL)
    return float(prob.value)


def dmax_bisection(jm, jn, iters=200) -> float:
    """log2 of the least t with t J_N - J_M >= 0, by bisection on the smallest eigenvalue.

    The feasibility slack is the eigensolver's rounding level; a fixed larger
    slack biases t by slack / <v|J_N|v>, which is visible when J_N is nearly
    singular.
    """
    scale = np.linalg.norm(jn, 2)
    noise = 8 * np.finfo(float).eps * jn.shape[0]

    def feasible(t):
        return np.linalg.eigvalsh(t * jn - jm)[0] >= -noise * (t * scale + 1.0)

    lo, hi = 0.0, 1.0
    while not feasible(hi):
        hi *= 2
        if hi > 1e12:
            return math.inf
    for _ in range(iters):
        mid = (lo + hi) / 2
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    return math.log2(hi)


def kl_mp(p, q, dps=50) -> float:
    mpmath.mp.dps = dps
    total = mpmath.mpf(0)
    for a, b in zip(p, q):
        if a > 0:
            if b == 0:
                return math.inf
            total += mpmath.mpf(a) * mpmath.log(mpmath.mpf(a) / mpmath.mpf(b), 2)
    return float(total)


def renyi_mp(p, q, alpha, dps=50) -> float:
    mpmath.mp.dps = dps
    s = mpmath.fsum(mpmath.mpf(a) ** alpha * mpmath.mpf(b) ** (1 - alpha)
                    for a, b in zip(p, q) if a > 0 and b > 0)
    return float(mpmath.log(s, 2) / (alpha - 1))


def umegaki_full_rank(rho, sigma) -> float:
    val = np.trace(rho @ (sla.logm(rho) - sla.logm(sigma))).real
    return float(val / math.log(2))


def sandwiched_full_rank(rho, sigma, alpha) -> float:
    s = sla.fractional_matrix_power(sigma, (1 - alpha) / (2 * alpha))
    inner = s @ rho @ s
    q = np.trace(sla.fractional_matrix_power(inner, alpha)).real
    return float(math.log2(q) / (alpha - 1))


def geometric_mean_full_rank(x, y, alpha):
    ys = sla.sqrtm(y)
    yis = np.linalg.inv(ys)
    return ys @ sla.fractional_matrix_power(yis @ x @ yis, alpha) @ ys


def geometric_state_full_rank(rho, sigma, alpha) -> float:
    if alpha == 1:
        rs = sla.sqrtm(rho)
        g = rs @ sla.logm(rs @ np.linalg.inv(sigma) @ rs) @ rs
        return float(np.trace(g).real / math.log(2))
    q = np.trace(geometric_mean_full_rank(rho, sigma, alpha)).real
    return float(math.log2(q) / (alpha - 1))


def partial_trace_loop(a, dims, keep):
    da, db = dims
    out = np.zeros((da, da) if keep == "A" else (db, db), dtype=complex)
    for i in range(da):
        for j in range(da):
            for k in range(db):
                for l in range(db):
                    v = a[i * db + k, j * db + l]
                    if keep == "A" and k == l:
                        out[i, j] += v
                    if keep == "B" and i == j:
                        out[k, l] += v
    return out


def choi_by_definition(apply, dim_in):
    """J = sum_jk |j><k| (x) N(|j><k|) using only the action of the map."""
    blocks = []
    for j in range(dim_in):
        row = []
        for k in range(dim_in):
            e = np.zeros((dim_in, dim_in), dtype=complex)
            e[j, k] = 1
            row.append(apply(e))
        blocks.append(row)
    return np.block(blocks)


def random_rational_dichotomy(rng, dim, max_num=6):
    counts = rng.integers(1, max_num + 1, size=dim)
    p = rng.dirichlet(np.ones(dim))
    return p, [int(c) for c in counts], np.array([Fraction(int(c), int(counts.sum())) for c in counts])


def greatest_convex_minorant_lp(xs, env):
    """Largest convex f on the grid ``xs`` with f <= env, f(0) = 0, via an LP.

    Maximizing the sum of f over the grid returns the pointwise-largest such
    function, since the pointwise maximum of feasible functions is feasible.
    """
    keep = np.concatenate([[True], np.diff(xs) > 1e-12])
    xs, env = np.asarray(xs)[keep], np.clip(np.asarray(env)[keep], 0, None)
    k = len(xs)
    a_ub, b_ub = [], []
    for i in range(k):
        row = np.zeros(k)
        row[i] = 1
        a_ub.append(row)
        b_ub.append(env[i])
    for i in range(1, k - 1):
        # slope(i-1, i) <= slope(i, i+1)
        h1, h2 = xs[i] - xs[i - 1], xs[i + 1] - xs[i]
        row = np.zeros(k)
        row[i - 1] += 1 / h1
        row[i] -= 1 / h1 + 1 / h2
        row[i + 1] += 1 / h2
        a_ub.append(-row)
        b_ub.append(0.0)
    res = linprog(-np.ones(k), A_ub=a_ub, b_ub=b_ub, bounds=[(0, 0)] + [(None, None)] * (k - 1),
                  method="highs")
    assert res.status == 0, res.message
    return xs, res.x
