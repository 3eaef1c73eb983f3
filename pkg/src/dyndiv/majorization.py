"""Relative majorization of dichotomies and the optimal classical channel extensions.

A dichotomy ``(p, q)`` is summarized by its lower Lorenz curve: sort the atoms
by decreasing ``p_x / q_x`` and accumulate ``(sum p, sum q)``.  The curve is a
convex piecewise-linear function ``b = f(a)`` on ``[0, 1]`` (atoms with
``p_x = 0 < q_x`` add a final vertical segment at ``a = 1``).  ``(p, q)``
relatively majorizes ``(p', q')`` iff ``f`` is nowhere above ``f'``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Integral
from typing import Sequence

import numpy as np

from .channels import ClassicalChannel
from .classical import DivergenceValue, ratio_sorted, resolve_divergence
from .errors import DimensionMismatch, EmptyList, NotRational, ZeroDenominator
from .tolerances import ToleranceConfig, resolve

# slack used when pruning collinear hull points; far below any meaningful curvature
_HULL_EPS = 1e-14
# q mass below this at a = 1 is rounding, not a vertical segment
_TAIL_EPS = 1e-12


@dataclass(frozen=True, eq=False)
class Dichotomy:
    p: np.ndarray
    q: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.p, dtype=float).ravel()
        q = np.asarray(self.q, dtype=float).ravel()
        if p.shape != q.shape:
            raise DimensionMismatch(f"dichotomy vectors differ in length: {p.size} vs {q.size}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @property
    def dim(self) -> int:
        return self.p.size

    def __iter__(self):
        return iter((self.p, self.q))


def as_dichotomy(d) -> Dichotomy:
    return d if isinstance(d, Dichotomy) else Dichotomy(*d)


@dataclass(frozen=True, eq=False)
class LorenzCurve:
    """Vertices ``(a, b)`` from ``(0, 0)`` to ``(1, 1)`` as a ``(k, 2)`` array."""

    vertices: np.ndarray

    @property
    def a(self) -> np.ndarray:
        return self.vertices[:, 0]

    @property
    def b(self) -> np.ndarray:
        return self.vertices[:, 1]

    def function_points(self):
        """Abscissas and the lowest ordinate at each (vertical segments collapsed)."""
        a, b = self.a, self.b
        keep = np.ones(a.size, dtype=bool)
        keep[1:] = a[1:] != a[:-1]
        return a[keep], b[keep]

    def __call__(self, x):
        xs, ys = self.function_points()
        return np.interp(x, xs, ys)

    def slopes(self) -> np.ndarray:
        da = np.diff(self.a)
        db = np.diff(self.b)
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(da > 0, db / np.where(da > 0, da, 1.0), np.inf)

    def is_convex(self, tol: float = 1e-9) -> bool:
        s = self.slopes()
        finite = s[np.isfinite(s)]
        ok = bool(np.all(np.diff(finite) >= -tol))
        # vertical segments may only appear at the end
        inf_idx = np.flatnonzero(~np.isfinite(s))
        return ok and bool(np.all(inf_idx >= s.size - inf_idx.size))

    def to_csv(self, digits: int = 12) -> str:
        return "".join(f"{a:.{digits}g},{b:.{digits}g}\n" for a, b in self.vertices)


def lorenz_curve(d) -> LorenzCurve:
    p, q = ratio_sorted(*as_dichotomy(d))
    a = np.concatenate([[0.0], np.cumsum(p)])
    b = np.concatenate([[0.0], np.cumsum(q)])
    return LorenzCurve(np.column_stack([a, b]))


def relatively_majorizes(d, d_prime, tol: ToleranceConfig | None = None) -> bool:
    """True iff ``d`` relatively majorizes ``d_prime`` (Blackwell order).

    The two piecewise-linear curves are compared on the union of their
    abscissas, where their difference attains its extremes.
    """
    tol = resolve(tol)
    c1, c2 = lorenz_curve(d), lorenz_curve(d_prime)
    xs = np.union1d(c1.function_points()[0], c2.function_points()[0])
    xs = xs[(xs >= 0) & (xs <= 1)]
    return bool(np.all(c1(xs) <= c2(xs) + tol.eq))


def equivalent(d1, d2, tol: ToleranceConfig | None = None) -> bool:
    return relatively_majorizes(d1, d2, tol) and relatively_majorizes(d2, d1, tol)


def _as_fraction_list(q) -> list:
    out = []
    for v in q:
        if isinstance(v, Fraction):
            out.append(v)
        elif isinstance(v, Integral):
            out.append(Fraction(int(v)))
        elif isinstance(v, float) and v.is_integer():
            out.append(Fraction(int(v)))
        else:
            raise NotRational(f"entry {v!r} is neither an integer numerator nor a Fraction")
    return out


def rational_flatten(p, q) -> Dichotomy:
    """Flatten ``(p, q)`` with rational ``q`` to an equivalent ``(r, uniform)``.

    ``q`` is given either as integer numerators ``n_x`` (denominator
    ``n = sum n_x``) or as :class:`fractions.Fraction` values.  Atom ``x``
    is split into ``n_x`` copies of ``p_x / n_x``.
    """
    p = np.asarray(p, dtype=float).ravel()
    fr = _as_fraction_list(q)
    if len(fr) != p.size:
        raise DimensionMismatch("p and q differ in length")
    if all(f.denominator == 1 for f in fr):
        counts = [int(f) for f in fr]
    else:
        den = np.lcm.reduce([f.denominator for f in fr])
        counts = [int(f * den) for f in fr]
    if any(c <= 0 for c in counts):
        raise ZeroDenominator("every numerator n_x must be a positive integer")
    n = sum(counts)
    r = np.concatenate([np.full(c, px / c) for px, c in zip(p, counts)])
    return Dichotomy(r, np.full(n, 1.0 / n))


def _upper_concave_hull(y: np.ndarray) -> np.ndarray:
    """Least concave majorant of points (k, y_k), k = 0..len(y)-1, evaluated on the grid."""
    hull = []
    for k, v in enumerate(y):
        while len(hull) >= 2:
            (k1, v1), (k2, v2) = hull[-2], hull[-1]
            if (v2 - v1) * (k - k1) <= (v - v1) * (k2 - k1) + _HULL_EPS:
                hull.pop()
            else:
                break
        hull.append((k, v))
    hk, hv = zip(*hull)
    return np.interp(np.arange(len(y)), hk, hv)


def majorization_join(rs: Sequence) -> np.ndarray:
    """Least upper bound of probability vectors in the majorization order.

    Cumulative maxima of the sorted partial sums, made concave, then
    differenced.  When the cumulative maxima are already concave this is
    exactly ``u_x = Omega_x - Omega_{x-1}``.
    """
    if len(rs) == 0:
        raise EmptyList("need at least one vector")
    arr = [np.asarray(r, dtype=float).ravel() for r in rs]
    if any(r.size != arr[0].size for r in arr):
        raise DimensionMismatch("vectors differ in length")
    sums = np.array([np.cumsum(np.sort(r)[::-1]) for r in arr])
    omega = np.concatenate([[0.0], sums.max(axis=0)])
    omega = _upper_concave_hull(omega)
    return np.diff(omega)


def _lower_convex_hull(x: np.ndarray, y: np.ndarray):
    hull = []
    for xi, yi in zip(x, y):
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop middle point if it lies on or above the chord
            if (y2 - y1) * (xi - x1) >= (yi - y1) * (x2 - x1) - _HULL_EPS:
                hull.pop()
            else:
                break
        hull.append((xi, yi))
    return hull


def _dichotomy_from_vertices(verts) -> Dichotomy:
    v = np.asarray(verts, dtype=float)
    p = np.diff(v[:, 0])
    q = np.diff(v[:, 1])
    keep = (p > 0) | (q > 0)
    return Dichotomy(np.clip(p[keep], 0, None), np.clip(q[keep], 0, None))


def dichotomy_join(ds: Sequence) -> Dichotomy:
    """Least upper bound of dichotomies in the relative majorization order.

    The Lorenz curve of the result is the greatest convex minorant of the
    pointwise minimum of the input curves.  Kinks of that minimum that are not
    input vertices are concave, so sampling it at the input abscissas is exact.
    """
    if len(ds) == 0:
        raise EmptyList("need at least one dichotomy")
    curves = [lorenz_curve(d) for d in ds]
    xs = np.unique(np.concatenate([c.function_points()[0] for c in curves] + [[0.0, 1.0]]))
    xs = xs[(xs >= 0) & (xs <= 1)]
    env = np.min([c(xs) for c in curves], axis=0)
    hull = _lower_convex_hull(xs, env)
    if hull[-1][1] < 1.0 - _TAIL_EPS:
        hull.append((1.0, 1.0))
    return _dichotomy_from_vertices(hull)


def greedy_join(m, n):
    """Vertex-by-vertex greedy construction of the optimal dichotomy.

    Starting at the origin, step ``z`` picks among the ``z``-th Lorenz
    vertices of all columns the one reached with the smallest slope.  Returns
    ``None`` when some slope denominator is not positive (the construction
    is then undefined); otherwise a dichotomy of length ``|Y|``.
    """
    m, n = _channels(m, n)
    cols = []
    for x in range(m.dim_in):
        mp, nq = m.column(x), n.column(x)
        if np.any((mp == 0) & (nq == 0)):
            return None
        ps, qs = ratio_sorted(mp, nq)
        cols.append((np.cumsum(ps), np.cumsum(qs)))
    ny = m.dim_out
    prev = (0.0, 0.0)
    verts = [prev]
    for z in range(ny):
        best = None
        for a, b in cols:
            da = a[z] - prev[0]
            if da <= 0:
                return None
            s = (b[z] - prev[1]) / da
            if best is None or s < best[0]:
                best = (s, (a[z], b[z]))
        prev = best[1]
        verts.append(prev)
    return _dichotomy_from_vertices(verts)


def _channels(m, n):
    m = m if isinstance(m, ClassicalChannel) else ClassicalChannel(m)
    n = n if isinstance(n, ClassicalChannel) else ClassicalChannel(n)
    if m.shape != n.shape:
        raise DimensionMismatch(f"classical channels have different shapes {m.shape} vs {n.shape}")
    return m, n


def column_dichotomies(m, n) -> list:
    m, n = _channels(m, n)
    return [Dichotomy(m.column(x), n.column(x)) for x in range(m.dim_in)]


def classical_channel_min_ext(div, m, n, **params) -> DivergenceValue:
    """Minimal extension: the largest column-wise divergence."""
    f = resolve_divergence(div, **params)
    vals = [f(d.p, d.q) for d in column_dichotomies(m, n)]
    return DivergenceValue(max(v.value for v in vals), all(v.exact for v in vals))


def classical_channel_max_ext(div, m, n, **params) -> DivergenceValue:
    """Maximal extension: the divergence of the join of the column dichotomies."""
    f = resolve_divergence(div, **params)
    joined = dichotomy_join(column_dichotomies(m, n))
    return f(joined.p, joined.q)


def channel_kl(m, n) -> DivergenceValue:
    """The classical-channel relative entropy reducing to KL (max over input letters)."""
    return classical_channel_min_ext("kl", m, n)
