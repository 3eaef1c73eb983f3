from fractions import Fraction

import numpy as np
import pytest

from dyndiv.channels import ClassicalChannel, random_stochastic
from dyndiv.classical import dmax_c, kl, renyi
from dyndiv.errors import DimensionMismatch, EmptyList, NotRational, ZeroDenominator
from dyndiv.majorization import (
    Dichotomy,
    channel_kl,
    classical_channel_max_ext,
    classical_channel_min_ext,
    column_dichotomies,
    dichotomy_join,
    equivalent,
    greedy_join,
    lorenz_curve,
    majorization_join,
    rational_flatten,
    relatively_majorizes,
)

import oracles


def rand_dichotomy(rng, d, zeros=False):
    p, q = rng.dirichlet(np.ones(d)), rng.dirichlet(np.ones(d))
    if zeros and d > 1:
        p[rng.integers(0, d)] = 0
        q[rng.integers(0, d)] = 0
        p, q = p / p.sum(), q / q.sum()
    return Dichotomy(p, q)


def majorizes_vec(a, b, tol=1e-12):
    sa, sb = np.cumsum(np.sort(a)[::-1]), np.cumsum(np.sort(b)[::-1])
    return bool(np.all(sa >= sb - tol))


# --- Lorenz curves ---------------------------------------------------------

def test_lorenz_uniform_on_diagonal():
    c = lorenz_curve((np.full(4, 0.25), np.full(4, 0.25)))
    assert np.allclose(c.a, c.b) and len(c.vertices) == 5


def test_lorenz_two_atoms():
    c = lorenz_curve(([1.0, 0.0], [0.5, 0.5]))
    assert np.allclose(c.vertices, [[0, 0], [1, 0.5], [1, 1]])


def test_lorenz_example_join_vertices():
    c = lorenz_curve((oracles.EXAMPLE_P, oracles.EXAMPLE_Q))
    assert np.max(np.abs(c.vertices - oracles.EXAMPLE_VERTICES)) <= 1e-12


def test_lorenz_curves_convex(rng):
    for _ in range(100):
        c = lorenz_curve(rand_dichotomy(rng, int(rng.integers(1, 6)), zeros=True))
        assert c.is_convex()
        assert np.allclose(c.vertices[0], 0) and np.allclose(c.vertices[-1], 1)
        assert np.all(np.diff(c.a) >= 0) and np.all(np.diff(c.b) >= 0)


def test_lorenz_csv():
    text = lorenz_curve(([1.0, 0.0], [0.5, 0.5])).to_csv()
    assert text.splitlines() == ["0,0", "1,0.5", "1,1"]


# --- Blackwell order --------------------------------------------------------

def test_reflexive_and_witnessed(rng):
    for _ in range(50):
        d = rand_dichotomy(rng, int(rng.integers(1, 6)))
        assert relatively_majorizes(d, d)
        e = rng.dirichlet(np.ones(int(rng.integers(1, 6))), size=d.dim).T
        assert relatively_majorizes(d, (e @ d.p, e @ d.q))


def test_transitive_on_chains(rng):
    for _ in range(30):
        d1 = rand_dichotomy(rng, 4)
        e1 = rng.dirichlet(np.ones(3), size=4).T
        d2 = Dichotomy(e1 @ d1.p, e1 @ d1.q)
        e2 = rng.dirichlet(np.ones(3), size=3).T
        d3 = Dichotomy(e2 @ d2.p, e2 @ d2.q)
        assert relatively_majorizes(d1, d2) and relatively_majorizes(d2, d3)
        assert relatively_majorizes(d1, d3)


def test_blackwell_matches_lp(rng):
    for i in range(150):
        d = rand_dichotomy(rng, int(rng.integers(1, 6)), zeros=i % 3 == 0)
        if i % 2:
            e = rng.dirichlet(np.ones(int(rng.integers(1, 6))), size=d.dim).T
            d2 = Dichotomy(e @ d.p, e @ d.q)
        else:
            d2 = rand_dichotomy(rng, int(rng.integers(1, 6)))
        for a, b in ((d, d2), (d2, d)):
            assert relatively_majorizes(a, b) == oracles.blackwell_lp(a.p, a.q, b.p, b.q)


# --- rational flattening ------------------------------------------------------

def test_flatten_example():
    r = rational_flatten([0.75, 0.25], [2, 1])
    assert np.allclose(r.p, [3 / 8, 3 / 8, 1 / 4]) and np.allclose(r.q, np.full(3, 1 / 3))
    r2 = rational_flatten([0.75, 0.25], [Fraction(2, 3), Fraction(1, 3)])
    assert np.allclose(r2.p, r.p)


def test_flatten_uniform_is_identity(rng):
    p = rng.dirichlet(np.ones(4))
    r = rational_flatten(p, [1, 1, 1, 1])
    assert np.allclose(r.p, p)


def test_flatten_equivalence(rng):
    for _ in range(30):
        d = int(rng.integers(1, 5))
        p, counts, fr = oracles.random_rational_dichotomy(rng, d)
        r = rational_flatten(p, counts)
        q = np.array([float(f) for f in fr])
        assert equivalent((p, q), r)


def test_flatten_errors():
    with pytest.raises(NotRational):
        rational_flatten([0.5, 0.5], [0.3, 0.7])
    with pytest.raises(ZeroDenominator):
        rational_flatten([0.5, 0.5], [0, 3])


# --- majorization join -------------------------------------------------------

def test_majorization_join_examples():
    assert np.allclose(majorization_join([[1, 0], [0.5, 0.5]]), [1, 0])
    assert np.allclose(majorization_join([[0.6, 0.2, 0.2], [0.5, 0.5, 0]]), [0.6, 0.4, 0])
    assert np.allclose(majorization_join([[0.2, 0.5, 0.3]]), [0.5, 0.3, 0.2])


def test_majorization_join_nonconcave_envelope():
    u = majorization_join([[0.5, 0.1, 0.1, 0.1, 0.1, 0.1], [0.35, 0.35, 0.3, 0, 0, 0]])
    assert np.allclose(u, [0.5, 0.25, 0.25, 0, 0, 0])
    assert np.all(np.diff(u) <= 1e-15)


def test_majorization_join_is_least_upper_bound(rng):
    for _ in range(100):
        d = int(rng.integers(2, 6))
        rs = [rng.dirichlet(np.ones(d) * rng.uniform(0.2, 2)) for _ in range(int(rng.integers(1, 4)))]
        u = majorization_join(rs)
        assert abs(u.sum() - 1) <= 1e-12
        assert all(majorizes_vec(u, r) for r in rs)
        # other upper bounds: mixtures of the join with the top element, and each sorted input with mass moved up
        top = np.zeros(d)
        top[0] = 1
        for t in (0.0, 0.3, 1.0):
            assert majorizes_vec((1 - t) * np.sort(u)[::-1] + t * top, u)


def test_majorization_join_errors():
    with pytest.raises(EmptyList):
        majorization_join([])
    with pytest.raises(DimensionMismatch):
        majorization_join([[1.0], [0.5, 0.5]])


# --- dichotomy join and extensions ------------------------------------------

def test_example_join():
    j = dichotomy_join(column_dichotomies(oracles.EXAMPLE_M, oracles.EXAMPLE_N))
    assert np.max(np.abs(j.p - oracles.EXAMPLE_P)) <= 1e-12
    assert np.max(np.abs(j.q - oracles.EXAMPLE_Q)) <= 1e-12


def test_join_singleton():
    d = Dichotomy([0.1, 0.6, 0.3], [0.3, 0.3, 0.4])
    j = dichotomy_join([d])
    assert equivalent(j, d)
    assert np.allclose(lorenz_curve(j).vertices, lorenz_curve(d).vertices)


def test_join_empty():
    with pytest.raises(EmptyList):
        dichotomy_join([])


def test_join_is_least_upper_bound(rng):
    for _ in range(200):
        nx, ny = int(rng.integers(1, 4)), int(rng.integers(2, 5))
        ds = [rand_dichotomy(rng, ny, zeros=rng.random() < 0.3) for _ in range(nx)]
        j = dichotomy_join(ds)
        assert all(relatively_majorizes(j, d) for d in ds)
        curves = [lorenz_curve(d) for d in ds]
        xs = np.unique(np.concatenate([c.function_points()[0] for c in curves] + [[0.0, 1.0]]))
        env = np.min([c(xs) for c in curves], axis=0)
        grid, best = oracles.greatest_convex_minorant_lp(xs, env)
        assert np.max(np.abs(lorenz_curve(j)(grid) - best)) <= 1e-8


def test_join_below_independent_upper_bounds(rng):
    for _ in range(50):
        ds = [rand_dichotomy(rng, 3) for _ in range(2)]
        j = dichotomy_join(ds)
        upper = Dichotomy(np.kron(ds[0].p, ds[1].p), np.kron(ds[0].q, ds[1].q))
        assert all(relatively_majorizes(upper, d) for d in ds)
        assert relatively_majorizes(upper, j)


def test_greedy_agrees_on_example():
    g = greedy_join(oracles.EXAMPLE_M, oracles.EXAMPLE_N)
    assert np.allclose(g.p, oracles.EXAMPLE_P) and np.allclose(g.q, oracles.EXAMPLE_Q)


def test_greedy_counterexample():
    # Positive slope denominators throughout, yet the greedy output does not
    # majorize the first column: it only compares the z-th vertex of each curve.
    m = np.array([[3 / 8, 3 / 10], [1 / 2, 3 / 10], [1 / 8, 2 / 5]])
    n = np.array([[2 / 5, 5 / 11], [2 / 5, 2 / 11], [1 / 5, 4 / 11]])
    g = greedy_join(m, n)
    assert g is not None
    assert not relatively_majorizes(g, (m[:, 0], n[:, 0]))
    j = dichotomy_join(column_dichotomies(m, n))
    assert all(relatively_majorizes(j, d) for d in column_dichotomies(m, n))


def test_min_ext_example():
    want = max(oracles.kl_mp(oracles.EXAMPLE_M[:, x], oracles.EXAMPLE_N[:, x]) for x in range(2))
    assert classical_channel_min_ext("kl", oracles.EXAMPLE_M, oracles.EXAMPLE_N).value == pytest.approx(want, abs=1e-12)
    assert channel_kl(oracles.EXAMPLE_M, oracles.EXAMPLE_N).value == pytest.approx(want, abs=1e-12)
    assert classical_channel_min_ext("dmax", oracles.EXAMPLE_M, oracles.EXAMPLE_N).value == pytest.approx(np.log2(5))


def test_max_ext_example():
    want = oracles.kl_mp(oracles.EXAMPLE_P, oracles.EXAMPLE_Q)
    assert classical_channel_max_ext("kl", oracles.EXAMPLE_M, oracles.EXAMPLE_N).value == pytest.approx(want, abs=1e-12)


def test_extensions_vanish_on_equal_channels(rng):
    m = random_stochastic(3, 4, rng)
    assert classical_channel_min_ext("kl", m, m).value == 0
    assert abs(classical_channel_max_ext("kl", m, m).value) <= 1e-12


def test_extension_sandwich_and_dmax_collapse(rng):
    for _ in range(100):
        dims = int(rng.integers(1, 4)), int(rng.integers(2, 5))
        m, n = random_stochastic(*dims, rng), random_stochastic(*dims, rng)
        for div, kw in (("kl", {}), ("renyi", {"alpha": 2.0}), ("dmax", {})):
            lo = classical_channel_min_ext(div, m, n, **kw).value
            hi = classical_channel_max_ext(div, m, n, **kw).value
            assert lo <= hi + 1e-9
        a = classical_channel_min_ext("dmax", m, n).value
        b = classical_channel_max_ext("dmax", m, n).value
        assert abs(a - b) <= 1e-9


def test_max_ext_not_additive_somewhere(rng):
    gaps = []
    for _ in range(40):
        m1, n1 = random_stochastic(2, 2, rng), random_stochastic(2, 2, rng)
        m2, n2 = random_stochastic(2, 2, rng), random_stochastic(2, 2, rng)
        joint = classical_channel_max_ext("kl", m1.tensor(m2), n1.tensor(n2)).value
        parts = classical_channel_max_ext("kl", m1, n1).value + classical_channel_max_ext("kl", m2, n2).value
        gaps.append(joint - parts)
    assert max(gaps) <= 1e-9
    assert min(gaps) < -1e-3


def test_shape_mismatch():
    with pytest.raises(DimensionMismatch):
        classical_channel_min_ext("kl", np.eye(2), np.full((3, 2), 1 / 3))
