import numpy as np
import pytest

from dyndiv import linalg
from dyndiv.channels import random_density_matrix
from dyndiv.errors import DimensionMismatch, NotHermitian, NotPSD

import oracles


def rand_herm(rng, d):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return (g + g.conj().T) / 2


def test_eig_identity():
    w, u = linalg.hermitian_eig(np.eye(3))
    assert np.allclose(w, 1)
    assert np.allclose(u @ np.diag(w) @ u.conj().T, np.eye(3))


def test_eig_diagonal_sorted_descending():
    w, u = linalg.hermitian_eig(np.diag([-1.0, 2.0]))
    assert np.allclose(w, [2, -1])
    assert np.allclose(np.abs(u), [[0, 1], [1, 0]])


def test_eig_reconstruction_random(rng):
    for _ in range(20):
        a = rand_herm(rng, 4)
        w, u = linalg.hermitian_eig(a)
        assert np.max(np.abs(u @ np.diag(w) @ u.conj().T - a)) <= 1e-10
        assert np.max(np.abs(u.conj().T @ u - np.eye(4))) <= 1e-10
        assert np.all(np.diff(w) <= 0)
        assert abs(w.sum() - np.trace(a).real) <= 1e-9 * abs(np.trace(a)) + 1e-9


def test_eig_deterministic(rng):
    a = rand_herm(rng, 5)
    w1, u1 = linalg.hermitian_eig(a)
    w2, u2 = linalg.hermitian_eig(a.copy())
    assert np.array_equal(w1, w2) and np.array_equal(u1, u2)


def test_eig_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        linalg.hermitian_eig(np.array([[0, 1], [0, 0]]))


def test_fn_on_support_pseudo_inverse():
    out = linalg.fn_on_support(np.diag([2.0, 0.0]), "inverse")
    assert np.allclose(out, np.diag([0.5, 0.0]))


def test_log2_identity_is_zero():
    assert np.allclose(linalg.fn_on_support(np.eye(3), "log2"), 0)


def test_sqrt_squares_back(rng):
    for d in (2, 3, 5):
        a = random_density_matrix(d, rng, rank=max(1, d - 1)) * 3
        s = linalg.fn_on_support(a, "sqrt")
        assert np.max(np.abs(s @ s - a)) <= 1e-9
        assert np.max(np.abs(s @ a - a @ s)) <= 1e-9


def test_fn_on_support_powers_and_ln(rng):
    a = random_density_matrix(3, rng)
    w, u = np.linalg.eigh(a)
    expect = u @ np.diag(w ** 0.3) @ u.conj().T
    assert np.allclose(linalg.fn_on_support(a, ("pow", 0.3)), expect, atol=1e-12)
    assert np.allclose(linalg.fn_on_support(a, "ln"), u @ np.diag(np.log(w)) @ u.conj().T, atol=1e-10)


def test_fn_on_support_rejects_negative():
    with pytest.raises(NotPSD):
        linalg.fn_on_support(np.diag([1.0, -0.1]), "sqrt")


def test_psd_noise_is_clamped():
    a = np.diag([1.0, -1e-13])
    assert np.allclose(linalg.fn_on_support(a, "inverse"), np.diag([1.0, 0.0]))
    assert linalg.rank(a) == 1


def test_support_projector_examples(rng):
    assert np.allclose(linalg.support_projector(np.diag([0.7, 0.3, 0.0])), np.diag([1, 1, 0]))
    assert np.allclose(linalg.support_projector(random_density_matrix(3, rng)), np.eye(3))
    psi = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    psi /= np.linalg.norm(psi)
    proj = np.outer(psi, psi.conj())
    p = linalg.support_projector(proj)
    assert np.max(np.abs(p - proj)) <= 1e-12
    assert np.max(np.abs(p @ p - p)) <= 1e-9
    assert np.max(np.abs(p - p.conj().T)) == 0


def test_support_contained():
    assert linalg.support_contained(np.diag([1.0, 0, 0]), np.diag([0.5, 0.5, 0]))
    assert not linalg.support_contained(np.diag([0, 0, 1.0]), np.diag([0.5, 0.5, 0]))


def test_tensor_product_examples(rng):
    assert np.allclose(linalg.tensor_product(np.eye(2), np.eye(2)), np.eye(4))
    out = linalg.tensor_product(np.diag([1, 0]), np.diag([0.5, 0.5]))
    assert np.allclose(out, np.diag([0.5, 0.5, 0, 0]))
    a, b, c, d = (rng.standard_normal((2, 2)) for _ in range(4))
    lhs = linalg.tensor_product(a, b) @ linalg.tensor_product(c, d)
    assert np.max(np.abs(lhs - linalg.tensor_product(a @ c, b @ d))) <= 1e-12


def test_partial_trace_examples(rng):
    rho, sigma = random_density_matrix(2, rng), 2 * random_density_matrix(3, rng)
    ab = np.kron(rho, sigma)
    assert np.allclose(linalg.partial_trace(ab, (2, 3), keep="A"), 2 * rho)
    assert np.allclose(linalg.partial_trace(ab, (2, 3), keep="B"), sigma)
    omega = np.eye(2).ravel()
    assert np.allclose(linalg.partial_trace(np.outer(omega, omega), (2, 2), "A"), np.eye(2))


def test_partial_trace_matches_loops(rng):
    for dims in ((2, 3), (3, 2), (2, 2)):
        n = dims[0] * dims[1]
        a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        for keep in ("A", "B"):
            assert np.allclose(linalg.partial_trace(a, dims, keep), oracles.partial_trace_loop(a, dims, keep))
        ta = np.trace(linalg.partial_trace(a, dims, "A"))
        assert abs(ta - np.trace(a)) <= 1e-12


def test_partial_trace_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        linalg.partial_trace(np.eye(5), (2, 2))
