"""Dense Hermitian matrix primitives.

All matrix functions act on the support: eigenvalues inside the PSD floor are
clamped to zero and mapped to zero by ``fn_on_support``.  Composite indices
are row-major, ``i_a * dim_b + i_b``.
"""

from __future__ import annotations

from typing import Callable, Sequence, Union

import numpy as np

from .errors import DimensionMismatch, NotHermitian, NotPSD
from .tolerances import ToleranceConfig, resolve

LN2 = np.log(2.0)

FnTag = Union[str, tuple]


def _as_square(a) -> np.ndarray:
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    return a


def is_hermitian(a, tol: ToleranceConfig | None = None) -> bool:
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return False
    return bool(np.max(np.abs(a - a.conj().T), initial=0.0) <= resolve(tol).herm)


def hermitian_eig(a, tol: ToleranceConfig | None = None):
    """Eigenvalues (descending) and unitary eigenvectors of a Hermitian matrix.

    Backed by LAPACK ``heevd`` through :func:`numpy.linalg.eigh`, applied to
    the exactly symmetrized input so the result depends on the input bits only.
    """
    a = _as_square(a)
    tol = resolve(tol)
    if np.max(np.abs(a - a.conj().T), initial=0.0) > tol.herm * max(1.0, np.abs(a).max(initial=0.0)):
        raise NotHermitian("matrix is not Hermitian within tol.herm")
    h = (a + a.conj().T) / 2
    w, u = np.linalg.eigh(h)
    return w[::-1].copy(), u[:, ::-1].copy()


def psd_floor(w: np.ndarray, tol: ToleranceConfig) -> float:
    scale = max(1.0, float(np.max(np.abs(w), initial=0.0)))
    return tol.psd * scale


def psd_eig(a, tol: ToleranceConfig | None = None):
    """Eigen-decomposition of a PSD matrix with near-zero eigenvalues clamped to 0."""
    tol = resolve(tol)
    w, u = hermitian_eig(a, tol)
    floor = psd_floor(w, tol)
    if w.size and w[-1] < -floor:
        raise NotPSD(f"smallest eigenvalue {w[-1]:.3e} is below -{floor:.1e}")
    w = np.where(w > floor, w, 0.0)
    return w, u


def _scalar_fn(f: FnTag) -> Callable[[np.ndarray], np.ndarray]:
    if callable(f):
        return f
    if isinstance(f, tuple):
        kind, alpha = f
        if kind != "pow":
            raise ValueError(f"unknown function tag {f!r}")
        return lambda x: np.power(x, alpha)
    table = {
        "log2": np.log2,
        "ln": np.log,
        "sqrt": np.sqrt,
        "inverse": lambda x: 1.0 / x,
        "inv_sqrt": lambda x: 1.0 / np.sqrt(x),
    }
    try:
        return table[f]
    except KeyError:
        raise ValueError(f"unknown function tag {f!r}") from None


def fn_on_support(a, f: FnTag, tol: ToleranceConfig | None = None) -> np.ndarray:
    """Apply a scalar function to the positive eigenvalues of a PSD matrix.

    ``f`` is one of ``"log2"``, ``"ln"``, ``"sqrt"``, ``"inverse"``,
    ``"inv_sqrt"``, ``("pow", alpha)`` or a vectorized callable.  Eigenvalues
    at or below the PSD floor are sent to zero.
    """
    w, u = psd_eig(a, tol)
    fn = _scalar_fn(f)
    pos = w > 0
    fw = np.zeros_like(w)
    fw[pos] = fn(w[pos])
    return (u * fw) @ u.conj().T


def support_projector(a, tol: ToleranceConfig | None = None) -> np.ndarray:
    w, u = psd_eig(a, tol)
    v = u[:, w > 0]
    return v @ v.conj().T


def rank(a, tol: ToleranceConfig | None = None) -> int:
    w, _ = psd_eig(a, tol)
    return int(np.count_nonzero(w))


def support_contained(a, b, tol: ToleranceConfig | None = None) -> bool:
    """True when supp(a) is inside supp(b), decided by ||(I-P_b) a (I-P_b)|| <= floor."""
    tol = resolve(tol)
    a = _as_square(a)
    b = _as_square(b)
    comp = np.eye(b.shape[0]) - support_projector(b, tol)
    leak = comp @ a @ comp
    scale = max(1.0, float(np.abs(a).max(initial=0.0)))
    return bool(np.linalg.norm(leak, 2) <= tol.psd * scale)


def tensor_product(*mats) -> np.ndarray:
    out = np.asarray(mats[0])
    for m in mats[1:]:
        out = np.kron(out, np.asarray(m))
    return out


def partial_trace(a, dims: Sequence[int], keep: Union[str, int] = "A") -> np.ndarray:
    """Partial trace of an operator on A (x) B; ``keep`` is ``"A"``/0 or ``"B"``/1."""
    a = _as_square(a)
    da, db = (int(d) for d in dims)
    if a.shape[0] != da * db:
        raise DimensionMismatch(f"matrix of size {a.shape[0]} is not on a {da}x{db} system")
    t = a.reshape(da, db, da, db)
    if keep in ("A", 0):
        return np.einsum("ijkj->ik", t)
    if keep in ("B", 1):
        return np.einsum("ijil->jl", t)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def lambda_max(a, tol: ToleranceConfig | None = None) -> float:
    return float(hermitian_eig(a, tol)[0][0])


def lambda_min(a, tol: ToleranceConfig | None = None) -> float:
    return float(hermitian_eig(a, tol)[0][-1])


def hermitize(a) -> np.ndarray:
    a = np.asarray(a)
    return (a + a.conj().T) / 2
