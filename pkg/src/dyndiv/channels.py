"""States, channels, classical channels and superchannels.

Conventions
-----------
* The Choi matrix is unnormalized, ``J = sum_jk |j><k| (x) N(|j><k|)``, so
  ``Tr J = dim_in`` and ``Tr_B J = I_A``.
* Composite systems put the reference first: a bipartite input lives on
  ``R (x) A`` and flattens row-major, ``r * dim_a + a``.
* A superchannel's pre-processing maps ``A' -> R (x) A`` and its
  post-processing maps ``R (x) B -> B'``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import linalg
from .errors import BadDims, DimensionMismatch, InvalidChannel, InvalidState, NotIsometry
from .tolerances import ToleranceConfig, resolve


# ---------------------------------------------------------------------------
# states and probability vectors


def as_state(rho, tol: ToleranceConfig | None = None) -> np.ndarray:
    """Validate a density matrix and return it as a complex array."""
    tol = resolve(tol)
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise InvalidState(f"density matrix must be square, got {rho.shape}")
    try:
        linalg.psd_eig(rho, tol)
    except Exception as exc:
        raise InvalidState(str(exc)) from exc
    if abs(np.trace(rho).real - 1.0) > tol.eq:
        raise InvalidState(f"trace {np.trace(rho).real!r} differs from 1")
    return rho


def as_prob(p, tol: ToleranceConfig | None = None) -> np.ndarray:
    tol = resolve(tol)
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise InvalidState(f"probability vector must be 1-d and nonempty, got shape {p.shape}")
    if np.any(p < -tol.eq) or abs(p.sum() - 1.0) > tol.eq:
        raise InvalidState("entries must be nonnegative and sum to 1")
    return np.clip(p, 0.0, None)


def pure(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).ravel()
    return np.outer(psi, psi.conj())


def basis_state(dim: int, index: int) -> np.ndarray:
    rho = np.zeros((dim, dim), dtype=complex)
    rho[index, index] = 1.0
    return rho


def maximally_mixed(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=complex) / dim


def max_entangled_vector(dim: int) -> np.ndarray:
    """Unnormalized |Omega> = sum_j |j>|j>."""
    return np.eye(dim, dtype=complex).ravel()


# ---------------------------------------------------------------------------
# quantum channels


def _choi_from_kraus(kraus: Sequence[np.ndarray]) -> np.ndarray:
    vecs = np.array([np.asarray(k, dtype=complex).T.ravel() for k in kraus])
    return vecs.T @ vecs.conj()


@dataclass(frozen=True, eq=False)
class QuantumChannel:
    """A CPTP map ``A -> B`` stored by its Choi matrix on ``A (x) B``."""

    dim_in: int
    dim_out: int
    choi: np.ndarray
    kraus: Optional[tuple] = None
    tol: ToleranceConfig = field(default=None, repr=False)

    def __post_init__(self):
        tol = resolve(self.tol)
        object.__setattr__(self, "tol", tol)
        choi = np.asarray(self.choi, dtype=complex)
        n = self.dim_in * self.dim_out
        if self.dim_in < 1 or self.dim_out < 1 or choi.shape != (n, n):
            raise DimensionMismatch(
                f"Choi matrix of shape {choi.shape} does not match {self.dim_in}->{self.dim_out}")
        choi = linalg.hermitize(choi) if linalg.is_hermitian(choi, tol) else choi
        object.__setattr__(self, "choi", choi)
        try:
            linalg.psd_eig(choi, tol)
        except Exception as exc:
            raise InvalidChannel(f"Choi matrix is not completely positive: {exc}") from exc
        marg = linalg.partial_trace(choi, (self.dim_in, self.dim_out), keep="A")
        if np.max(np.abs(marg - np.eye(self.dim_in))) > tol.eq * max(1, self.dim_out):
            raise InvalidChannel("Choi matrix is not trace preserving (Tr_B J != I_A)")
        if self.kraus is not None:
            ks = tuple(np.asarray(k, dtype=complex) for k in self.kraus)
            object.__setattr__(self, "kraus", ks)
            if np.max(np.abs(_choi_from_kraus(ks) - choi)) > tol.eq * max(1, n):
                raise InvalidChannel("Kraus operators do not reproduce the Choi matrix")

    @classmethod
    def from_choi(cls, choi, dim_in: int, dim_out: int, tol: ToleranceConfig | None = None):
        return cls(dim_in, dim_out, np.asarray(choi, dtype=complex), None, tol)

    @classmethod
    def from_kraus(cls, kraus, tol: ToleranceConfig | None = None):
        ks = tuple(np.asarray(k, dtype=complex) for k in kraus)
        if not ks:
            raise InvalidChannel("empty Kraus list")
        dim_out, dim_in = ks[0].shape
        if any(k.shape != (dim_out, dim_in) for k in ks):
            raise DimensionMismatch("Kraus operators have different shapes")
        tol = resolve(tol)
        s = sum(k.conj().T @ k for k in ks)
        if np.max(np.abs(s - np.eye(dim_in))) > tol.eq:
            raise InvalidChannel("sum of K^H K differs from the identity")
        return cls(dim_in, dim_out, _choi_from_kraus(ks), ks, tol)

    @property
    def shape(self) -> tuple:
        return (self.dim_in, self.dim_out)

    def choi_tensor(self) -> np.ndarray:
        """Choi matrix reshaped to ``J[a, b, a', b']``."""
        return self.choi.reshape(self.dim_in, self.dim_out, self.dim_in, self.dim_out)

    def kraus_ops(self) -> tuple:
        if self.kraus is not None:
            return self.kraus
        return choi_to_kraus(self.choi, self.dim_in, self.dim_out, self.tol)

    def __call__(self, rho, dim_ref: int = 1) -> np.ndarray:
        return apply_channel(self, rho, dim_ref)


def choi_to_kraus(choi, dim_in: int, dim_out: int, tol: ToleranceConfig | None = None) -> tuple:
    w, u = linalg.psd_eig(choi, tol)
    ops = []
    for lam, vec in zip(w, u.T):
        if lam <= 0:
            continue
        ops.append(np.sqrt(lam) * vec.reshape(dim_in, dim_out).T)
    return tuple(ops)


def apply_choi(choi_t: np.ndarray, x: np.ndarray, dim_ref: int) -> np.ndarray:
    """Apply the linear map with Choi tensor ``J[a,b,a',b']`` to an operator on R (x) A."""
    da, db = choi_t.shape[0], choi_t.shape[1]
    xt = np.asarray(x).reshape(dim_ref, da, dim_ref, da)
    out = np.einsum("rjsk,jbkc->rbsc", xt, choi_t)
    return out.reshape(dim_ref * db, dim_ref * db)


def apply_channel(n: QuantumChannel, rho, dim_ref: int = 1, method: str = "choi") -> np.ndarray:
    """Apply ``id_R (x) N`` to an operator on ``R (x) A``."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (dim_ref * n.dim_in,) * 2:
        raise DimensionMismatch(
            f"operator of shape {rho.shape} is not on R(x)A with |R|={dim_ref}, |A|={n.dim_in}")
    if method == "choi":
        return apply_choi(n.choi_tensor(), rho, dim_ref)
    if method == "kraus":
        eye = np.eye(dim_ref)
        out = np.zeros((dim_ref * n.dim_out,) * 2, dtype=complex)
        for k in n.kraus_ops():
            kk = np.kron(eye, k)
            out += kk @ rho @ kk.conj().T
        return out
    raise ValueError(f"unknown method {method!r}")


def compose(second: QuantumChannel, first: QuantumChannel) -> QuantumChannel:
    """Choi matrix of ``second o first``."""
    if first.dim_out != second.dim_in:
        raise DimensionMismatch(f"cannot compose {first.shape} with {second.shape}")
    j = np.einsum("jbkc,bxcy->jxky", first.choi_tensor(), second.choi_tensor())
    d = first.dim_in * second.dim_out
    return QuantumChannel(first.dim_in, second.dim_out, j.reshape(d, d), None, first.tol)


def tensor_channels(m: QuantumChannel, n: QuantumChannel) -> QuantumChannel:
    """Choi matrix of ``M (x) N`` on ``(A1 A2) -> (B1 B2)``."""
    a1, b1 = m.shape
    a2, b2 = n.shape
    j = np.einsum("abcd,efgh->aebfcgdh", m.choi_tensor(), n.choi_tensor())
    d = a1 * a2 * b1 * b2
    return QuantumChannel(a1 * a2, b1 * b2, j.reshape(d, d), None, m.tol)


def identity_channel(dim: int, tol: ToleranceConfig | None = None) -> QuantumChannel:
    return QuantumChannel.from_kraus([np.eye(dim)], tol)


def make_replacement(sigma, dim_in: int, tol: ToleranceConfig | None = None) -> QuantumChannel:
    """R_sigma(w) = Tr[w] sigma, with Choi ``I_A (x) sigma``."""
    if dim_in < 1:
        raise BadDims("dim_in must be at least 1")
    sigma = as_state(sigma, tol)
    return QuantumChannel(dim_in, sigma.shape[0], np.kron(np.eye(dim_in), sigma), None, tol)


def completely_randomizing(dim_in: int, dim_out: int, tol: ToleranceConfig | None = None) -> QuantumChannel:
    return make_replacement(maximally_mixed(dim_out), dim_in, tol)


def make_isometry_channel(v, tol: ToleranceConfig | None = None) -> QuantumChannel:
    tol = resolve(tol)
    v = np.asarray(v, dtype=complex)
    if v.ndim != 2 or v.shape[0] < v.shape[1]:
        raise NotIsometry(f"isometry must be |B|x|A| with |B| >= |A|, got {v.shape}")
    if np.max(np.abs(v.conj().T @ v - np.eye(v.shape[1]))) > tol.eq:
        raise NotIsometry("V^H V differs from the identity")
    return QuantumChannel.from_kraus([v], tol)


def state_as_channel(rho, tol: ToleranceConfig | None = None) -> QuantumChannel:
    """A state viewed as a channel with trivial input."""
    rho = as_state(rho, tol)
    return QuantumChannel(1, rho.shape[0], rho, None, tol)


def channel_is_isometry(n: QuantumChannel) -> bool:
    return linalg.rank(n.choi, n.tol) == 1


# ---------------------------------------------------------------------------
# classical channels


@dataclass(frozen=True, eq=False)
class ClassicalChannel:
    """Column-stochastic matrix ``N[y, x] = N(y|x)``."""

    matrix: np.ndarray
    tol: ToleranceConfig = field(default=None, repr=False)

    def __post_init__(self):
        tol = resolve(self.tol)
        object.__setattr__(self, "tol", tol)
        m = np.asarray(self.matrix, dtype=float)
        if m.ndim != 2 or m.size == 0:
            raise DimensionMismatch(f"classical channel must be a nonempty matrix, got {m.shape}")
        if np.any(m < -tol.eq):
            raise InvalidChannel("classical channel has negative entries")
        if np.max(np.abs(m.sum(axis=0) - 1.0)) > tol.eq:
            raise InvalidChannel("classical channel columns must sum to 1")
        object.__setattr__(self, "matrix", np.clip(m, 0.0, None))

    @property
    def dim_in(self) -> int:
        return self.matrix.shape[1]

    @property
    def dim_out(self) -> int:
        return self.matrix.shape[0]

    @property
    def shape(self) -> tuple:
        return (self.dim_in, self.dim_out)

    def column(self, x: int) -> np.ndarray:
        return self.matrix[:, x]

    def columns(self) -> list:
        return [self.matrix[:, x] for x in range(self.dim_in)]

    def to_quantum(self) -> QuantumChannel:
        """Embed as a channel with diagonal Choi ``sum_x |x><x| (x) diag(N[:, x])``."""
        diag = self.matrix.T.ravel()
        return QuantumChannel(self.dim_in, self.dim_out, np.diag(diag).astype(complex), None, self.tol)

    def tensor(self, other: "ClassicalChannel") -> "ClassicalChannel":
        return ClassicalChannel(np.kron(self.matrix, other.matrix), self.tol)

    @classmethod
    def from_quantum(cls, n: QuantumChannel) -> "ClassicalChannel":
        """Inverse of :meth:`to_quantum`; requires a diagonal Choi matrix."""
        d = np.diag(n.choi)
        if np.max(np.abs(n.choi - np.diag(d))) > n.tol.eq:
            raise InvalidChannel("channel is not classical (Choi matrix is not diagonal)")
        return cls(d.real.reshape(n.dim_in, n.dim_out).T, n.tol)

    @classmethod
    def from_columns(cls, columns, tol: ToleranceConfig | None = None) -> "ClassicalChannel":
        return cls(np.column_stack([np.asarray(c, dtype=float) for c in columns]), tol)


def as_channel(n) -> QuantumChannel:
    return n.to_quantum() if isinstance(n, ClassicalChannel) else n


# ---------------------------------------------------------------------------
# superchannels


@dataclass(frozen=True, eq=False)
class Superchannel:
    """Theta[N] = post o (id_R (x) N) o pre."""

    pre: QuantumChannel
    post: QuantumChannel
    dim_r: int

    def __post_init__(self):
        if self.dim_r < 1 or self.pre.dim_out % self.dim_r or self.post.dim_in % self.dim_r:
            raise DimensionMismatch(
                f"pre output {self.pre.dim_out} / post input {self.post.dim_in} "
                f"are not multiples of |R|={self.dim_r}")

    @property
    def dim_a(self) -> int:
        return self.pre.dim_out // self.dim_r

    @property
    def dim_b(self) -> int:
        return self.post.dim_in // self.dim_r

    @property
    def dim_a_prime(self) -> int:
        return self.pre.dim_in

    @property
    def dim_b_prime(self) -> int:
        return self.post.dim_out

    def __call__(self, n) -> QuantumChannel:
        return superchannel_apply(self, n)


def identity_superchannel(dim_a: int, dim_b: int) -> Superchannel:
    return Superchannel(identity_channel(dim_a), identity_channel(dim_b), 1)


def superchannel_apply(theta: Superchannel, n) -> QuantumChannel:
    """Choi matrix of ``F o (id_R (x) N) o E``; classical input stays quantum-embedded."""
    n = as_channel(n)
    if n.shape != (theta.dim_a, theta.dim_b):
        raise DimensionMismatch(
            f"superchannel acts on {theta.dim_a}->{theta.dim_b} channels, got {n.shape}")
    r, a, b = theta.dim_r, theta.dim_a, theta.dim_b
    ap, bp = theta.dim_a_prime, theta.dim_b_prime
    je = theta.pre.choi.reshape(ap, r, a, ap, r, a)
    jf = theta.post.choi.reshape(r, b, bp, r, b, bp)
    jn = n.choi_tensor()
    x = np.einsum("jrakst,aBtC->jrBksC", je, jn)
    out = np.einsum("jrBksC,rBxsCy->jxky", x, jf)
    d = ap * bp
    return QuantumChannel(ap, bp, out.reshape(d, d), None, n.tol)


def compose_superchannels(outer: Superchannel, inner: Superchannel) -> Superchannel:
    """The superchannel ``outer o inner`` (inner applied first); reference is R_outer (x) R_inner."""
    if (outer.dim_a, outer.dim_b) != (inner.dim_a_prime, inner.dim_b_prime):
        raise DimensionMismatch("superchannels do not compose")
    r2 = outer.dim_r
    pre = compose(tensor_channels(identity_channel(r2), inner.pre), outer.pre)
    post = compose(outer.post, tensor_channels(identity_channel(r2), inner.post))
    return Superchannel(pre, post, r2 * inner.dim_r)


# ---------------------------------------------------------------------------
# random sampling


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _ginibre(rng, rows, cols) -> np.ndarray:
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2)


def haar_isometry(dim_out: int, dim_in: int, seed) -> np.ndarray:
    """Haar-random isometry (QR of a Ginibre matrix with the phase fix)."""
    rng = _rng(seed)
    q, r = np.linalg.qr(_ginibre(rng, dim_out, dim_in))
    d = np.diag(r)
    return q * (d / np.abs(d))


def haar_unitary(dim: int, seed) -> np.ndarray:
    return haar_isometry(dim, dim, seed)


def random_pure_state(dim: int, seed) -> np.ndarray:
    v = _ginibre(_rng(seed), dim, 1).ravel()
    return v / np.linalg.norm(v)


def random_density_matrix(dim: int, seed, rank: int | None = None) -> np.ndarray:
    g = _ginibre(_rng(seed), dim, rank or dim)
    rho = g @ g.conj().T
    return linalg.hermitize(rho / np.trace(rho).real)


def random_channel(dim_in: int, dim_out: int, seed, dim_env: int | None = None,
                   tol: ToleranceConfig | None = None) -> QuantumChannel:
    env = dim_env or dim_in * dim_out
    v = haar_isometry(dim_out * env, dim_in, seed)
    vt = v.reshape(dim_out, env, dim_in)
    kraus = [vt[:, e, :] for e in range(env)]
    return QuantumChannel.from_kraus(kraus, tol)


def random_stochastic(dim_in: int, dim_out: int, seed, tol: ToleranceConfig | None = None) -> ClassicalChannel:
    rng = _rng(seed)
    m = rng.dirichlet(np.ones(dim_out), size=dim_in).T
    return ClassicalChannel(m, tol)


def random_prob(dim: int, seed) -> np.ndarray:
    return _rng(seed).dirichlet(np.ones(dim))


def random_superchannel(dim_a_prime: int, dim_a: int, dim_b: int, dim_b_prime: int,
                        dim_r: int, seed, tol: ToleranceConfig | None = None) -> Superchannel:
    rng = _rng(seed)
    pre = random_channel(dim_a_prime, dim_r * dim_a, rng, tol=tol)
    post = random_channel(dim_r * dim_b, dim_b_prime, rng, tol=tol)
    return Superchannel(pre, post, dim_r)


def random_classical_superchannel(dim_a_prime: int, dim_a: int, dim_b: int, dim_b_prime: int,
                                  dim_r: int, seed, tol: ToleranceConfig | None = None) -> Superchannel:
    """Superchannel whose pre/post-processing are stochastic maps (diagonal Chois)."""
    rng = _rng(seed)
    pre = random_stochastic(dim_a_prime, dim_r * dim_a, rng, tol).to_quantum()
    post = random_stochastic(dim_r * dim_b, dim_b_prime, rng, tol).to_quantum()
    return Superchannel(pre, post, dim_r)


def random_isometry_channel(dim_in: int, dim_out: int, seed, tol: ToleranceConfig | None = None) -> QuantumChannel:
    if dim_out < dim_in:
        raise BadDims("isometry needs dim_out >= dim_in")
    return make_isometry_channel(haar_isometry(dim_out, dim_in, seed), tol)


_SAMPLERS = {
    "pure_state": (1, random_pure_state),
    "mixed_state": (1, random_density_matrix),
    "prob": (1, random_prob),
    "channel": (2, random_channel),
    "stochastic": (2, random_stochastic),
    "isometry": (2, random_isometry_channel),
    "superchannel": (5, random_superchannel),
    "classical_superchannel": (5, random_classical_superchannel),
}


def sample_random(kind: str, dims, seed):
    """Deterministic random object of the requested kind.

    ``dims`` is ``(d,)`` for states, ``(dim_in, dim_out)`` for channels,
    stochastic matrices and isometries, and ``(|A'|, |A|, |B|, |B'|, |R|)``
    for superchannels.
    """
    try:
        arity, fn = _SAMPLERS[kind]
    except KeyError:
        raise BadDims(f"unknown sample kind {kind!r}") from None
    dims = (dims,) if isinstance(dims, (int, np.integer)) else tuple(dims)
    if len(dims) != arity or any(int(d) < 1 for d in dims):
        raise BadDims(f"{kind} needs {arity} positive dimensions, got {dims}")
    return fn(*(int(d) for d in dims), seed)
