"""Randomized checks of the channel-divergence axioms and their consequences.

Every check returns a *slack*: a number that must not exceed the check's
tolerance (positive slack beyond it is a violation).  :func:`run_suite`
draws instances from per-instance seeds and aggregates the slacks into
:class:`CheckReport` records.

Per-instance seeds are derived with splitmix64::

    seed_i = splitmix64(splitmix64(base_seed ^ crc32(check_name)) + i)

so every instance can be replayed from ``(check_name, base_seed, i)``.
"""

from __future__ import annotations

import math
import zlib
from dataclasses import asdict, dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from . import linalg
from .channel_divergences import (
    OptimizerConfig,
    channel_dmax,
    channel_dmin,
    channel_hyptest,
    channel_umegaki,
    geometric_renyi_channel,
    isometry_max_ext,
)
from .channels import (
    ClassicalChannel,
    QuantumChannel,
    Superchannel,
    as_channel,
    basis_state,
    completely_randomizing,
    identity_superchannel,
    make_replacement,
    maximally_mixed,
    random_channel,
    random_classical_superchannel,
    random_density_matrix,
    random_isometry_channel,
    random_prob,
    random_stochastic,
    random_superchannel,
    state_as_channel,
    superchannel_apply,
    tensor_channels,
)
from .classical import INF, DivergenceValue, dmax_c, dmin_c, hyptest_c, kl, renyi
from .errors import BadConfig, NotFullSupport, NotOrthogonal, ShapeMismatch
from .majorization import classical_channel_max_ext, classical_channel_min_ext
from .states import (
    dmax_q,
    dmin_q,
    geometric_renyi_state,
    hyptest_q,
    sandwiched_renyi,
    umegaki,
)
from .tolerances import DEFAULT_TOL

EQ_TOL = 1e-8
INEQ_TOL = 1e-7
OPT_TOL = 1e-4

MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def instance_seed(base_seed: int, check_name: str, index: int) -> int:
    head = splitmix64((base_seed & MASK64) ^ zlib.crc32(check_name.encode()))
    return splitmix64((head + index) & MASK64)


# ---------------------------------------------------------------------------
# divergence registry


@dataclass(frozen=True)
class ChannelDivergence:
    """A channel divergence together with what the checks may assume about it.

    ``additivity`` is ``"additive"``, ``"subadditive"``, ``"superadditive"`` or
    ``None``; ``domain`` is ``"quantum"`` or ``"classical"`` (classical
    divergences take :class:`ClassicalChannel` arguments).
    """

    name: str
    fn: Callable
    exact: bool = True
    relative_entropy: bool = True
    domain: str = "quantum"
    additivity: Optional[str] = "additive"
    faithful: bool = True

    def __call__(self, m, n) -> DivergenceValue:
        return self.fn(m, n)


def _geo(alpha):
    return lambda m, n: geometric_renyi_channel(m, n, alpha)


def _min_ext(div, **kw):
    return lambda m, n: classical_channel_min_ext(div, m, n, **kw)


def _max_ext(div, **kw):
    return lambda m, n: classical_channel_max_ext(div, m, n, **kw)


GEOMETRIC_ALPHAS = (0.5, 1.0, 1.5, 2.0)


def default_registry(opt: OptimizerConfig | None = None) -> Dict[str, ChannelDivergence]:
    opt = opt or OptimizerConfig(restarts=1, max_iters=30)
    reg = [ChannelDivergence("channel-dmax", channel_dmax)]
    reg += [ChannelDivergence(f"geometric-{a:g}", _geo(a)) for a in GEOMETRIC_ALPHAS]
    reg += [
        ChannelDivergence("min-ext-kl", _min_ext("kl"), domain="classical"),
        ChannelDivergence("min-ext-renyi-0.5", _min_ext("renyi", alpha=0.5), domain="classical"),
        ChannelDivergence("min-ext-renyi-2", _min_ext("renyi", alpha=2.0), domain="classical"),
        ChannelDivergence("min-ext-dmin", _min_ext("dmin"), domain="classical", faithful=False),
        ChannelDivergence("min-ext-dmax", _min_ext("dmax"), domain="classical"),
        ChannelDivergence("max-ext-kl", _max_ext("kl"), relative_entropy=False,
                          domain="classical", additivity="subadditive"),
        ChannelDivergence("max-ext-renyi-2", _max_ext("renyi", alpha=2.0), relative_entropy=False,
                          domain="classical", additivity="subadditive"),
        ChannelDivergence("max-ext-dmax", _max_ext("dmax"), domain="classical"),
        ChannelDivergence("channel-umegaki", lambda m, n: channel_umegaki(m, n, opt),
                          exact=False, additivity=None),
        ChannelDivergence("channel-dmin", lambda m, n: channel_dmin(m, n, opt),
                          exact=False, additivity=None, faithful=False),
        ChannelDivergence("channel-hyptest-0.1", lambda m, n: channel_hyptest(m, n, 0.1, opt),
                          exact=False, relative_entropy=False, additivity=None),
    ]
    return {d.name: d for d in reg}


REGISTRY = default_registry()


def _resolve(div) -> ChannelDivergence:
    if isinstance(div, ChannelDivergence):
        return div
    if isinstance(div, str):
        try:
            return REGISTRY[div]
        except KeyError:
            raise BadConfig(f"unknown divergence {div!r}") from None
    if callable(div):
        return ChannelDivergence(getattr(div, "__name__", "custom"), div)
    raise BadConfig(f"cannot interpret divergence {div!r}")


def _val(div: ChannelDivergence, m, n) -> float:
    return float(div(m, n).value)


def _same_shape(*chs):
    shapes = {(c.dim_in, c.dim_out) for c in chs}
    if len(shapes) != 1:
        raise ShapeMismatch(f"channels have different shapes {sorted(shapes)}")


def _dmax_for(div: ChannelDivergence, m, n) -> float:
    return channel_dmax(m, n).value


def _dmin_for(div: ChannelDivergence, m, n) -> float:
    if isinstance(m, ClassicalChannel) or div.domain == "classical":
        return classical_channel_min_ext("dmin", _classical(m), _classical(n)).value
    return channel_dmin(m, n).value


def _classical(c):
    return c if isinstance(c, ClassicalChannel) else ClassicalChannel.from_quantum(c)


def _diff(a: float, b: float) -> float:
    """a - b with inf - inf treated as 0."""
    if math.isinf(a) and math.isinf(b) and (a > 0) == (b > 0):
        return 0.0
    return a - b


# ---------------------------------------------------------------------------
# individual checks


def check_dpi(div, m, n, theta: Superchannel) -> float:
    """D(Theta[M] || Theta[N]) - D(M || N); -inf when the right-hand side is infinite."""
    d = _resolve(div)
    _same_shape(m, n)
    before = _val(d, m, n)
    if math.isinf(before) and before > 0:
        return -INF
    tm, tn = superchannel_apply(theta, m), superchannel_apply(theta, n)
    if d.domain == "classical":
        tm, tn = ClassicalChannel.from_quantum(tm), ClassicalChannel.from_quantum(tn)
    return _diff(_val(d, tm, tn), before)


def check_minmax_bounds(div, m, n) -> tuple:
    """(D_min - D, D - D_max) using the channel min and max relative entropies."""
    d = _resolve(div)
    _same_shape(m, n)
    v = _val(d, m, n)
    return _diff(_dmin_for(d, m, n), v), _diff(v, _dmax_for(d, m, n))


def _tensor(a, b):
    if isinstance(a, ClassicalChannel):
        return a.tensor(b)
    return tensor_channels(a, b)


def check_additivity(div, m1, n1, m2, n2) -> float:
    """Signed D(M1 (x) M2 || N1 (x) N2) - D(M1||N1) - D(M2||N2)."""
    d = _resolve(div)
    _same_shape(m1, n1)
    _same_shape(m2, n2)
    joint = _val(d, _tensor(m1, m2), _tensor(n1, n2))
    return _diff(joint, _val(d, m1, n1) + _val(d, m2, n2))


def check_triangle(div, n, m, e) -> float:
    """D(N||M) - D(N||E) - D_max(E||M)."""
    d = _resolve(div)
    _same_shape(n, m, e)
    rhs = _val(d, n, e) + channel_dmax(e, m).value
    return _diff(_val(d, n, m), rhs)


def continuity_bound(n, e, m) -> float:
    """log2(1 + ||J_N - J_E||_inf / (lambda_min(J_E) lambda_min(J_M)))."""
    jn, je, jm = (as_channel(c).choi for c in (n, e, m))
    lams = [linalg.lambda_min(j) for j in (jn, je, jm)]
    if min(lams) <= DEFAULT_TOL.psd:
        raise NotFullSupport("continuity bound needs full-rank Choi matrices")
    gap = np.linalg.norm(jn - je, 2)
    return math.log2(1 + gap / (lams[1] * lams[2]))


def check_continuity_bound(div, n, e, m) -> float:
    d = _resolve(div)
    _same_shape(n, e, m)
    bound = continuity_bound(n, e, m)
    return _diff(_val(d, n, m), _val(d, e, m)) - bound


def orthogonal_mixture(channels: Sequence, p) -> QuantumChannel:
    chs = [as_channel(c) for c in channels]
    for j in range(len(chs)):
        for k in range(j + 1, len(chs)):
            overlap = abs(np.trace(chs[j].choi @ chs[k].choi))
            if overlap > DEFAULT_TOL.eq:
                raise NotOrthogonal(f"Tr[J_{j} J_{k}] = {overlap:.3e}")
    p = np.asarray(p, dtype=float)
    choi = sum(px * c.choi for px, c in zip(p, chs))
    return QuantumChannel(chs[0].dim_in, chs[0].dim_out, choi)


def check_orthogonal_mixture(div, channels: Sequence, p) -> float:
    """Worst deviation of D(E_x || sum_y p_y E_y) from -log2 p_x.

    Exact divergences report ``max |D + log2 p_x|``; optimizer lower bounds
    report the signed ``max (D + log2 p_x)``, which may only be <= tol.
    """
    d = _resolve(div)
    mix = orthogonal_mixture(channels, p)
    classical = d.domain == "classical"
    if classical:
        mix = ClassicalChannel.from_quantum(mix)
    worst = -INF
    for px, e in zip(p, channels):
        if px <= 0:
            continue
        e = _classical(e) if classical else as_channel(e)
        dev = _val(d, e, mix) + math.log2(px)
        worst = max(worst, abs(dev) if d.exact else dev)
    return worst


# ---------------------------------------------------------------------------
# instance generators


def orthogonal_channels(count: int, dim_in: int, block: int, rng) -> list:
    """Channels A -> B with |B| = count * block, channel x landing in block x."""
    out = []
    dim_out = count * block
    for x in range(count):
        base = random_channel(dim_in, block, rng)
        emb = np.zeros((dim_out, block))
        emb[x * block:(x + 1) * block, :] = np.eye(block)
        kraus = [emb @ k for k in base.kraus_ops()]
        out.append(QuantumChannel.from_kraus(kraus))
    return out


def orthogonal_classical_channels(count: int, dim_in: int, block: int, rng) -> list:
    out = []
    for x in range(count):
        m = np.zeros((count * block, dim_in))
        m[x * block:(x + 1) * block, :] = random_stochastic(dim_in, block, rng).matrix
        out.append(ClassicalChannel(m))
    return out


def _qpair(rng, dims=(2, 2), ranks=(None, None)):
    return tuple(random_channel(dims[0], dims[1], rng, dim_env=r) for r in ranks)


def _cpair(rng, dims=(2, 3)):
    return random_stochastic(dims[0], dims[1], rng), random_stochastic(dims[0], dims[1], rng)


def _cdims(rng):
    return int(rng.integers(2, 4)), int(rng.integers(2, 5))


# ---------------------------------------------------------------------------
# reports and suite


@dataclass
class CheckReport:
    check_name: str
    instances: int = 0
    failures: int = 0
    worst_slack: float = -INF
    seeds: List[int] = field(default_factory=list)
    soft: bool = False
    tolerance: float = 0.0

    def record(self, slack: float, seed: int) -> None:
        self.instances += 1
        if slack > self.worst_slack or (math.isnan(slack)):
            self.worst_slack = slack
        if math.isnan(slack) or slack > self.tolerance:
            self.failures += 1
            self.seeds.append(seed)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> dict:
        """JSON-ready dict; non-finite slacks become "inf", "-inf" or "nan"."""
        d = asdict(self)
        w = self.worst_slack
        if not math.isfinite(w):
            d["worst_slack"] = "nan" if math.isnan(w) else "inf" if w > 0 else "-inf"
        return d


@dataclass(frozen=True)
class Check:
    name: str
    tolerance: float
    instance: Callable  # rng -> slack
    soft: bool = False
    count: Optional[int] = None  # overrides SuiteConfig.instances


@dataclass
class SuiteConfig:
    """What :func:`run_suite` runs.

    ``instances`` applies to every hard check; optimizer-backed checks use
    ``optimizer_instances``.  ``checks`` optionally restricts to names
    starting with any of the given prefixes.
    """

    instances: int = 200
    optimizer_instances: int = 10
    seed: int = 0
    divergences: Optional[Sequence[str]] = None
    checks: Optional[Sequence[str]] = None
    optimizer: OptimizerConfig = field(default_factory=lambda: OptimizerConfig(restarts=1, max_iters=30))

    def __post_init__(self):
        if self.instances < 0 or self.optimizer_instances < 0:
            raise BadConfig("instance counts must be nonnegative")

    @classmethod
    def from_dict(cls, raw: dict) -> "SuiteConfig":
        raw = dict(raw)
        opt = raw.pop("optimizer", None)
        known = {"instances", "optimizer_instances", "seed", "divergences", "checks"}
        extra = set(raw) - known
        if extra:
            raise BadConfig(f"unknown suite config keys {sorted(extra)}")
        cfg = cls(**raw)
        if opt is not None:
            try:
                cfg.optimizer = OptimizerConfig(**opt)
            except TypeError as exc:
                raise BadConfig(f"invalid optimizer settings: {exc}") from None
        return cfg


def _quantum_superchannel(rng):
    return random_superchannel(2, 2, 2, 2, 2, rng)


def _dpi_quantum(d):
    def inst(rng):
        m = random_channel(2, 2, rng, dim_env=int(rng.choice([1, 2, 4])))
        n = random_channel(2, 2, rng)
        return check_dpi(d, m, n, _quantum_superchannel(rng))
    return inst


def _dpi_classical(d):
    def inst(rng):
        x, y = _cdims(rng)
        m, n = _cpair(rng, (x, y))
        theta = random_classical_superchannel(2, x, y, int(rng.integers(2, 4)), 2, rng)
        return check_dpi(d, m, n, theta)
    return inst


def _dpi_hyptest(rng):
    dim = int(rng.integers(2, 6))
    p, q = random_prob(dim, rng), random_prob(dim, rng)
    e = random_stochastic(dim, int(rng.integers(2, 6)), rng).matrix
    eps = float(rng.uniform(0, 0.95))
    return hyptest_c(e @ p, e @ q, eps).value - hyptest_c(p, q, eps).value


def _sandwich_classical(d):
    def inst(rng):
        m, n = _cpair(rng, _cdims(rng))
        return max(check_minmax_bounds(d, m, n))
    return inst


def _sandwich_quantum(opt):
    def inst(rng):
        m, n = _qpair(rng)
        upper = channel_dmax(m, n).value
        geo = [geometric_renyi_channel(m, n, a).value for a in GEOMETRIC_ALPHAS]
        lo_min = channel_dmin(m, n, opt).value
        lo_ume = channel_umegaki(m, n, opt).value
        # only "lower bound <= exact value" comparisons are asserted
        slacks = [lo_min - upper, lo_ume - upper, lo_ume - geo[1]]
        slacks += [g - upper for g in geo] + [lo_min - g for g in geo]
        return max(slacks)
    return inst


def _additivity(d):
    def inst(rng):
        if d.domain == "classical":
            m1, n1 = _cpair(rng, _cdims(rng))
            m2, n2 = _cpair(rng, (2, 2))
        else:
            m1, n1 = _qpair(rng)
            m2, n2 = _qpair(rng)
        s = check_additivity(d, m1, n1, m2, n2)
        return s if d.additivity == "subadditive" else abs(s)
    return inst


def _triangle(d):
    def inst(rng):
        if d.domain == "classical":
            dims = _cdims(rng)
            n, m = _cpair(rng, dims)
            e = random_stochastic(*dims, rng)
        else:
            n, m, e = (random_channel(2, 2, rng) for _ in range(3))
        return check_triangle(d, n, m, e)
    return inst


def _continuity(d):
    def inst(rng):
        if d.domain == "classical":
            dims = _cdims(rng)
            n, e, m = (random_stochastic(*dims, rng) for _ in range(3))
        else:
            n, e, m = (random_channel(2, 2, rng) for _ in range(3))
        return check_continuity_bound(d, n, e, m)
    return inst


def _orthogonal(d):
    def inst(rng):
        count = int(rng.integers(2, 4))
        if d.domain == "classical":
            chs = orthogonal_classical_channels(count, 2, 2, rng)
        else:
            chs = orthogonal_channels(count, 2, 2 if count == 2 else 1, rng)
        return check_orthogonal_mixture(d, chs, random_prob(count, rng))
    return inst


def _replacement(rng):
    dim_in, dim_out = int(rng.integers(2, 4)), 2
    rho, sigma = random_density_matrix(dim_out, rng), random_density_matrix(dim_out, rng)
    rr, rs = make_replacement(rho, dim_in), make_replacement(sigma, dim_in)
    pairs = [(channel_dmax(rr, rs).value, dmax_q(rho, sigma).value)]
    pairs += [(geometric_renyi_channel(rr, rs, a).value, geometric_renyi_state(rho, sigma, a).value)
              for a in GEOMETRIC_ALPHAS]
    return max(abs(_diff(a, b)) for a, b in pairs)


def _replacement_optimizer(opt):
    def inst(rng):
        rho, sigma = random_density_matrix(2, rng), random_density_matrix(2, rng)
        rr, rs = make_replacement(rho, 2), make_replacement(sigma, 2)
        pairs = [(channel_umegaki(rr, rs, opt).value, umegaki(rho, sigma).value),
                 (channel_hyptest(rr, rs, 0.1, opt).value, hyptest_q(rho, sigma, 0.1).value),
                 (channel_dmin(rr, rs, opt).value, dmin_q(rho, sigma).value)]
        return max(abs(_diff(a, b)) for a, b in pairs)
    return inst


def _isometry_randomizing(rng):
    dims = [(2, 2), (2, 3), (3, 3)][int(rng.integers(0, 3))]
    v = random_isometry_channel(*dims, rng)
    r = completely_randomizing(*dims)
    target = math.log2(dims[0] * dims[1])
    vals = [channel_dmax(v, r).value, isometry_max_ext(v, r).value]
    vals += [geometric_renyi_channel(v, r, a).value for a in GEOMETRIC_ALPHAS]
    return max(abs(x - target) for x in vals)


def _faithfulness(d):
    def inst(rng):
        if d.domain == "classical":
            m, n = _cpair(rng, _cdims(rng))
        else:
            m, n = _qpair(rng)
        if rng.random() < 0.5:
            n = m
        if _val(d, m, n) > 1e-9:
            return 0.0
        jm, jn = as_channel(m).choi, as_channel(n).choi
        return float(np.linalg.norm(jm - jn, 2)) - 1e-5
    return inst


def _normalization(_rng):
    r0, u = basis_state(2, 0), maximally_mixed(2)
    p0, pu = np.array([1.0, 0.0]), np.array([0.5, 0.5])
    vals = [kl(p0, pu).value, dmax_c(p0, pu).value, dmin_c(p0, pu).value]
    vals += [renyi(p0, pu, a).value for a in (0.5, 2.0, 3.0)]
    vals += [umegaki(r0, u).value, dmax_q(r0, u).value, dmin_q(r0, u).value]
    vals += [sandwiched_renyi(r0, u, a).value for a in (0.5, 2.0)]
    vals += [geometric_renyi_state(r0, u, a).value for a in GEOMETRIC_ALPHAS]
    cm, cn = state_as_channel(r0), state_as_channel(u)
    vals += [channel_dmax(cm, cn).value]
    vals += [geometric_renyi_channel(cm, cn, a).value for a in GEOMETRIC_ALPHAS]
    vals += [channel_umegaki(cm, cn).value, channel_dmin(cm, cn).value]
    km, kn = ClassicalChannel(p0[:, None]), ClassicalChannel(pu[:, None])
    vals += [classical_channel_min_ext("kl", km, kn).value, classical_channel_max_ext("kl", km, kn).value]
    return max(abs(v - 1.0) for v in vals)


def build_checks(cfg: SuiteConfig, registry: Dict[str, ChannelDivergence] | None = None) -> List[Check]:
    reg = dict(registry or default_registry(cfg.optimizer))
    if cfg.divergences is not None:
        missing = set(cfg.divergences) - set(reg)
        if missing:
            raise BadConfig(f"unknown divergences {sorted(missing)}")
        reg = {k: v for k, v in reg.items() if k in cfg.divergences}
    exact = [d for d in reg.values() if d.exact]
    quantum_exact = [d for d in exact if d.domain == "quantum"]
    classical_exact = [d for d in exact if d.domain == "classical"]
    opt_n = cfg.optimizer_instances
    checks = []
    for d in quantum_exact:
        checks.append(Check(f"dpi/{d.name}", INEQ_TOL, _dpi_quantum(d)))
    for d in classical_exact:
        checks.append(Check(f"dpi/{d.name}", INEQ_TOL, _dpi_classical(d)))
    checks.append(Check("dpi/hyptest-c-stochastic", INEQ_TOL, _dpi_hyptest))
    for d in reg.values():
        if not d.exact:
            checks.append(Check(f"dpi-soft/{d.name}", OPT_TOL, _dpi_quantum(d), soft=True, count=opt_n))
    for d in exact:
        if d.relative_entropy or d.name.startswith("max-ext"):
            checks.append(Check(f"sandwich/{d.name}", EQ_TOL, _sandwich_classical(d)))
    checks.append(Check("sandwich-quantum/bounds", EQ_TOL, _sandwich_quantum(cfg.optimizer), count=opt_n))
    for d in exact:
        if d.additivity in ("additive", "subadditive"):
            checks.append(Check(f"additivity/{d.name}", EQ_TOL, _additivity(d)))
    for d in exact:
        if d.relative_entropy:
            checks.append(Check(f"triangle/{d.name}", INEQ_TOL, _triangle(d)))
            checks.append(Check(f"continuity/{d.name}", INEQ_TOL, _continuity(d)))
            checks.append(Check(f"orthogonal/{d.name}", EQ_TOL, _orthogonal(d)))
            if d.faithful:
                checks.append(Check(f"faithfulness/{d.name}", 0.0, _faithfulness(d)))
    for d in reg.values():
        if not d.exact and d.relative_entropy:
            checks.append(Check(f"orthogonal/{d.name}", OPT_TOL, _orthogonal(d), count=opt_n))
    checks.append(Check("replacement/exact", EQ_TOL, _replacement))
    checks.append(Check("replacement/optimizer", 1e-6, _replacement_optimizer(cfg.optimizer), count=opt_n))
    checks.append(Check("isometry-vs-randomizing", 1e-10, _isometry_randomizing))
    checks.append(Check("normalization", 1e-10, _normalization, count=1))
    if cfg.checks is not None:
        checks = [c for c in checks if any(c.name.startswith(pref) for pref in cfg.checks)]
    return checks


def run_check(check: Check, count: int, base_seed: int) -> CheckReport:
    report = CheckReport(check.name, soft=check.soft, tolerance=check.tolerance)
    for i in range(count):
        seed = instance_seed(base_seed, check.name, i)
        try:
            slack = float(check.instance(np.random.default_rng(seed)))
        except Exception:  # a crashing instance is a failure of that instance
            slack = math.nan
        report.record(slack, seed)
    return report


def run_suite(config: SuiteConfig | dict | None = None,
              registry: Dict[str, ChannelDivergence] | None = None) -> List[CheckReport]:
    """Run every configured check; deterministic given the config."""
    cfg = config if isinstance(config, SuiteConfig) else SuiteConfig.from_dict(config or {})
    reports = []
    for check in build_checks(cfg, registry):
        count = cfg.instances if check.count is None else min(check.count, cfg.instances)
        if cfg.instances == 0:
            continue
        reports.append(run_check(check, count, cfg.seed))
    return reports


def hard_failures(reports: Sequence[CheckReport]) -> int:
    return sum(r.failures for r in reports if not r.soft)
