"""Numerical tolerances shared by every module."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

from .errors import BadConfig

ENV_VAR = "DYNDIV_TOL"


@dataclass(frozen=True)
class ToleranceConfig:
    """Absolute tolerances.

    ``psd`` is the eigenvalue floor below which an eigenvalue counts as zero
    (scaled by ``max(1, ||a||)``), ``herm`` bounds ``max|A - A^H|``, ``eq`` is
    used for scalar equality assertions and ``opt`` is the optimizer
    convergence tolerance.
    """

    psd: float = 1e-10
    herm: float = 1e-9
    eq: float = 1e-9
    opt: float = 1e-6

    def __post_init__(self):
        vals = (self.psd, self.herm, self.eq, self.opt)
        if not all(v > 0 and v < float("inf") for v in vals):
            raise BadConfig(f"tolerances must be finite and positive, got {vals}")
        if not (self.psd <= self.herm <= self.eq <= self.opt):
            raise BadConfig(f"need psd <= herm <= eq <= opt, got {vals}")


DEFAULT_TOL = ToleranceConfig()


def from_env(base: ToleranceConfig = DEFAULT_TOL) -> ToleranceConfig:
    """Return ``base`` with ``eq`` overridden by $DYNDIV_TOL when set."""
    raw = os.environ.get(ENV_VAR)
    if not raw:
        return base
    try:
        eq = float(raw)
    except ValueError as exc:
        raise BadConfig(f"{ENV_VAR}={raw!r} is not a number") from exc
    return replace(base, eq=eq, herm=min(base.herm, eq), psd=min(base.psd, eq),
                   opt=max(base.opt, eq))


def resolve(tol: ToleranceConfig | None) -> ToleranceConfig:
    return DEFAULT_TOL if tol is None else tol
