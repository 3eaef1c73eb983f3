"""Command-line front end: ``dyndiv {compute, join, lorenz, suite}``.

Exit codes: 0 success, 2 unreadable or invalid input, 3 shape mismatch,
4 hard failure in the property suite.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import io
from .channel_divergences import (
    OptimizerConfig,
    amortized_lb,
    channel_dmax,
    channel_hyptest,
    channel_umegaki,
    geometric_renyi_channel,
    isometry_max_ext,
)
from .channels import ClassicalChannel, QuantumChannel, as_channel, as_prob, as_state
from .classical import DivergenceValue, dmax_c, dmin_c, hyptest_c, kl, renyi
from .errors import BadConfig, DimensionMismatch, DyndivError, ParseError
from .harness import SuiteConfig, hard_failures, run_suite
from .majorization import (
    Dichotomy,
    classical_channel_max_ext,
    classical_channel_min_ext,
    column_dichotomies,
    dichotomy_join,
    lorenz_curve,
)
from .states import dmax_q, dmin_q, geometric_renyi_state, hyptest_q, sandwiched_renyi, umegaki
from .tolerances import from_env

DIVERGENCES = ("kl", "renyi", "dmax", "dmin", "hyptest", "umegaki", "sandwiched", "geometric",
               "channel-dmax", "channel-umegaki", "channel-hyptest", "min-ext", "max-ext",
               "isometry-max-ext", "amortized-lb")
BASE_DIVERGENCES = ("kl", "renyi", "dmax", "dmin", "hyptest")

EXIT_OK, EXIT_PARSE, EXIT_SHAPE, EXIT_SUITE = 0, 2, 3, 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _require(args, name):
    val = getattr(args, name)
    if val is None:
        raise CliError(f"--div {args.div} needs --{name}", EXIT_PARSE)
    return val


def _kind(x) -> str:
    if isinstance(x, ClassicalChannel):
        return "classical-channel"
    if isinstance(x, QuantumChannel):
        return "channel"
    if isinstance(x, Dichotomy):
        return "dichotomy"
    return "vector" if np.ndim(x) == 1 else "state"


def _as_state(x):
    return np.diag(x).astype(complex) if _kind(x) == "vector" else x


def _expect(a, b, kinds, tag):
    ka, kb = _kind(a), _kind(b)
    if ka not in kinds or kb not in kinds:
        raise CliError(f"--div {tag} expects inputs of kind {' or '.join(kinds)}, got {ka} and {kb}",
                       EXIT_PARSE)
    if ka in ("vector", "state"):
        mismatch = a.shape[0] != b.shape[0]
    else:
        mismatch = a.shape != b.shape
    if mismatch:
        raise CliError(f"inputs have different shapes: {a.shape} vs {b.shape}", EXIT_SHAPE)


def compute_value(tag: str, a, b, args, tol) -> DivergenceValue:
    """Evaluate divergence ``tag`` on two parsed inputs."""
    opt = OptimizerConfig(restarts=args.restarts, seed=args.seed)
    states = ("vector", "state")
    if tag in ("kl", "renyi"):
        _expect(a, b, ("vector",), tag)
        return kl(a, b) if tag == "kl" else renyi(a, b, _require(args, "alpha"))
    if tag in ("dmax", "dmin", "hyptest"):
        _expect(a, b, states, tag)
        if _kind(a) == _kind(b) == "vector":
            if tag == "hyptest":
                return hyptest_c(a, b, _require(args, "epsilon"))
            return (dmax_c if tag == "dmax" else dmin_c)(a, b)
        a, b = _as_state(a), _as_state(b)
        if tag == "hyptest":
            return hyptest_q(a, b, _require(args, "epsilon"), tol)
        return (dmax_q if tag == "dmax" else dmin_q)(a, b, tol)
    if tag in ("umegaki", "sandwiched"):
        _expect(a, b, states, tag)
        a, b = _as_state(a), _as_state(b)
        if tag == "umegaki":
            return umegaki(a, b, tol)
        return sandwiched_renyi(a, b, _require(args, "alpha"), tol)
    if tag == "geometric":
        alpha = _require(args, "alpha")
        if _kind(a) in states:
            _expect(a, b, states, tag)
            return geometric_renyi_state(_as_state(a), _as_state(b), alpha, tol)
        _expect(a, b, ("channel", "classical-channel"), tag)
        return geometric_renyi_channel(a, b, alpha, tol)
    if tag in ("min-ext", "max-ext"):
        _expect(a, b, ("classical-channel",), tag)
        base = args.base
        params = {}
        if base == "renyi":
            params["alpha"] = _require(args, "alpha")
        if base == "hyptest":
            params["epsilon"] = _require(args, "epsilon")
        fn = classical_channel_min_ext if tag == "min-ext" else classical_channel_max_ext
        return fn(base, a, b, **params)
    _expect(a, b, ("channel", "classical-channel"), tag)
    a, b = as_channel(a), as_channel(b)
    if a.shape != b.shape:
        raise CliError(f"channels have different shapes {a.shape} vs {b.shape}", EXIT_SHAPE)
    if tag == "channel-dmax":
        return channel_dmax(a, b, tol)
    if tag == "channel-umegaki":
        return channel_umegaki(a, b, opt, tol)
    if tag == "channel-hyptest":
        return channel_hyptest(a, b, _require(args, "epsilon"), opt, tol)
    if tag == "isometry-max-ext":
        return isometry_max_ext(a, b, tol)
    if tag == "amortized-lb":
        return amortized_lb(a, b, opt, tol)
    raise CliError(f"unknown divergence {tag!r}", EXIT_PARSE)


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _vertices_doc(curve) -> list:
    return [[io.fmt_float(a), io.fmt_float(b)] for a, b in curve.vertices]


def _validated(x, path, tol):
    try:
        if _kind(x) == "vector":
            return as_prob(x, tol)
        if _kind(x) == "state":
            return as_state(x, tol)
    except DyndivError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    return x


def cmd_compute(args, tol) -> int:
    a, b = (_validated(io.load(p, tol), p, tol) for p in args.inputs)
    val = compute_value(args.div, a, b, args, tol)
    doc = {"divergence": args.div, "value_bits": io.fmt_float(val.value), "exact": bool(val.exact)}
    if val.upper is not None:
        doc["upper_bits"] = io.fmt_float(val.upper)
    if val.uncertainty:
        doc["uncertainty_bits"] = io.fmt_float(val.uncertainty)
    if args.format == "csv":
        _emit(f"divergence,value_bits,exact\n{args.div},{doc['value_bits']},{str(doc['exact']).lower()}\n",
              args.out)
    else:
        _emit(io.dumps(doc), args.out)
    return EXIT_OK


def _dichotomies_from(paths, tol) -> list:
    docs = [io.load(p, tol) for p in paths]
    kinds = [_kind(d) for d in docs]
    if len(docs) == 2 and kinds == ["classical-channel"] * 2:
        return column_dichotomies(docs[0], docs[1])
    if len(docs) == 2 and kinds == ["vector"] * 2:
        if docs[0].shape != docs[1].shape:
            raise CliError("p and q have different lengths", EXIT_SHAPE)
        return [Dichotomy(docs[0], docs[1])]
    if all(k == "dichotomy" for k in kinds):
        return docs
    raise CliError("expected two classical channel files, two probability vectors, "
                   "or dichotomy files ({\"p\": ..., \"q\": ...})", EXIT_PARSE)


def cmd_join(args, tol) -> int:
    joined = dichotomy_join(_dichotomies_from(args.inputs, tol))
    curve = lorenz_curve(joined)
    if args.format == "csv":
        _emit(curve.to_csv(io.DIGITS), args.out)
    else:
        doc = io.dump_dichotomy(joined)
        doc["vertices"] = _vertices_doc(curve)
        _emit(io.dumps(doc), args.out)
    return EXIT_OK


def cmd_lorenz(args, tol) -> int:
    ds = _dichotomies_from(args.inputs, tol)
    if len(ds) != 1:
        raise CliError("lorenz takes a single dichotomy", EXIT_PARSE)
    curve = lorenz_curve(ds[0])
    if args.format == "json":
        _emit(io.dumps({"vertices": _vertices_doc(curve)}), args.out)
    else:
        _emit(curve.to_csv(io.DIGITS), args.out)
    return EXIT_OK


def cmd_suite(args, tol, registry=None) -> int:
    raw = {}
    if args.config:
        try:
            raw = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise CliError(f"{args.config}: cannot read suite config ({exc})", EXIT_PARSE) from exc
        if not isinstance(raw, dict):
            raise CliError(f"{args.config}: suite config must be a JSON object", EXIT_PARSE)
    if args.instances is not None:
        raw["instances"] = args.instances
    if args.seed is not None:
        raw["seed"] = args.seed
    cfg = SuiteConfig.from_dict(raw)
    reports = run_suite(cfg, registry)
    _emit(io.dumps([r.to_dict() for r in reports]), args.out)
    bad = hard_failures(reports)
    if bad:
        names = sorted({r.check_name for r in reports if r.failures and not r.soft})
        print(f"{bad} hard check failure(s): {', '.join(names)}", file=sys.stderr)
        return EXIT_SUITE
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dyndiv", description="Divergences of states and channels.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt_default):
        p.add_argument("--format", choices=("json", "csv"), default=fmt_default)
        p.add_argument("--out", help="write to this file instead of stdout")

    p = sub.add_parser("compute", help="evaluate a divergence on two inputs")
    p.add_argument("--div", required=True, choices=DIVERGENCES)
    p.add_argument("--alpha", type=float)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--base", choices=BASE_DIVERGENCES, default="kl",
                   help="classical divergence extended by min-ext / max-ext")
    p.add_argument("--restarts", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("inputs", nargs=2, metavar="FILE")
    common(p, "json")

    p = sub.add_parser("join", help="optimal dichotomy of a classical channel pair")
    p.add_argument("inputs", nargs="+", metavar="FILE")
    common(p, "json")

    p = sub.add_parser("lorenz", help="lower Lorenz curve vertices of a dichotomy")
    p.add_argument("inputs", nargs="+", metavar="FILE")
    common(p, "csv")

    p = sub.add_parser("suite", help="run the randomized property suite")
    p.add_argument("--config", help="JSON suite configuration")
    p.add_argument("--instances", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="write the report array to this file")
    return parser


COMMANDS = {"compute": cmd_compute, "join": cmd_join, "lorenz": cmd_lorenz, "suite": cmd_suite}


def main(argv=None, registry=None) -> int:
    """Run the CLI; ``registry`` replaces the suite's divergence registry."""
    args = build_parser().parse_args(argv)
    try:
        tol = from_env()
        if args.command == "suite":
            return cmd_suite(args, tol, registry)
        return COMMANDS[args.command](args, tol)
    except CliError as exc:
        print(f"dyndiv: {exc}", file=sys.stderr)
        return exc.code
    except DimensionMismatch as exc:
        print(f"dyndiv: shape mismatch: {exc}", file=sys.stderr)
        return EXIT_SHAPE
    except (ParseError, BadConfig, DyndivError) as exc:
        print(f"dyndiv: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
