"""Command-line interface.  Every command prints one JSON document (or CSV).

Exit codes: 0 success, 1 a check failed, 2 usage or input error,
3 numerical non-convergence.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from .classifier import DEFAULT_BUDGET_MS, classify, classify_single
from .density import (QuadratureError, check_nonneg_grid, combined_density,
                      cosh_numerator_terms, reconstruct_log_h)
from .exponents import ExponentPair, StructuralError, as_exponent
from .expander import SinhProductTerm, certify_nonnegative, expand, rescale_to_integers
from .factorizer import NotSubmajorized, factorize
from .gram import DEFAULT_MAX_SIZE, DEFAULT_SPACINGS, NumericalError, gram_probe, gram_report
from .matmeans import verify_inequality
from .repro import ALIASES, BUNDLES, DEFAULT_SEED, run_bundle
from .scalarfn import eval_f, eval_h

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


class ParseError(ValueError):
    def __init__(self, message, position=None):
        super().__init__(message if position is None else f"{message} (at character {position})")
        self.position = position


class UsageError(ValueError):
    pass


def io_parse_pair(text: str, normalize: bool = False) -> ExponentPair:
    """Parse {"alpha": [...], "beta": [...]}; entries are numbers or "p/q" strings."""
    try:
        data = json.loads(text, parse_float=_finite_float, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc.msg}", exc.pos) from None
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    if isinstance(data, list) and len(data) == 2:
        data = {"alpha": data[0], "beta": data[1]}
    if not isinstance(data, dict) or "alpha" not in data or "beta" not in data:
        raise ParseError('expected an object with "alpha" and "beta"')
    alpha, beta = (data[k] if isinstance(data[k], list) else [data[k]] for k in ("alpha", "beta"))
    try:
        pair = ExponentPair(tuple(alpha), tuple(beta))
    except StructuralError as exc:
        raise ParseError(str(exc)) from None
    return pair.normalized() if normalize else pair


def _finite_float(s):
    v = float(s)
    if not math.isfinite(v):
        raise ValueError(f"non-finite number {s}")
    return v


def _reject_constant(name):
    raise ValueError(f"non-finite constant {name}")


def _parse_number(text: str):
    try:
        return as_exponent(text if "/" in text else (int(text) if _is_int(text) else float(text)))
    except (StructuralError, ValueError) as exc:
        raise UsageError(f"bad number {text!r}") from exc


def _is_int(text: str) -> bool:
    try:
        int(text)
        return True
    except ValueError:
        return False


def _parse_list(text: str):
    return [_parse_number(p.strip()) for p in text.split(",") if p.strip()]


def _json_ready(obj):
    if isinstance(obj, dict):
        return {str(k): _json_ready(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_ready(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _json_ready(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, Fraction):
        return obj.numerator if obj.denominator == 1 else str(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else None
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    return obj


def dumps(obj) -> str:
    # floats go out via repr: the shortest string that round-trips
    return json.dumps(_json_ready(obj), indent=2, allow_nan=False)


def _read_source(value, args):
    """Primary JSON argument: inline text, '-' for stdin, or --in file."""
    if value is None or value == "-":
        if args.infile:
            with open(args.infile) as fh:
                return fh.read()
        if value == "-" or not sys.stdin.isatty():
            return sys.stdin.read()
        raise UsageError("missing JSON input (pass it inline, via --in, or on stdin)")
    return value


def _load_json(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc.msg}", exc.pos) from None


def default_seed() -> int:
    env = os.environ.get("SINHMAJOR_SEED")
    if env is None:
        return DEFAULT_SEED
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"SINHMAJOR_SEED must be an integer, got {env!r}") from None


# command handlers: each returns (payload, exit_code)

def cmd_eval(args):
    pair = io_parse_pair(_read_source(args.pair, args))
    if (args.t is None) == (args.x is None):
        raise UsageError("give exactly one of --t or --x")
    if args.t is not None:
        t = float(_parse_number(args.t))
        return {"pair": pair.to_json(), "t": t, "value": float(eval_f(pair, t)),
                "gamma": pair.gamma}, EXIT_OK
    x = float(_parse_number(args.x))
    return {"pair": pair.to_json(), "x": x, "value": float(eval_h(pair, x)),
            "gamma": pair.gamma}, EXIT_OK


def _h_of(pair):
    return lambda x: eval_h(pair, x)


def cmd_gram(args):
    pair = io_parse_pair(_read_source(args.pair, args))
    points = _parse_list(args.points)
    if not points:
        raise UsageError("--points needs at least one value")
    return gram_report(_h_of(pair), points).to_json(), EXIT_OK


def cmd_probe(args):
    pair = io_parse_pair(_read_source(args.pair, args))
    spacings = _parse_list(args.spacings) if args.spacings else DEFAULT_SPACINGS
    w = gram_probe(_h_of(pair), spacings, args.max_size)
    return {"pair": pair.to_json(), "witness": None if w is None else w.to_json()}, EXIT_OK


def cmd_classify(args):
    pair = io_parse_pair(_read_source(args.pair, args))
    c = classify(pair.alpha, pair.beta, probe=args.probe, budget_ms=args.budget_ms)
    return c.to_json(), EXIT_OK


def cmd_classify_single(args):
    vals = [_parse_number(v) for v in (args.a, args.b, args.c, args.d)]
    if min(vals) < 0:
        raise UsageError("a, b, c, d must be nonnegative")
    return {"a": vals[0], "b": vals[1], "c": vals[2], "d": vals[3],
            "dominated": classify_single(*vals)}, EXIT_OK


def cmd_factorize(args):
    pair = io_parse_pair(_read_source(args.pair, args))
    try:
        return factorize(pair.alpha, pair.beta).to_json(), EXIT_OK
    except NotSubmajorized as exc:
        return {"error": str(exc), "prefix_index": exc.index}, EXIT_CHECK


def _terms_from_args(args):
    if args.pair is not None:
        pair = io_parse_pair(args.pair)
        scale, terms = rescale_to_integers(cosh_numerator_terms(pair.alpha, pair.beta))
        return terms, {"pair": pair.to_json(), "scale": str(scale)}
    data = _load_json(_read_source(args.terms, args))
    if not isinstance(data, list):
        raise ParseError("terms must be a list of {coefficient, frequencies}")
    try:
        terms = [SinhProductTerm(Fraction(str(t["coefficient"])),
                                 tuple(Fraction(str(f)) for f in t["frequencies"])) for t in data]
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad term: {exc}") from None
    return terms, {}


def cmd_expand(args):
    terms, extra = _terms_from_args(args)
    return {**extra, "expansion": expand(terms).to_json()}, EXIT_OK


def cmd_certify(args):
    terms, extra = _terms_from_args(args)
    e = expand(terms)
    cert = certify_nonnegative(e, args.K)
    code = EXIT_OK if cert.verdict == "certified" else EXIT_CHECK
    return {**extra, "expansion": e.to_json(), "certificate": cert.to_json()}, code


def cmd_density(args):
    data = _load_json(_read_source(args.pairing, args))
    try:
        items = [(as_exponent(it[0]), as_exponent(it[1]), *(it[2:3])) for it in data]
        d = combined_density(items)
    except (TypeError, IndexError, ValueError) as exc:
        raise ParseError(f"bad pairing: {exc}") from None
    grid = check_nonneg_grid(d, n_points=args.grid)
    out = {"density": d.to_json(),
           "grid": {"nonnegative": grid.nonnegative, "min_value": grid.min_value,
                    "min_location": grid.min_location, "points": args.grid}}
    if args.reconstruct is not None:
        x = float(_parse_number(args.reconstruct))
        out["reconstruct"] = {"x": x, "log_h": reconstruct_log_h(d, x)}
    return out, EXIT_OK


def cmd_verify_mean(args):
    left = io_parse_pair(args.lhs)
    right = io_parse_pair(args.rhs)
    seed = args.seed if args.seed is not None else default_seed()
    run = verify_inequality(left, right, N=args.n, trials=args.trials, seed=seed,
                            complex_=not args.real)
    code = EXIT_OK if run.failures == 0 or run.exploratory else EXIT_CHECK
    if args.csv:
        return run.to_csv(), code
    return {"summary": run.summary(), "trials": [r.to_json() for r in run.reports]}, code


def cmd_repro(args):
    seed = args.seed if args.seed is not None else default_seed()
    names = list(BUNDLES) if args.name == "all" else [args.name]
    reports = []
    for name in names:
        try:
            reports.append(run_bundle(name, seed=seed))
        except KeyError:
            raise UsageError(f"unknown bundle {name!r}; choose from "
                             f"{', '.join(sorted(list(BUNDLES) + list(ALIASES)))} or all") from None
    ok = all(r.passed for r in reports)
    payload = {"seed": seed, "pass": ok, "bundles": [r.to_json() for r in reports]}
    return payload, EXIT_OK if ok else EXIT_CHECK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sinhmajor", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="infile", help="read the JSON input from this file")
    common.add_argument("--out", dest="outfile", help="write output here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    sp = add("eval", cmd_eval, "evaluate f(t) or h(x)")
    sp.add_argument("--pair", help='{"alpha": [...], "beta": [...]}')
    sp.add_argument("--t")
    sp.add_argument("--x")

    sp = add("gram", cmd_gram, "Gram matrix of h at given points")
    sp.add_argument("--pair")
    sp.add_argument("--points", required=True, help="comma-separated, e.g. 0,1/3,2/3,1")

    sp = add("probe", cmd_probe, "search grids for a Gram witness")
    sp.add_argument("--pair")
    sp.add_argument("--spacings", help="comma-separated grid spacings")
    sp.add_argument("--max-size", type=int, default=DEFAULT_MAX_SIZE)

    sp = add("classify", cmd_classify, "classify a sinh-ratio product")
    sp.add_argument("--pair")
    sp.add_argument("--probe", action="store_true", help="run numeric probes after the rules")
    sp.add_argument("--budget-ms", type=float, default=DEFAULT_BUDGET_MS)

    sp = add("classify-single", cmd_classify_single, "is f_{a,b} dominated by f_{c,d}?")
    for name in ("a", "b", "c", "d"):
        sp.add_argument(f"--{name}", required=True)

    sp = add("factorize", cmd_factorize, "elementary factors of a submajorized pair")
    sp.add_argument("--pair")

    for name, func, help_ in (("expand", cmd_expand, "exact cosh/sinh expansion"),
                              ("certify", cmd_certify, "exact nonnegativity certificate")):
        sp = add(name, func, help_)
        src = sp.add_mutually_exclusive_group()
        src.add_argument("--terms", help='[{"coefficient": "1", "frequencies": [1, 12]}, ...]')
        src.add_argument("--pair", help="use the density numerator of this pair")
        if name == "certify":
            sp.add_argument("--K", type=int, default=None)

    sp = add("density", cmd_density, "combined density report")
    sp.add_argument("--pairing", help="[[a, b, sign], ...]")
    sp.add_argument("--grid", type=int, default=2000)
    sp.add_argument("--reconstruct", help="also reconstruct log h at this x")

    sp = add("verify-mean", cmd_verify_mean, "random trials of a matrix mean inequality")
    sp.add_argument("--lhs", required=True)
    sp.add_argument("--rhs", required=True)
    sp.add_argument("--n", type=int, default=3)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--real", action="store_true", help="real matrices instead of complex")
    sp.add_argument("--csv", action="store_true", help="emit per-trial CSV")

    sp = add("repro", cmd_repro, "run a reproduction bundle")
    sp.add_argument("name", help=f"one of {', '.join(BUNDLES)}, or all")
    sp.add_argument("--seed", type=int, default=None)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload, code = args.func(args)
    except (ParseError, UsageError, StructuralError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericalError, QuadratureError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = payload if isinstance(payload, str) else dumps(payload) + "\n"
    if args.outfile:
        with open(args.outfile, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
