"""Command-line front end: evaluate operators, run suites, export kernels.

Exit codes: 0 success, 1 failed property, 2 config/schema errors,
3 evaluation errors. All randomness derives from the --seed flag through
numpy's default PCG64 generator, so outputs are byte-stable per seed.
"""

import argparse
import json
import sys

import numpy as np

from . import rand
from .errors import BadShape, ConvendoError
from .expr import ConvexExpr, Pwl1D
from .gl import GlEndo, ScaleComposeMap
from .kernel1d import (KernelDecomposition, MaEndo, PhiEndo, kernel_decompose,
                       kernel_endo_eval, kernel_extract, kernel_extract_live)
from .pwl import PwlFunction
from .radial import RadialEndo
from .serialize import (dump_json, endo_from_json, fn_from_json, load_json,
                        write_eval_csv, write_kernel_csv)
from .suites import SUITES, run_suite


class ConfigError(Exception):
    """User-facing configuration problem; maps to exit code 2."""


def _parse_grid(text):
    try:
        lo, hi, step = (float(v) for v in text.split(":"))
    except ValueError:
        raise ConfigError(f"--grid expects lo:hi:step, got {text!r}")
    if step <= 0 or hi < lo:
        raise ConfigError(f"bad grid {text!r}")
    n = int(np.floor((hi - lo) / step + 1e-9)) + 1
    return lo + step * np.arange(n)


def _endo_dim(endo):
    if isinstance(endo, (GlEndo, ScaleComposeMap)):
        return endo.n
    if isinstance(endo, RadialEndo):
        return endo.n
    return 1


def _load_points(args, dim):
    if args.points:
        data = load_json(args.points)
        pts = [np.atleast_1d(np.asarray(p, dtype=float)) for p in data]
    elif args.grid:
        axis = _parse_grid(args.grid)
        if dim == 1:
            pts = [np.array([v]) for v in axis]
        else:
            mesh = np.meshgrid(*([axis] * dim), indexing="ij")
            pts = [np.array(p) for p in zip(*(m.ravel() for m in mesh))]
    else:
        raise ConfigError("one of --points or --grid is required")
    for p in pts:
        if p.size != dim:
            raise ConfigError(f"point {p.tolist()} has dim {p.size}, operator wants {dim}")
    return pts


def _evaluator_for(endo, fn):
    """Pair an operator with a parsed function, normalizing representations."""
    if isinstance(endo, (GlEndo, ScaleComposeMap, RadialEndo)):
        if isinstance(fn, PwlFunction):
            if _endo_dim(endo) != 1:
                raise ConfigError("a bare pwl function fits only 1-dimensional operators")
            fn = Pwl1D(fn, [1.0])
        if not isinstance(fn, ConvexExpr):
            raise ConfigError("operator expects a convex expression input")
        em = endo.as_endomap()
        return lambda x: em(fn, x)
    # kernel-calculus operators act on finite piecewise-linear functions
    if not isinstance(fn, PwlFunction):
        raise ConfigError("this operator expects a {'kind': 'pwl'} input")
    if isinstance(endo, KernelDecomposition):
        return lambda x: kernel_endo_eval(endo, fn, float(x[0]))
    em = endo.as_endomap()
    return lambda x: em(fn, float(x[0]))


def _one_dim_endomap(endo):
    if isinstance(endo, GlEndo):
        return endo.as_endomap_1d()
    if isinstance(endo, (PhiEndo, MaEndo, KernelDecomposition)):
        return endo.as_endomap()
    raise ConfigError("kernel commands need a one-dimensional operator")


def cmd_eval(args):
    endo = endo_from_json(load_json(args.endo))
    fn = fn_from_json(load_json(args.fn))
    dim = _endo_dim(endo)
    pts = _load_points(args, dim)
    evaluate = _evaluator_for(endo, fn)
    values = [evaluate(p) for p in pts]
    write_eval_csv(args.out, pts, values, dim)
    return 0


def cmd_check(args):
    if args.suite not in SUITES:
        raise ConfigError(f"unknown suite {args.suite!r}; choose from {sorted(SUITES)}")
    rep = run_suite(args.suite, seed=args.seed, trials=args.trials)
    for line in rep.lines():
        print(line)
    if rep.passed:
        print(f"suite {args.suite}: all properties hold (seed={args.seed})")
        return 0
    dump = rep.counterexamples()
    if args.out:
        dump_json(dump, args.out)
        print(f"suite {args.suite}: FAILED; counterexamples written to {args.out}")
    else:
        print(f"suite {args.suite}: FAILED; counterexamples follow")
        print(json.dumps(dump, indent=1, sort_keys=True, default=str))
    return 1


def _kernel_grids(args, endo):
    xs = _parse_grid(args.grid_x) if args.grid_x else np.linspace(-1.0, 1.0, 201)
    ys = _parse_grid(args.grid_y) if args.grid_y else np.linspace(-6.0, 6.0, 201)
    if isinstance(endo, KernelDecomposition):
        box = endo.kernel.box
        if (xs[0] < box[0] - 1e-9 or xs[-1] > box[1] + 1e-9
                or ys[0] < box[2] - 1e-9 or ys[-1] > box[3] + 1e-9):
            raise ConfigError("extraction grid leaves the kernel's validity box")
    return xs, ys


def cmd_kernel(args):
    endo = endo_from_json(load_json(args.endo))
    em = _one_dim_endomap(endo)
    if args.action == "extract":
        xs, ys = _kernel_grids(args, endo)
        k = kernel_extract(em, xs, ys)
        gxs, gys, vals = k.grid
        write_kernel_csv(args.out, gxs, gys, vals)
        return 0

    # roundtrip: extract exactly, decompose, re-evaluate against the operator
    a_lo, a_hi = (-1.0, 1.0)
    if args.A:
        try:
            a_lo, a_hi = (float(v) for v in args.A.split(":"))
        except ValueError:
            raise ConfigError(f"--A expects lo:hi, got {args.A!r}")
    R = args.R if args.R is not None else 4.0
    box = (a_lo - 0.2, a_hi + 0.2, -(2 * R), 2 * R)
    live = kernel_extract_live(em, box)
    d = kernel_decompose(live, (a_lo, a_hi), R)
    rng = rand.rng_from_seed(args.seed)
    worst = 0.0
    for _ in range(args.trials):
        f = rand.random_finite_pwl(rng)
        x = float(rng.uniform(a_lo, a_hi))
        worst = max(worst, abs(kernel_endo_eval(d, f, x) - em(f, x)))
    print(f"kernel roundtrip: trials={args.trials} max_deviation={worst:.3e}")
    if args.out:
        dump_json({"trials": args.trials, "seed": args.seed,
                   "max_deviation": worst}, args.out)
    if args.tol is not None and worst > args.tol:
        print(f"deviation exceeds --tol {args.tol}", file=sys.stderr)
        return 1
    return 0


def build_parser():
    p = argparse.ArgumentParser(
        prog="convendo",
        description="evaluate additive operators on convex functions, run "
                    "property suites, and export operator kernels")
    sub = p.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("eval", help="evaluate an operator on sample points")
    pe.add_argument("--endo", required=True, help="operator descriptor (JSON)")
    pe.add_argument("--fn", required=True, help="function descriptor (JSON)")
    pe.add_argument("--points", help="JSON file with a list of points")
    pe.add_argument("--grid", help="lo:hi:step per-axis grid")
    pe.add_argument("--out", required=True, help="CSV output path")
    pe.add_argument("--seed", type=int, default=0)
    pe.add_argument("--tol", type=float, default=None,
                    help="accepted for interface compatibility; evaluation is exact")
    pe.set_defaults(func=cmd_eval)

    pc = sub.add_parser("check", help="run a property suite")
    pc.add_argument("--suite", required=True)
    pc.add_argument("--seed", type=int, default=0)
    pc.add_argument("--trials", type=int, default=None)
    pc.add_argument("--out", help="counterexample dump path (JSON)")
    pc.set_defaults(func=cmd_check)

    pk = sub.add_parser("kernel", help="extract or round-trip a 1D kernel")
    pk.add_argument("action", choices=["extract", "roundtrip"])
    pk.add_argument("--endo", required=True)
    pk.add_argument("--grid-x", help="lo:hi:step extraction grid in x")
    pk.add_argument("--grid-y", help="lo:hi:step extraction grid in y")
    pk.add_argument("--A", help="decomposition interval lo:hi (roundtrip)")
    pk.add_argument("--R", type=float, default=None,
                    help="decomposition radius (roundtrip)")
    pk.add_argument("--out", help="output path (CSV for extract)")
    pk.add_argument("--seed", type=int, default=0)
    pk.add_argument("--trials", type=int, default=100)
    pk.add_argument("--tol", type=float, default=None,
                    help="fail the roundtrip when the deviation exceeds this")
    pk.set_defaults(func=cmd_kernel)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        if args.command == "kernel" and args.action == "extract" and not args.out:
            raise ConfigError("kernel extract needs --out")
        return args.func(args)
    except (ConfigError, BadShape, FileNotFoundError, json.JSONDecodeError,
            KeyError, TypeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ConvendoError as exc:
        print(f"evaluation error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
