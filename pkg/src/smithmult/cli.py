"""Command line entry point: ``snf <command> ...``.

Exit codes: 0 ok, 1 algorithmic failure, 2 input error, 3 singular matrix.
"""

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import fixtures
from .adjoint import frac_solve, outer_product_adjoint
from .errors import (
    NOT_TRIVIAL,
    DimensionError,
    LasVegasFailure,
    ParseError,
    RetriesExhausted,
    SingularMatrixError,
)
from .kernel import IntMat, SmithForm, det_exact, scale_columns, smith_form
from .lifting import lifting_context, solve_mod
from .linearize import linearize
from .massager import MassagerPair, smith_massager
from .matio import format_matrix, matrix_to_json, read_matrix, write_matrix
from .multipliers import lambda_bound, smith_form_multipliers, trivial_lower_hermite
from .rng import fresh_seed, make_rng

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_SINGULAR = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    seed: int = None
    max_retries: int = 40
    lambda_override: int = None
    unsafe_lambda: bool = False
    output_format: str = "text"
    jobs: int = 1

    @classmethod
    def from_args(cls, args):
        seed = args.seed
        if seed is None and os.environ.get("SNF_SEED"):
            try:
                seed = int(os.environ["SNF_SEED"])
            except ValueError:
                raise ParseError("SNF_SEED must be an integer") from None
        if seed is None:
            seed = fresh_seed()
        return cls(
            seed=seed,
            max_retries=args.max_retries,
            lambda_override=args.lam,
            unsafe_lambda=args.unsafe_lambda,
            output_format=args.format,
            jobs=args.jobs,
        )


class InputError(Exception):
    pass


def _emit(cfg, text, data):
    if cfg.output_format == "json":
        print(json.dumps(data, indent=2))
    else:
        print(text)


def _square(path):
    a = read_matrix(path)
    if not a.is_square():
        raise DimensionError(f"{path}: matrix must be square, got {a.nrows}x{a.ncols}")
    if det_exact(a) == 0:
        raise SingularMatrixError(f"{path}: matrix is singular")
    return a


# -- commands ------------------------------------------------------------


def cmd_smith(args, cfg):
    a = _square(args.matrix)
    S = smith_form(a) if args.classical else smith_massager(a).S
    _emit(cfg, " ".join(str(s) for s in S), {"S": [str(s) for s in S]})
    return EXIT_OK


def cmd_multipliers(args, cfg):
    a = _square(args.matrix)
    kw = {}
    lam = cfg.lambda_override
    if args.replay_fixture:
        if args.replay_fixture != "s5":
            raise InputError(f"unknown fixture {args.replay_fixture!r}")
        if a != fixtures.A7:
            raise InputError("--replay-fixture s5 needs the 7x7 example matrix as input")
        kw = dict(
            massager=MassagerPair(fixtures.TWO_S7, fixtures.M7),
            perturbations=[fixtures.R7],
        )
        lam, unsafe = fixtures.LAMBDA7, True
    else:
        unsafe = cfg.unsafe_lambda
        if lam is not None and not unsafe:
            S = smith_form(a)
            if lam < lambda_bound(S):
                raise InputError("--lambda below the safe bound needs --unsafe-lambda")
    try:
        tr = smith_form_multipliers(
            a, seed=cfg.seed, max_retries=cfg.max_retries, lam=lam,
            unsafe_lambda=unsafe, jobs=cfg.jobs, **kw,
        )
    except RetriesExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    prefix = args.out or str(Path(args.matrix).with_suffix(""))
    paths = {k: f"{prefix}.{k}" for k in "SVU"}
    write_matrix(paths["S"], tr.S.matrix())
    write_matrix(paths["V"], tr.V)
    write_matrix(paths["U"], tr.U)
    text = "\n".join([
        "S: " + " ".join(str(s) for s in tr.S),
        "AV = US verified",
        "|det V| = |det U| = 1 verified",
        f"attempts: {tr.attempts} (NotTrivial: {tr.not_trivial})",
        f"lambda: {tr.lam}",
        f"seed: {tr.seed}",
        "wrote: " + " ".join(paths[k] for k in "SVU"),
    ])
    data = {
        "S": [str(s) for s in tr.S],
        "V": matrix_to_json(tr.V),
        "U": matrix_to_json(tr.U),
        "verified": True,
        "attempts": tr.attempts,
        "not_trivial": tr.not_trivial,
        "lambda": str(tr.lam),
        "seed": str(tr.seed),
        "files": paths,
    }
    _emit(cfg, text, data)
    return EXIT_OK


def cmd_solve(args, cfg):
    a = _square(args.matrix)
    b = read_matrix(args.rhs)
    if b.nrows != a.nrows:
        raise DimensionError("right-hand side row count does not match the matrix")
    if args.frac:
        tr = smith_form_multipliers(a, seed=cfg.seed, max_retries=cfg.max_retries, jobs=cfg.jobs)
        opa = outer_product_adjoint(a, tr)
        cols = [frac_solve(opa, c) for c in b.columns()]
        res = IntMat.from_columns(cols)
        text = f"s={opa.s}\n" + "\n".join(" ".join(str(x) for x in r) for r in res.rows)
        _emit(cfg, text, {"s": str(opa.s), "residue": matrix_to_json(res)})
        return EXIT_OK
    ctx = lifting_context(a, make_rng(cfg.seed, (0xF00D,)))
    y = solve_mod(ctx, b, args.mod)
    text = f"p={ctx.p} X={ctx.X} d={args.mod}\n" + format_matrix(y).rstrip("\n")
    _emit(cfg, text, {
        "p": str(ctx.p), "X": str(ctx.X), "d": args.mod,
        "modulus": str(ctx.X**args.mod), "solution": matrix_to_json(y),
    })
    return EXIT_OK


def cmd_linearize(args, cfg):
    a = read_matrix(args.matrix)
    lin = linearize(a, args.mode)
    text = f"d={lin.d} e={' '.join(map(str, lin.e))}\n" + format_matrix(lin.D).rstrip("\n")
    data = {"mode": lin.mode, "d": lin.d, "e": list(lin.e), "D": matrix_to_json(lin.D)}
    if lin.row_perm is not None:
        data.update(row_perm=list(lin.row_perm), col_perm=list(lin.col_perm),
                    row_signs=list(lin.row_signs))
    _emit(cfg, text, data)
    return EXIT_OK


def cmd_opa(args, cfg):
    a = _square(args.matrix)
    tr = smith_form_multipliers(a, seed=cfg.seed, max_retries=cfg.max_retries, jobs=cfg.jobs)
    opa = outer_product_adjoint(a, tr)
    text = "\n".join([
        f"s={opa.s}",
        "diag: " + " ".join(map(str, opa.S)),
        "Vbar:",
        format_matrix(opa.Vbar).rstrip("\n"),
        "Ubar:",
        format_matrix(opa.Ubar).rstrip("\n"),
    ])
    _emit(cfg, text, opa.to_dict())
    return EXIT_OK


def cmd_hermite_trivial(args, cfg):
    b = _square(args.matrix)
    h = trivial_lower_hermite(b)
    if h is NOT_TRIVIAL:
        _emit(cfg, "NotTrivial", {"result": "NotTrivial"})
        return EXIT_FAIL
    text = f"h1={h.h1}\nhbar: " + " ".join(map(str, h.hbar))
    _emit(cfg, text, {"h1": str(h.h1), "hbar": [str(x) for x in h.hbar]})
    return EXIT_OK


def cmd_verify(args, cfg):
    a = read_matrix(args.A)
    smat, u, v = read_matrix(args.S), read_matrix(args.U), read_matrix(args.V)
    n = a.nrows
    checks = {}
    shapes_ok = all(m.shape == (n, n) for m in (a, smat, u, v))
    if not shapes_ok:
        raise DimensionError("A, S, U and V must all be n x n")
    diag = [smat[i, i] for i in range(n)]
    off = any(smat[i, j] for i in range(n) for j in range(n) if i != j)
    try:
        S = None if off else SmithForm(tuple(diag))
    except ValueError:
        S = None
    checks["S is a Smith form"] = S is not None
    checks["|det A| = det S"] = S is not None and abs(det_exact(a)) == S.det
    checks["AV = US"] = S is not None and a @ v == scale_columns(u, S)
    checks["|det V| = 1"] = abs(det_exact(v)) == 1
    checks["|det U| = 1"] = abs(det_exact(u)) == 1
    ok = all(checks.values())
    text = "\n".join(f"{k}: {'ok' if val else 'FAILED'}" for k, val in checks.items())
    _emit(cfg, text, {"verified": ok, "checks": checks})
    return EXIT_OK if ok else EXIT_FAIL


# -- argument parsing ------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None,
                        help="RNG seed (falls back to $SNF_SEED, then fresh entropy)")
    common.add_argument("--max-retries", type=int, default=40)
    common.add_argument("--lambda", dest="lam", type=int, default=None,
                        help="perturbation range override (testing)")
    common.add_argument("--unsafe-lambda", action="store_true",
                        help="allow --lambda below the safe bound")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--jobs", type=int, default=1,
                        help="run independent retry attempts in parallel")

    p = argparse.ArgumentParser(prog="snf", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("smith", parents=[common], help="print the Smith form")
    s.add_argument("matrix")
    s.add_argument("--classical", action="store_true",
                   help="use plain elimination instead of the massager path")
    s.set_defaults(func=cmd_smith)

    s = sub.add_parser("multipliers", parents=[common], help="compute S, V, U with AV = US")
    s.add_argument("matrix")
    s.add_argument("--out", default=None, help="output prefix (default: input path)")
    s.add_argument("--replay-fixture", default=None, metavar="NAME",
                   help="test only: pin massager and randomness to a stored example (s5)")
    s.set_defaults(func=cmd_multipliers)

    s = sub.add_parser("solve", parents=[common], help="fractional or modular solutions")
    s.add_argument("matrix")
    s.add_argument("rhs")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--frac", action="store_true", help="print s and Rem(s A^-1 b, s)")
    g.add_argument("--mod", type=int, metavar="D", help="print Rem(A^-1 b, X^D)")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("linearize", parents=[common], help="partial linearization")
    s.add_argument("matrix")
    s.add_argument("--mode", choices=("cols", "rows", "permut"), default="cols")
    s.set_defaults(func=cmd_linearize)

    s = sub.add_parser("opa", parents=[common], help="outer product adjoint formula")
    s.add_argument("matrix")
    s.set_defaults(func=cmd_opa)

    s = sub.add_parser("hermite-trivial", parents=[common],
                       help="certify a Hermite form with n-1 trivial columns")
    s.add_argument("matrix")
    s.set_defaults(func=cmd_hermite_trivial)

    s = sub.add_parser("verify", parents=[common], help="check A V = U S and unimodularity")
    s.add_argument("A")
    s.add_argument("S")
    s.add_argument("U")
    s.add_argument("V")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig.from_args(args)
        if cfg.max_retries < 1 or cfg.jobs < 1:
            raise InputError("--max-retries and --jobs must be positive")
        return args.func(args, cfg)
    except SingularMatrixError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except (ParseError, DimensionError, InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (RetriesExhausted, LasVegasFailure) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
