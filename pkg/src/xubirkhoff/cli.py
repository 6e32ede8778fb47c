"""Command-line front end.

Commands:

* ``sample``      - emit a seeded random matrix (unitary / xu / circulant_xu / zu)
* ``decompose``   - decompose an XU matrix into weighted permutations
* ``scale``       - factor a unitary as e^(i*alpha) Z1 X Z2 with X in XU(n)
* ``verify``      - recheck a decomposition against a target matrix
* ``pitch-table`` - the pitch tables x(r,s), y(r,s) for a prime dimension
* ``transfer``    - the transfer matrix M[r,s] with its diagnostics
* ``selfcheck``   - run the built-in reference-value suite

Matrices, permutations, and decompositions travel as JSON (schemas in the
module docstrings of ``numerics`` and ``permsum``); numbers are emitted
with 17 significant digits so round-trips preserve every double. Exit
status: 0 on success, 1 for engine errors (non-XU input, convergence
failure, unsupported dimension), 2 for unparsable input.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import selfcheck as _selfcheck
from .birkhoff import decompose_xu, verify
from .errors import XUBirkhoffError
from .numerics import (
    dumps_json,
    matrix_from_json,
    matrix_to_json,
    max_abs_diff,
)
from .permsum import perm_sum_from_json, perm_sum_to_json
from .sampling import KINDS, SampleSpec, sample
from .scaling import ScalingOptions, zxz_scale
from .xu_group import pitch, transfer_block_dims, transfer_matrix
from .permutations import detect_supercirculant

METHODS = ("auto", "xu2", "xu3", "xu4", "prime", "recursive")


class ParseError(Exception):
    """Unreadable or schema-violating input (exit status 2)."""


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise ParseError(f"{path} is not valid JSON: {e}") from e


def _load_matrix(path: str) -> np.ndarray:
    try:
        return matrix_from_json(_load_json(path))
    except (ValueError, TypeError, KeyError) as e:
        raise ParseError(f"{path}: {e}") from e


def _emit(obj, output: str | None) -> None:
    text = dumps_json(obj) + "\n"
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_sample(args) -> int:
    spec = SampleSpec(n=args.n, kind=args.kind, seed=args.seed)
    _emit(matrix_to_json(sample(spec)), args.output)
    return 0


def _cmd_decompose(args) -> int:
    a = _load_matrix(args.matrix)
    opts = ScalingOptions(rng_seed=args.seed)
    p = complex(args.p) if args.p is not None else 1.0
    s = decompose_xu(a, method=args.method, p=p, opts=opts, tol=args.tol)
    report = verify(s, a, tol=args.tol if args.tol is not None else 1e-9)
    out = perm_sum_to_json(s)
    out["report"] = report.to_json()
    _emit(out, args.output)
    return 0


def _cmd_scale(args) -> int:
    a = _load_matrix(args.matrix)
    tol = args.tol if args.tol is not None else 1e-10
    fac = zxz_scale(a, ScalingOptions(tol=tol, rng_seed=args.seed))
    out = {
        "alpha": fac.alpha,
        "z1": [[v.real, v.imag] for v in fac.z1],
        "z2": [[v.real, v.imag] for v in fac.z2],
        "core": matrix_to_json(fac.core),
        "spread": fac.spread,
        "iterations": fac.iterations,
        "restarts": fac.restarts,
        "reconstruction_error": max_abs_diff(fac.reconstruct(), a),
    }
    _emit(out, args.output)
    return 0


def _cmd_verify(args) -> int:
    try:
        s = perm_sum_from_json(_load_json(args.decomposition))
    except (ValueError, TypeError, KeyError) as e:
        raise ParseError(f"{args.decomposition}: {e}") from e
    a = _load_matrix(args.matrix)
    tol = args.tol if args.tol is not None else 1e-9
    report = verify(s, a, tol=tol)
    _emit(report.to_json(), args.output)
    ok = report.reconstruction_ok and report.weight_sum_ok and report.line_sums_ok
    return 0 if ok else 1


def _cmd_pitch_table(args) -> int:
    n = args.n
    xs = [[pitch(n, r, s)[0] for s in range(1, n)] for r in range(1, n)]
    ys = [[pitch(n, r, s)[1] for s in range(1, n)] for r in range(1, n)]
    _emit({"n": n, "x": xs, "y": ys}, args.output)
    return 0


def _cmd_transfer(args) -> int:
    tm = transfer_matrix(args.n, args.r, args.s)
    rows = tm.matrix.sum(axis=1)
    cols = tm.matrix.sum(axis=0)
    worst = float(max(np.abs(rows).max(), np.abs(cols).max()))
    pitches = detect_supercirculant(tm.matrix, 1e-10)
    out = {
        "n": tm.n,
        "r": tm.r,
        "s": tm.s,
        "block_dims": list(transfer_block_dims(tm.n, tm.r, tm.s)),
        "pitches": list(pitches) if pitches is not None else None,
        "max_line_sum": worst,
        "matrix": matrix_to_json(tm.matrix),
    }
    _emit(out, args.output)
    return 0


def _cmd_selfcheck(args) -> int:
    return _selfcheck.run(sys.stdout)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xubirkhoff",
        description="Decompose unit-line-sum unitaries into weighted "
        "permutation matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("sample", help="emit a seeded random matrix")
    sp.add_argument("n", type=int, help="matrix dimension")
    sp.add_argument("--kind", choices=KINDS, default="xu")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--output", default=None)
    sp.set_defaults(func=_cmd_sample)

    dp = sub.add_parser("decompose", help="decompose an XU matrix")
    dp.add_argument("matrix", help="path to matrix JSON")
    dp.add_argument("--method", choices=METHODS, default="auto")
    dp.add_argument("--tol", type=float, default=None)
    dp.add_argument("--seed", type=int, default=0, help="scaling restart seed")
    dp.add_argument(
        "--p",
        default=None,
        help="parameter of the six-weight XU(3) family, e.g. '0.5+0.5j'",
    )
    dp.add_argument("--output", default=None)
    dp.set_defaults(func=_cmd_decompose)

    cp = sub.add_parser("scale", help="ZXZ-factor a unitary matrix")
    cp.add_argument("matrix", help="path to matrix JSON")
    cp.add_argument("--tol", type=float, default=None)
    cp.add_argument("--seed", type=int, default=0)
    cp.add_argument("--output", default=None)
    cp.set_defaults(func=_cmd_scale)

    vp = sub.add_parser("verify", help="recheck a decomposition")
    vp.add_argument("decomposition", help="path to decomposition JSON")
    vp.add_argument("matrix", help="path to the target matrix JSON")
    vp.add_argument("--tol", type=float, default=None)
    vp.add_argument("--output", default=None)
    vp.set_defaults(func=_cmd_verify)

    pp = sub.add_parser("pitch-table", help="pitch tables for a prime n")
    pp.add_argument("n", type=int)
    pp.add_argument("--output", default=None)
    pp.set_defaults(func=_cmd_pitch_table)

    tp = sub.add_parser("transfer", help="transfer matrix M[r,s]")
    tp.add_argument("n", type=int)
    tp.add_argument("r", type=int)
    tp.add_argument("s", type=int)
    tp.add_argument("--output", default=None)
    tp.set_defaults(func=_cmd_transfer)

    kp = sub.add_parser("selfcheck", help="run the built-in reference checks")
    kp.set_defaults(func=_cmd_selfcheck)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except XUBirkhoffError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
