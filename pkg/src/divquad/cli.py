"""Command-line entry point.

    divquad verify-algebra --n 8 --seed 1
    divquad sample --n 2 --count 100 --seed 7 --out pts.txt
    divquad predict --n 4 --field complex

Every command writes a JSON report (to ``--out``, or stdout; ``sample``
writes points to ``--out`` and the report to stdout) and exits 0 exactly
when all listed checks pass.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import sampling, suites
from .errors import DivquadError
from .simplex import build_lambda
from .variety import VarietySpec

COMMANDS = (
    "verify-algebra",
    "verify-simplex",
    "verify-variety",
    "verify-maps",
    "verify-fixed-points",
    "sample",
    "predict",
    "roundtrip",
)

DEFAULT_COUNT = {
    "verify-algebra": 10_000,
    "verify-simplex": 1000,
    "verify-variety": 1000,
    "verify-maps": 1000,
    "verify-fixed-points": 1000,
    "sample": 100,
    "predict": 0,
    "roundtrip": 100,
}


def load_frame(path: str | Path, n: int) -> np.ndarray:
    """One vector per line, ``n`` whitespace-separated reals."""
    rows = []
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        row = [float(t) for t in line.split()]
        if len(row) != n:
            raise ValueError(f"frame row {row} has {len(row)} entries, expected {n}")
        rows.append(row)
    return np.array(rows, dtype=float).reshape(-1, n)


def build_spec(args) -> VarietySpec:
    n = args.n
    if args.frame == "standard":
        m = n + 1 if args.m is None else args.m
        if m == n + 1 and args.s == 1:
            return VarietySpec.standard_spec(n, args.field)
        if m == n + 1:
            return VarietySpec(n, build_lambda(n), args.s, args.field)
        if m == 0:
            return VarietySpec(n, np.zeros((0, n)), args.s, args.field)
        raise ValueError("--frame standard needs --m n+1 (or 0 for no Z variables)")
    frame = load_frame(args.frame, n)
    if args.m is not None and args.m != frame.shape[0]:
        raise ValueError(f"--m {args.m} does not match the {frame.shape[0]} frame vectors")
    return VarietySpec(n, frame, args.s, args.field)


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="divquad", description=__doc__.split("\n\n")[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--n", type=int, choices=(1, 2, 4, 8), default=2)
    parser.add_argument("--m", type=int, default=None)
    parser.add_argument("--s", type=int, default=1)
    parser.add_argument("--field", choices=("real", "complex"), default="complex")
    parser.add_argument("--frame", default="standard", help="'standard' or a path to a frame file")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--count", type=int, default=None)
    parser.add_argument("--tol", type=float, default=1e-10)
    parser.add_argument("--out", default=None)
    return parser


def run(args) -> tuple[dict, bool]:
    count = DEFAULT_COUNT[args.command] if args.count is None else args.count
    spec = build_spec(args)
    config = {
        "n": spec.n, "m": spec.m, "s": spec.s, "field": spec.field, "frame": args.frame,
        "seed": args.seed, "count": count, "tol": args.tol,
    }
    payload: dict = {}
    checks: list[suites.Check]
    t0 = time.perf_counter()
    cmd = args.command
    if cmd == "verify-algebra":
        checks, payload = suites.algebra_suite(spec.n, args.seed, count)
    elif cmd == "verify-simplex":
        checks, payload = suites.simplex_suite(spec.n, args.seed, count)
    elif cmd == "verify-variety":
        checks, payload = suites.variety_suite(spec, args.seed, count, args.tol)
    elif cmd == "verify-maps":
        checks, payload = suites.maps_suite(spec, args.seed, count)
    elif cmd == "verify-fixed-points":
        checks, payload = suites.fixed_point_suite(spec, args.seed, count)
    elif cmd == "predict":
        payload = suites.predictions(spec)
        checks = suites.prediction_checks(spec, payload)
    elif cmd == "sample":
        pts = sampling.sample(spec, args.seed, count)
        if args.out:
            with open(args.out, "w") as fh:
                sampling.write_points(spec, pts, fh)
        res = [float(np.hypot(*_split(spec, p))) for p in pts]
        checks = [suites._le("residual", res, 1e-10)]
        payload = {"points": len(pts), "path": args.out}
    else:  # roundtrip
        pts = sampling.sample(spec, args.seed, count)
        checks = [suites.serialization_roundtrip(spec, pts)]
        if spec.standard:
            mc, _ = suites.maps_suite(spec, args.seed, count, points=pts)
            checks += [c for c in mc if c.name in ("x-y-roundtrip", "psi-phi-roundtrip", "phi-image-roundtrip")]
    elapsed = time.perf_counter() - t0
    passed = all(c.passed for c in checks)
    report = {
        "command": cmd,
        "config": config,
        "checks": [c.as_dict() for c in checks],
        "predictions": payload,
        "passed": passed,
        "timing": {"seconds": round(elapsed, 3)},
    }
    return report, passed


def _split(spec, p):
    from .variety import eval_defining

    F0, F = eval_defining(spec, p)
    return F0, float(np.linalg.norm(F))


def _jsonable(o):
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, np.generic):
        return o.item()
    raise TypeError(f"cannot serialize {type(o).__name__}")


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        report, passed = run(args)
    except (DivquadError, ValueError, OSError) as exc:
        print(f"divquad: error: {exc}", file=sys.stderr)
        return 2
    text = json.dumps(report, indent=2, sort_keys=True, default=_jsonable) + "\n"
    if args.out and args.command != "sample":
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0 if passed else 1


if __name__ == "__main__":
    sys.exit(main())
