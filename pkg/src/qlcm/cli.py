"""Batch verification front end.

Subcommands sweep the identity checks over ranges and print one result
per line: `verify` runs the row-lcm identity at either depth, `factor`
and `lcm` render single factorizations, `maxcheck`/`witness` cover the
base-p carry counts, `classical` and `bounds` cover the integer
degenerations.  Results go to stdout, progress to stderr.  Exit codes:
0 all pass, 1 mathematical mismatch, 2 usage error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import multiprocessing
import sys

from .cyclotomic import factorization_to_poly
from .errors import InternalError, QlcmError
from .polyarith import poly_to_str
from .qcalc import (
    QBinomialSpec,
    bounds_check,
    carry_count_lhs,
    carry_count_rhs,
    classical_farhi_check,
    lcm_qbinomials_factorization,
    q_binomial_factorization,
    q_binomial_poly,
    verify_main_identity,
    witness_all_carries,
)

_COMMANDS = ("verify", "factor", "lcm", "maxcheck", "witness", "classical", "bounds")


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """Validated invocation: which command, over what range, how rendered."""

    command: str
    n: int | None = None
    n_max: int | None = None
    k: int | None = None
    p: int | None = None
    depth: str = "factored"
    format: str = "text"
    workers: int = 1
    expand: bool = False

    def __post_init__(self):
        if self.command not in _COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        needs_n_max = self.command in ("verify", "maxcheck", "classical", "bounds")
        if needs_n_max and self.n_max is None:
            raise ValueError(f"{self.command} requires n_max")
        if self.command in ("factor", "lcm", "witness") and self.n is None:
            raise ValueError(f"{self.command} requires n")
        if self.command == "factor" and self.k is None:
            raise ValueError("factor requires k")
        if self.command in ("maxcheck", "witness") and self.p is None:
            raise ValueError(f"{self.command} requires p")


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive, got {v}")
    return v


def _nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="qlcm", description="exact checks of the q-binomial row-lcm identity"
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="sweep the main identity for n = 1..N")
    p_verify.add_argument("--n-max", type=_positive_int, required=True)
    p_verify.add_argument("--depth", choices=("factored", "polynomial"), default="factored")
    p_verify.add_argument("--format", choices=("text", "json"), default="text")
    p_verify.add_argument("--workers", type=_positive_int, default=1)

    p_factor = sub.add_parser("factor", help="factor one Gaussian binomial [n, k]")
    p_factor.add_argument("n", type=_positive_int)
    p_factor.add_argument("k", type=_nonneg_int)
    p_factor.add_argument("--expand", action="store_true")

    p_lcm = sub.add_parser("lcm", help="factor the lcm of row n")
    p_lcm.add_argument("--n", type=_positive_int, required=True)
    p_lcm.add_argument("--expand", action="store_true")

    p_max = sub.add_parser("maxcheck", help="digit formula vs brute-force carry max")
    p_max.add_argument("--p", type=_positive_int, required=True)
    p_max.add_argument("--n-max", type=_positive_int, required=True)

    p_wit = sub.add_parser("witness", help="the all-carries witness k = p^M - 1")
    p_wit.add_argument("--n", type=_positive_int, required=True)
    p_wit.add_argument("--p", type=_positive_int, required=True)

    p_cls = sub.add_parser("classical", help="integer row-lcm identity for n = 1..N")
    p_cls.add_argument("--n-max", type=_positive_int, required=True)

    p_bnd = sub.add_parser("bounds", help="2^(n-1) <= lcm(1..n) <= 3^n for n = 1..N")
    p_bnd.add_argument("--n-max", type=_positive_int, required=True)
    return ap


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        n=getattr(args, "n", None),
        n_max=getattr(args, "n_max", None),
        k=getattr(args, "k", None),
        p=getattr(args, "p", None),
        depth=getattr(args, "depth", "factored"),
        format=getattr(args, "format", "text"),
        workers=getattr(args, "workers", 1),
        expand=getattr(args, "expand", False),
    )


# -- verify -------------------------------------------------------------


def _verify_one(task: tuple[int, str, str]) -> tuple[str, bool]:
    """Render the report for one n; top level so worker pools can pickle it."""
    n, depth, fmt = task
    rep = verify_main_identity(n, depth)
    if fmt == "json":
        record = {
            "n": rep.n,
            "depth": depth,
            "lhs": rep.lhs_factors.to_json_obj(),
            "rhs": rep.rhs_factors.to_json_obj(),
            "factor_equal": rep.factor_equal,
            "poly_equal": rep.poly_equal,
        }
        return json.dumps(record), rep.passed
    lhs = str(rep.lhs_factors)
    rhs = lhs if rep.factor_equal else str(rep.rhs_factors)
    verdict = "PASS" if rep.passed else "FAIL"
    return f"n={rep.n}: lhs={lhs} rhs={rhs} {verdict}", rep.passed


def cmd_verify(cfg: RunConfig) -> int:
    tasks = ((n, cfg.depth, cfg.format) for n in range(1, cfg.n_max + 1))
    step = max(1, cfg.n_max // 20)
    all_ok = True
    if cfg.workers > 1:
        pool = multiprocessing.Pool(cfg.workers)
        results = pool.imap(_verify_one, tasks, chunksize=8)
    else:
        pool = None
        results = map(_verify_one, tasks)
    try:
        for n, (line, ok) in enumerate(results, start=1):
            print(line)
            all_ok = all_ok and ok
            if n % step == 0:
                print(f"progress: {n}/{cfg.n_max}", file=sys.stderr)
    finally:
        if pool is not None:
            pool.close()
            pool.join()
    return 0 if all_ok else 1


# -- single-shot renderings ---------------------------------------------


def cmd_factor(cfg: RunConfig) -> int:
    spec = QBinomialSpec(cfg.n, cfg.k)
    fac = q_binomial_factorization(spec)
    poly = q_binomial_poly(spec)
    if poly != factorization_to_poly(fac):
        raise InternalError(
            f"factored and expanded forms disagree at n={cfg.n} k={cfg.k}"
        )
    print(poly_to_str(poly) if cfg.expand else str(fac))
    return 0


def cmd_lcm(cfg: RunConfig) -> int:
    fac = lcm_qbinomials_factorization(cfg.n)
    print(poly_to_str(factorization_to_poly(fac)) if cfg.expand else str(fac))
    return 0


def cmd_witness(cfg: RunConfig) -> int:
    k = witness_all_carries(cfg.n, cfg.p)
    rs = []
    q = cfg.p
    r = 1
    while q <= cfg.n:
        if cfg.n // q - k // q - (cfg.n - k) // q == 1:
            rs.append(r)
        q *= cfg.p
        r += 1
    if rs:
        print(f"k={k}, carries at r={','.join(map(str, rs))}")
    else:
        print(f"k={k}, no carries")
    return 0


# -- sweeps -------------------------------------------------------------


def _sweep(cfg: RunConfig, check) -> int:
    step = max(1, cfg.n_max // 20)
    for n in range(1, cfg.n_max + 1):
        if not check(n):
            print(f"FAIL at n={n}")
            return 1
        if n % step == 0:
            print(f"progress: {n}/{cfg.n_max}", file=sys.stderr)
    print("PASS")
    return 0


def cmd_maxcheck(cfg: RunConfig) -> int:
    p = cfg.p
    return _sweep(cfg, lambda n: carry_count_lhs(n, p) == carry_count_rhs(n, p))


def cmd_classical(cfg: RunConfig) -> int:
    return _sweep(cfg, lambda n: classical_farhi_check(n).equal)


def cmd_bounds(cfg: RunConfig) -> int:
    return _sweep(cfg, bounds_check)


_DISPATCH = {
    "verify": cmd_verify,
    "factor": cmd_factor,
    "lcm": cmd_lcm,
    "maxcheck": cmd_maxcheck,
    "witness": cmd_witness,
    "classical": cmd_classical,
    "bounds": cmd_bounds,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "factor" and args.k > args.n:
        print(f"qlcm factor: k={args.k} exceeds n={args.n}", file=sys.stderr)
        return 2
    cfg = config_from_args(args)
    try:
        return _DISPATCH[cfg.command](cfg)
    except InternalError as exc:
        # a failed internal cross-check is a mathematical mismatch
        print(f"qlcm: {exc}", file=sys.stderr)
        return 1
    except QlcmError as exc:
        print(f"qlcm: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
