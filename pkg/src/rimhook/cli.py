"""Command-line entry point: ``rimhook <subcommand> ...``.

Exit codes: 0 all checks pass, 2 a statistical or exact check failed,
3 an enumeration guard refused the request.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from decimal import Decimal, localcontext
from fractions import Fraction
from math import factorial

import numpy as np

from . import __version__
from .partitions import Partition
from .permutations import ColoredPermutation, GuardError, lis_colored
from .plancherel import (
    EmpiricalDistribution,
    colored_L_from_lengths,
    exact_L_distribution,
    ks_distance,
    parallel_color_lis,
    scale_component,
    scale_L,
    signed_distribution,
)
from .quotient import core_and_quotient
from .tracywidom import cached_table, limit_cdf, tw_cdf
from .unitary import moment_table
from .verify import verify_identities

EXIT_OK, EXIT_CHECK, EXIT_GUARD = 0, 2, 3
SIGNED_GUARD = 10**6


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.10g}"
    return str(v)


def _decimal(fr: Fraction, digits: int = 30) -> str:
    with localcontext() as ctx:
        ctx.prec = digits + 10
        val = Decimal(fr.numerator) / Decimal(fr.denominator)
        return f"{val:.{digits}f}"


def _meta_lines(args) -> list[str]:
    skip = {"func", "output", "format"}
    conf = " ".join(f"{k}={v}" for k, v in sorted(vars(args).items()) if k not in skip and v is not None)
    return [f"rimhook {__version__}", f"command: {args.command}", f"config: {conf}"]


def _emit(args, header: list[str], rows: list[list], extra_meta: list[str] = ()) -> None:
    meta = _meta_lines(args) + list(extra_meta)
    if args.format == "json":
        payload = {"meta": meta, "columns": header, "rows": rows}
        text = json.dumps(payload, indent=2, default=str) + "\n"
    else:
        buf = io.StringIO()
        for line in meta:
            buf.write(f"# {line}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
        text = buf.getvalue()
    _write(args, text)


def _write(args, text: str) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_ints(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t.strip()]


def _parse_grid(text: str) -> np.ndarray:
    x0, x1, steps = text.split(":")
    return np.linspace(float(x0), float(x1), int(steps))


def _limit(scaling: str, m: int):
    if scaling == "normalized":
        return lambda x: tw_cdf(x, warn=False) ** m
    return lambda x: limit_cdf(x, m)


# -- subcommands -------------------------------------------------------------


def cmd_verify(args) -> int:
    results = verify_identities(args.max_n, args.max_m)
    rows = [[r.identity, r.m, r.n, r.checked, r.failures, r.status] for r in results]
    _emit(args, ["identity", "m", "n", "checked", "failures", "status"], rows)
    return EXIT_CHECK if any(r.status == "FAIL" for r in results) else EXIT_OK


def cmd_quotient(args) -> int:
    core, q = core_and_quotient(Partition.parse(args.partition), args.m)
    _write(args, f"core: {core}\nquotient: {q}\n")
    return EXIT_OK


def cmd_lis(args) -> int:
    sigma = _parse_ints(args.perm)
    colors = _parse_ints(args.colors) if args.colors else [1] * len(sigma)
    if args.n is not None and args.n != len(sigma):
        raise SystemExit(f"--n {args.n} does not match permutation length {len(sigma)}")
    _write(args, f"{lis_colored(ColoredPermutation(tuple(sigma), tuple(colors), args.m))}\n")
    return EXIT_OK


def cmd_exact_cdf(args) -> int:
    try:
        if args.signed:
            if 2**args.n * factorial(args.n) > SIGNED_GUARD:
                raise GuardError(f"|H_{args.n}| exceeds {SIGNED_GUARD}")
            dist = signed_distribution(args.n, odd=args.signed == "odd")
        else:
            dist = exact_L_distribution(args.n, args.m)
    except GuardError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_GUARD
    rows = [[k, _decimal(p)] for k, p in dist.cdf_table()]
    _emit(args, ["k", "prob_le_k"], rows)
    return EXIT_OK


def _scaled_sample(args) -> EmpiricalDistribution:
    ks = parallel_color_lis(args.n, args.m, args.samples, args.seed, args.threads)
    L = colored_L_from_lengths(ks, args.m)
    return EmpiricalDistribution(scale_L(L, args.n, args.m, args.scaling))


def _cdf_comparison(args) -> tuple[float, list[list]]:
    emp = _scaled_sample(args)
    limit = _limit(args.scaling, args.limit_m or args.m)
    ks = ks_distance(emp, limit)
    grid = _parse_grid(args.grid)
    rows = [[float(x), float(e), float(f), ks] for x, e, f in zip(grid, emp.cdf(grid), limit(grid))]
    return ks, rows


def cmd_simulate(args) -> int:
    ks, rows = _cdf_comparison(args)
    _emit(args, ["x", "empirical_cdf", "limit_cdf", "ks"], rows, [f"ks={ks:.10g}"])
    return EXIT_OK


def cmd_limit_law(args) -> int:
    ks, rows = _cdf_comparison(args)
    ok = ks <= args.threshold
    _emit(
        args,
        ["x", "empirical_cdf", "limit_cdf", "ks"],
        rows,
        [f"ks={ks:.10g}", f"threshold={args.threshold}", f"result={'PASS' if ok else 'FAIL'}"],
    )
    return EXIT_OK if ok else EXIT_CHECK


def independence_table(z: np.ndarray, points: list[float]) -> list[list]:
    """Joint empirical CDF vs product of marginals on the product grid ``points^m``."""
    m = z.shape[1]
    rows = []
    for idx in np.ndindex(*(len(points),) * m):
        x = np.array([points[i] for i in idx])
        below = z <= x
        joint = float(np.mean(np.all(below, axis=1)))
        prod = float(np.prod(np.mean(below, axis=0)))
        rows.append([*x.tolist(), joint, prod, abs(joint - prod)])
    return rows


def cmd_independence(args) -> int:
    ks = parallel_color_lis(args.n, args.m, args.samples, args.seed, args.threads)
    z = scale_component(ks, args.n, args.m)
    rows = independence_table(z, [float(v) for v in args.points.split(",")])
    worst = max(r[-1] for r in rows)
    ok = worst <= args.tol
    header = [f"x{i + 1}" for i in range(args.m)] + ["joint_cdf", "product_cdf", "abs_diff"]
    _emit(args, header, rows, [f"max_abs_diff={worst:.10g}", f"result={'PASS' if ok else 'FAIL'}"])
    return EXIT_OK if ok else EXIT_CHECK


def haar_moment_report(k: int, m: int, n: int, samples: int, seed: int, odd: bool) -> dict:
    rng = np.random.default_rng(seed)
    key = (2 if odd else m, n, odd)
    est = moment_table(k, [key], samples, rng)[key]
    target = None
    try:
        if odd:
            if 2**n * factorial(n) <= SIGNED_GUARD:
                target = 2**n * factorial(n) * float(signed_distribution(n, odd=True).cdf(k))
        else:
            target = m**n * factorial(n) * float(exact_L_distribution(n, m).cdf(k))
    except GuardError:
        target = None
    z = est.z_score(target) if target is not None else None
    return {
        "version": __version__,
        "k": k,
        "m": key[0],
        "n": n,
        "odd": odd,
        "samples": est.samples,
        "seed": seed,
        "estimate": est.mean,
        "stderr": est.standard_error,
        "target_exact": target,
        "z_score": z if z is None or math.isfinite(z) else None,
    }


def cmd_haar_moment(args) -> int:
    report = haar_moment_report(args.k, args.m, args.n, args.samples, args.seed, args.odd)
    _write(args, json.dumps(report, indent=2) + "\n")
    z = report["z_score"]
    return EXIT_CHECK if z is not None and abs(z) > args.z_max else EXIT_OK


def cmd_tw_table(args) -> int:
    table = cached_table(args.xmin, args.xmax, args.steps)
    limit = table.limit(args.m)
    rows = [[float(x), float(q), float(F), float(L)] for x, q, F, L in zip(table.grid, table.q, table.F, limit)]
    _emit(args, ["x", "q", "F", "F_limit_m"], rows, [f"tolerance={table.tolerance:.3e}"])
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rimhook", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"rimhook {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_, aliases=()):
        p = sub.add_parser(name, help=help_, aliases=list(aliases))
        p.set_defaults(func=func)
        p.add_argument("--output", "-o", help="write to this file instead of stdout")
        p.add_argument("--format", choices=["csv", "json"], default="csv")
        return p

    def add_mc(p, grid=True):
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--m", type=int, required=True)
        p.add_argument("--samples", type=int, default=10_000)
        p.add_argument("--seed", type=int, required=True)
        p.add_argument("--threads", type=int, default=1)
        if grid:
            p.add_argument("--grid", default="-6:4:41", help="x0:x1:steps")
            p.add_argument("--scaling", choices=["normalized", "raw"], default="normalized")
            p.add_argument("--limit-m", type=int, help="compare against the limit law for this m")

    p = add("verify", cmd_verify, "run the exact identity suite")
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--max-m", type=int, default=3)

    p = add("quotient", cmd_quotient, "m-core and m-quotient of a partition")
    p.add_argument("partition", help='rows like "3,1"; "-" for the empty partition')
    p.add_argument("-m", "--m", type=int, required=True)

    p = add("lis", cmd_lis, "colored LIS length of one permutation")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--perm", required=True)
    p.add_argument("--colors")

    p = add("exact-cdf", cmd_exact_cdf, "exact P{L <= k}")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--signed", choices=["even", "odd"], help="signed permutations instead")

    p = add("simulate", cmd_simulate, "Monte Carlo CDF vs the limit law")
    add_mc(p)

    p = add("limit-law", cmd_limit_law, "Monte Carlo KS check against the limit law", aliases=["theorem81"])
    add_mc(p)
    p.add_argument("--threshold", type=float, default=0.08)

    p = add("independence", cmd_independence, "joint vs product CDF of per-color widths")
    add_mc(p, grid=False)
    p.add_argument("--points", default="-2.5,-1.5,-0.5")
    p.add_argument("--tol", type=float, default=0.08)

    p = add("haar-moment", cmd_haar_moment, "Monte Carlo trace moment over U(k)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--odd", action="store_true", help="E|Tr(U^2)^n Tr U|^2")
    p.add_argument("--z-max", type=float, default=3.5)

    p = add("tw-table", cmd_tw_table, "tabulate q(x), F(x) and F^m(m^{-2/3}x)")
    p.add_argument("--xmin", type=float, default=-8.0)
    p.add_argument("--xmax", type=float, default=6.0)
    p.add_argument("--steps", type=int, default=29)
    p.add_argument("--m", type=int, default=1)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
