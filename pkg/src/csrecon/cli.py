"""Command-line front end.

Subcommands: reconstruct (single run), sweep (CSV/SVG experiment grid),
mask / phantom (PGM generators), psnr (compare two PGM files).
Exit codes: 0 success, 1 runtime failure, 2 usage or config error.
"""

from __future__ import annotations

import argparse
import sys

from .imaging import PgmError, load_pgm, save_pgm, shepp_logan
from .masks import mask_to_grid
from .measurement import draw_plan, forward, save_plan
from .metrics import psnr
from .solvers import SolverConfig, ist_solve, twist_solve
from .sweep import (
    ConfigError,
    build_mask,
    parse_config_file,
    run_sweep,
    write_csv,
    write_svg,
)


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--lambda", dest="lam", type=float, default=0.01,
                   help="TV regularization weight (default 0.01)")
    p.add_argument("--solver", choices=("twist", "ist"), default="twist")
    p.add_argument("--max-iters", type=int, default=200)
    p.add_argument("--rel-tol", type=float, default=1e-4)
    p.add_argument("--tv-inner-iters", type=int, default=10)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--xi1", type=float, default=1e-2)
    p.add_argument("--no-monotone", action="store_true",
                   help="disable the monotone objective guard")


def _add_mask_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mask-shape", choices=("square", "circle", "radial", "full"),
                   required=True)
    p.add_argument("--fraction", type=float, default=0.1, help="square half-width fraction")
    p.add_argument("--a", type=float, default=1.0, help="circle center scale")
    p.add_argument("--b", type=float, default=6.0, help="circle radius divisor")
    p.add_argument("--lines", type=int, default=16, help="radial line count")


def _solver_config(args) -> SolverConfig:
    return SolverConfig(
        lam=args.lam,
        alpha=args.alpha,
        beta=args.beta,
        xi1=args.xi1,
        max_iters=args.max_iters,
        rel_tol=args.rel_tol,
        tv_inner_iters=args.tv_inner_iters,
        monotone=not args.no_monotone,
    )


def _cmd_reconstruct(args) -> int:
    if args.image is not None:
        truth = load_pgm(args.image)
    else:
        truth = shepp_logan(args.phantom_n)
    mask = build_mask(args.mask_shape, truth.height, truth.width,
                      fraction=args.fraction, a=args.a, b=args.b, lines=args.lines)
    plan = draw_plan(mask, args.domain, args.inside, args.outside, args.seed)
    if args.plan_out:
        save_plan(plan, args.plan_out)
    meas = forward(truth, plan)
    solve = twist_solve if args.solver == "twist" else ist_solve
    recon, trace = solve(meas, _solver_config(args), reference=truth)
    if args.out:
        save_pgm(recon, args.out, bit_depth=args.bit_depth)
    if args.trace:
        trace.write_csv(args.trace)
    value = psnr(truth, recon)
    print(f"psnr_db={value!r} iters={len(trace.records)} measurements={len(plan)}")
    return 0


def _cmd_sweep(args) -> int:
    cfg = parse_config_file(args.config)
    rows = run_sweep(cfg, jobs=args.jobs)
    write_csv(rows, args.out_csv)
    if args.out_svg:
        write_svg(rows, args.out_svg)
    print(f"rows={len(rows)} csv={args.out_csv}" + (f" svg={args.out_svg}" if args.out_svg else ""))
    return 0


def _cmd_mask(args) -> int:
    n2 = args.n2 if args.n2 is not None else args.n
    mask = build_mask(args.shape, args.n, n2,
                      fraction=args.fraction, a=args.a, b=args.b, lines=args.lines)
    save_pgm(mask_to_grid(mask), args.out, bit_depth=8)
    inside = mask.inside_count
    print(f"mask={mask.descriptor} inside={inside} outside={args.n * n2 - inside}")
    return 0


def _cmd_phantom(args) -> int:
    save_pgm(shepp_logan(args.n), args.out, bit_depth=args.bit_depth)
    print(f"phantom n={args.n} out={args.out}")
    return 0


def _cmd_psnr(args) -> int:
    a = load_pgm(args.reference)
    b = load_pgm(args.estimate)
    print(f"psnr_db={psnr(a, b)!r}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="csrecon",
        description="Compressed-sensing image reconstruction from masked "
                    "DFT/DCT measurements with IST/TwIST TV solvers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reconstruct", help="acquire, reconstruct, report PSNR")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--image", help="ground-truth PGM file")
    src.add_argument("--phantom-n", type=int, help="use an N x N head phantom")
    p.add_argument("--domain", choices=("dft", "dct"), required=True)
    _add_mask_flags(p)
    p.add_argument("--inside", type=float, required=True,
                   help="percent of mask cells to sample")
    p.add_argument("--outside", type=float, required=True,
                   help="percent of complement cells to sample")
    p.add_argument("--seed", type=int, required=True)
    _add_solver_flags(p)
    p.add_argument("--out", help="write the reconstruction PGM here")
    p.add_argument("--bit-depth", type=int, choices=(8, 16), default=16)
    p.add_argument("--trace", help="write per-iteration trace CSV here")
    p.add_argument("--plan-out", help="write the sampling plan text file here")
    p.set_defaults(func=_cmd_reconstruct)

    p = sub.add_parser("sweep", help="run a config-driven PSNR sweep")
    p.add_argument("config", help="flat key = value sweep config file")
    p.add_argument("--out-csv", required=True)
    p.add_argument("--out-svg")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("mask", help="write a mask as a 0/255 PGM")
    p.add_argument("--shape", choices=("square", "circle", "radial", "full"),
                   required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--n2", type=int, default=None, help="width if not square")
    p.add_argument("--fraction", type=float, default=0.1)
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--b", type=float, default=6.0)
    p.add_argument("--lines", type=int, default=16)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_mask)

    p = sub.add_parser("phantom", help="write a head-phantom PGM")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--bit-depth", type=int, choices=(8, 16), default=16)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_phantom)

    p = sub.add_parser("psnr", help="PSNR between two PGM files")
    p.add_argument("reference")
    p.add_argument("estimate")
    p.set_defaults(func=_cmd_psnr)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (PgmError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
