"""Command-line interface.

Subcommands cover the full pipeline: ``identify`` fits a Rayleigh-damped
model to a samples file, ``rank`` emits singular-value decay data, ``sweep``
grid-searches unknown damping parameters, ``eval`` tabulates transfer values
(optionally with errors against a reference model), and ``gen``/``demo``
produce benchmark models and sample files.

Reports go to stdout as ``key=value`` lines.  Exit codes: 0 on success, 2 on
input or configuration errors, 3 on numerical failures; both error classes
print a one-line ``error: ...`` reason to stderr.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

import numpy as np

from . import io
from .benchgen import GeneratorSpec, demo_system, random_rayleigh_system
from .exceptions import DataError, NumericalError
from .loewner_fo import build_fo_loewner, numerical_rank
from .loewner_so import (
    build_so_loewner,
    identify_so_reduced,
    realify_pencil,
    so_sylvester_residuals,
)
from .paramfit import ParamGrid, grid_search
from .sampling import SampleSet, conjugate_close, partition, sample_transfer
from .systems import DampingParams, SecondOrderSystem, eval_fo, eval_so

_FMT = ".17g"


def _kv(key: str, value) -> None:
    if isinstance(value, float):
        value = format(value, _FMT)
    print(f"{key}={value}")


def _parse_range(text: str, flag: str) -> tuple[float, float]:
    parts = text.split(":")
    if len(parts) != 2:
        raise DataError(f"{flag} expects 'low:high', got {text!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError:
        raise DataError(f"{flag} expects numeric bounds, got {text!r}") from None
    return lo, hi


def _parse_grid(text: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise DataError(f"--grid expects 'NxM', got {text!r}")
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise DataError(f"--grid expects integer dimensions, got {text!r}") from None
    if n < 1 or m < 1:
        raise DataError(f"--grid dimensions must be positive, got {text!r}")
    return n, m


def _load_samples(args) -> SampleSet:
    data = io.load_samples_csv(args.samples)
    if getattr(args, "close_conjugates", False):
        data = conjugate_close(data)
    return data


def _damping(args, required: bool) -> DampingParams | None:
    alpha, beta = args.alpha, args.beta
    if alpha is None and beta is None:
        if required:
            raise DataError("missing damping parameters: pass --alpha and --beta")
        return None
    if alpha is None or beta is None:
        raise DataError("pass both --alpha and --beta (or neither)")
    return DampingParams(alpha, beta)


def _truncation(args) -> tuple[int | None, float | None]:
    if args.order is not None and args.tol is not None:
        raise DataError("pass at most one of --order and --tol")
    if args.order is None and args.tol is None:
        return None, 1e-10
    return args.order, args.tol


def _interp_residual(system, data: SampleSet) -> float:
    evaluate = eval_so if isinstance(system, SecondOrderSystem) else eval_fo
    worst = 0.0
    for s, v in zip(data.points, data.values):
        err = abs(evaluate(system, s) - v) / (1.0 + abs(v))
        worst = max(worst, err)
    return worst


def cmd_identify(args) -> int:
    data = _load_samples(args)
    params = _damping(args, required=True)
    order, tol = _truncation(args)
    parted = partition(data, args.partition)
    sd = build_so_loewner(parted, params)
    res1, res2 = so_sylvester_residuals(sd)
    if args.real:
        sd = realify_pencil(sd)
    system, _ = identify_so_reduced(sd, order=order, tol=tol)
    io.save_model_json(args.out, system)
    svals = np.linalg.svd(sd.Lso, compute_uv=False)
    rel = svals / svals[0] if svals[0] else svals
    _kv("order", system.order)
    _kv("alpha", params.alpha)
    _kv("beta", params.beta)
    _kv("sigma_rel", ",".join(format(v, _FMT) for v in rel))
    _kv("max_interp_residual", _interp_residual(system, data))
    _kv("sylvester_residual_1", res1)
    _kv("sylvester_residual_2", res2)
    _kv("model", args.out)
    return 0


def cmd_rank(args) -> int:
    data = _load_samples(args)
    params = _damping(args, required=False)
    parted = partition(data, args.partition)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    tau = args.tol if args.tol is not None else 1e-10

    pair = build_fo_loewner(parted)
    sv_fo = np.linalg.svd(pair.L, compute_uv=False)
    fo_path = outdir / "sv_fo.csv"
    if sv_fo[0] == 0.0:
        io.save_singular_values_csv(fo_path, [0.0])
        _kv("rank_fo", 0)
    else:
        io.save_singular_values_csv(fo_path, sv_fo / sv_fo[0])
        _kv("rank_fo", numerical_rank(pair.L, tau))
    _kv("sv_fo", fo_path)

    if params is not None:
        sd = build_so_loewner(parted, params)
        sv_so = np.linalg.svd(sd.Lso, compute_uv=False)
        so_path = outdir / "sv_so.csv"
        if sv_so[0] == 0.0:
            io.save_singular_values_csv(so_path, [0.0])
            _kv("rank_so", 0)
        else:
            io.save_singular_values_csv(so_path, sv_so / sv_so[0])
            _kv("rank_so", numerical_rank(sd.Lso, tau))
        _kv("sv_so", so_path)
    return 0


def cmd_sweep(args) -> int:
    data = _load_samples(args)
    if args.order is not None and args.tol is not None:
        raise DataError("pass at most one of --order and --tol")
    grid = ParamGrid.from_ranges(
        _parse_range(args.alpha_range, "--alpha-range"),
        _parse_range(args.beta_range, "--beta-range"),
        shape=_parse_grid(args.grid),
        spacing="log" if args.log_grid else "auto",
    )
    result = grid_search(
        data, grid,
        test_fraction=args.split,
        seed=args.seed,
        order=args.order,
        tol=args.tol,
        partition_strategy=args.partition,
    )
    io.save_sweep_csv(args.out, result)
    print(
        f"alpha*={format(result.best_alpha, _FMT)}, "
        f"beta*={format(result.best_beta, _FMT)}, "
        f"J={format(result.best_objective, _FMT)}"
    )
    _kv("split_seed", result.split_seed)
    _kv("sweep", args.out)
    return 0


def cmd_eval(args) -> int:
    system = io.load_model_json(args.model)
    reference = io.load_model_json(args.ref) if args.ref else None
    if args.points < 1:
        raise DataError(f"--points must be positive, got {args.points}")
    if not 0.0 < args.wmin <= args.wmax:
        raise DataError(f"need 0 < wmin <= wmax, got {args.wmin}, {args.wmax}")
    omegas = np.logspace(np.log10(args.wmin), np.log10(args.wmax), args.points)

    def transfer(model, s):
        return eval_so(model, s) if isinstance(model, SecondOrderSystem) else eval_fo(model, s)

    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh)
        header = ["freq", "abs_H", "re_H", "im_H"]
        if reference is not None:
            header.append("abs_err")
        writer.writerow(header)
        for omega in omegas:
            value = transfer(system, 1j * omega)
            row = [format(omega, _FMT), format(abs(value), _FMT),
                   format(value.real, _FMT), format(value.imag, _FMT)]
            if reference is not None:
                row.append(format(abs(value - transfer(reference, 1j * omega)), _FMT))
            writer.writerow(row)
    _kv("rows", len(omegas))
    _kv("bode", args.out)
    return 0


def _emit_samples(system, args) -> None:
    count = args.points
    omegas = np.logspace(np.log10(args.wmin), np.log10(args.wmax), count)
    samples = sample_transfer(system, 1j * omegas)
    io.save_samples_csv(args.samples_out, samples)
    _kv("samples", args.samples_out)
    _kv("sample_count", count)


def cmd_gen(args) -> int:
    spec = GeneratorSpec(
        order=args.n,
        params=DampingParams(args.alpha, args.beta),
        seed=args.seed,
    )
    system = random_rayleigh_system(spec)
    io.save_model_json(args.out, system)
    _kv("order", system.order)
    _kv("model", args.out)
    if args.points is not None:
        _emit_samples(system, args)
    return 0


def cmd_demo(args) -> int:
    system = demo_system()
    io.save_model_json(args.out, system)
    _kv("order", system.order)
    _kv("model", args.out)
    if args.samples is not None:
        if args.samples < 1:
            raise DataError(f"--samples must be positive, got {args.samples}")
        args.points = args.samples
        _emit_samples(system, args)
    return 0


def _add_partition_flags(sub) -> None:
    sub.add_argument("--partition", choices=["interleave", "half"], default="interleave",
                     help="splitting of samples into right/left interpolation sets")
    sub.add_argument("--close-conjugates", action="store_true",
                     help="append missing conjugate samples before partitioning")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="soloewner",
        description="Rayleigh-damped second-order system identification from frequency samples",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("identify", help="fit a second-order model to a samples CSV")
    p.add_argument("--samples", required=True, help="input samples CSV")
    p.add_argument("--alpha", type=float, help="mass-proportional damping coefficient")
    p.add_argument("--beta", type=float, help="stiffness-proportional damping coefficient")
    p.add_argument("--order", type=int, help="truncation order (exclusive with --tol)")
    p.add_argument("--tol", type=float, help="relative rank tolerance (default 1e-10)")
    p.add_argument("--real", action="store_true",
                   help="realify the pencil (needs conjugate-closed data)")
    _add_partition_flags(p)
    p.add_argument("--out", default="model.json", help="output model JSON path")
    p.set_defaults(func=cmd_identify)

    p = subs.add_parser("rank", help="emit singular-value decay CSVs")
    p.add_argument("--samples", required=True)
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--tol", type=float, help="relative rank tolerance (default 1e-10)")
    _add_partition_flags(p)
    p.add_argument("--out", default=".", help="output directory for sv_fo.csv / sv_so.csv")
    p.set_defaults(func=cmd_rank)

    p = subs.add_parser("sweep", help="grid-search damping parameters")
    p.add_argument("--samples", required=True)
    p.add_argument("--alpha-range", required=True, metavar="a:b")
    p.add_argument("--beta-range", required=True, metavar="a:b")
    p.add_argument("--grid", default="20x20", metavar="NxM")
    p.add_argument("--log-grid", action="store_true", help="force log-spaced grid axes")
    p.add_argument("--split", type=float, default=0.2, help="test fraction (default 0.2)")
    p.add_argument("--seed", type=int, default=0, help="split seed (default 0)")
    p.add_argument("--order", type=int, help="truncation order inside the objective")
    p.add_argument("--tol", type=float, help="rank tolerance inside the objective (default 1e-8)")
    _add_partition_flags(p)
    p.add_argument("--out", default="sweep.csv", help="output sweep CSV path")
    p.set_defaults(func=cmd_sweep)

    p = subs.add_parser("eval", help="tabulate transfer values over a frequency grid")
    p.add_argument("--model", required=True, help="model JSON to evaluate")
    p.add_argument("--ref", help="reference model JSON for the error column")
    p.add_argument("--wmin", type=float, default=0.1)
    p.add_argument("--wmax", type=float, default=10.0)
    p.add_argument("--points", type=int, default=200)
    p.add_argument("--out", default="bode.csv", help="output CSV path")
    p.set_defaults(func=cmd_eval)

    p = subs.add_parser("gen", help="generate a random proportionally-damped benchmark model")
    p.add_argument("--n", type=int, required=True, help="model order")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--alpha", type=float, default=0.01)
    p.add_argument("--beta", type=float, default=0.02)
    p.add_argument("--out", default="model.json")
    p.add_argument("--points", type=int, help="also emit this many samples on the imaginary axis")
    p.add_argument("--wmin", type=float, default=0.1)
    p.add_argument("--wmax", type=float, default=10.0)
    p.add_argument("--samples-out", default="samples.csv")
    p.set_defaults(func=cmd_gen)

    p = subs.add_parser("demo", help="write the demo model and optionally its samples")
    p.add_argument("--samples", type=int, help="number of samples to emit")
    p.add_argument("--wmin", type=float, default=0.1)
    p.add_argument("--wmax", type=float, default=10.0)
    p.add_argument("--out", default="demo_model.json")
    p.add_argument("--samples-out", default="demo_samples.csv")
    p.set_defaults(func=cmd_demo)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
