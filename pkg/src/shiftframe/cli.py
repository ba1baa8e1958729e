"""Command-line interface.

Subcommands: eval, density, zak, sample-bounds, gabor-sweep, reconstruct,
interpolate, rolle, fock-audit. Outputs embed the full run configuration and
library version; identical configurations produce byte-identical output
regardless of thread count. Exit codes: 0 success, 2 usage, 3 numerical
failure, 4 inconclusive verdict.

Ranges use start:stop:step (start included; values below stop + step/2).
CSV uses '.' decimals with 17 significant digits.
"""

import argparse
import json
import sys

import numpy as np

from . import __version__, analytic, gabor, generator, pointset, pregramian, reconstruct
from .backend import backend_name, resolve_threads
from .errors import (
    DegenerateMatrix,
    IllConditioned,
    Infeasible,
    NonConvergent,
    ShiftframeError,
    ZeroOnContour,
)

_NUMERICAL = (NonConvergent, IllConditioned, Infeasible, DegenerateMatrix, ZeroOnContour)


def _fmt(v: float) -> str:
    return f"{float(v):.17g}"


def parse_range(text: str):
    """start:stop:step (inclusive start, values below stop + step/2) or a
    comma-separated list."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"range must be start:stop:step, got {text!r}")
        start, stop, step = (float(p) for p in parts)
        if step <= 0:
            raise ValueError("range step must be positive")
        vals = []
        v = start
        while v < stop + step / 2.0:
            vals.append(v)
            v = start + (len(vals)) * step
        return vals
    return [float(p) for p in text.split(",") if p.strip()]


def _load_gen(text: str) -> generator.GeneratorSpec:
    if text.lstrip().startswith("{"):
        return generator.from_json(text)
    with open(text) as fh:
        return generator.from_json(fh.read())


def _load_reals(path):
    vals = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                vals.append(float(line))
    return vals


def _load_measure(path) -> analytic.DiscreteMeasure:
    with open(path) as fh:
        obj = json.load(fh)
    times, amps = [], []
    for row in obj["atoms"]:
        times.append(float(row[0]))
        amps.append(complex(row[1], row[2]) if len(row) > 2 else complex(row[1]))
    return analytic.DiscreteMeasure(times=times, amps=amps)


def _points_from_args(args) -> pointset.PointSet:
    if getattr(args, "points", None):
        return pointset.load_points(args.points)
    if getattr(args, "lattice", None):
        parts = [p for p in args.lattice.split(",") if p.strip()]
        alpha = float(parts[0])
        span = int(parts[1]) if len(parts) > 1 else max(int(np.ceil(args.T / alpha)) + 1, 2)
        return pointset.lattice(alpha, span)
    if getattr(args, "jitter", None):
        a, j, seed, span = args.jitter.split(",")
        return pointset.make_jittered(float(a), float(j), int(seed), int(span))
    raise ValueError("no point source: use --points, --lattice, or --jitter")


def _config(args, command):
    cfg = {k: v for k, v in sorted(vars(args).items()) if k != "func" and v is not None}
    cfg["command"] = command
    cfg["version"] = __version__
    cfg["backend"] = backend_name()
    return cfg


def _emit(args, text: str):
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, command, payload):
    payload = dict(payload)
    payload["config"] = _config(args, command)
    _emit(args, json.dumps(payload, sort_keys=True, indent=2) + "\n")


# ----------------------------------------------------------------- commands

def _cmd_eval(args):
    spec = _load_gen(args.gen)
    xs = parse_range(args.x)
    vals = [generator.evaluate(spec, x, args.tol) for x in xs]
    lines = [f"# {json.dumps(_config(args, 'eval'), sort_keys=True)}"]
    lines += [f"{_fmt(x)},{_fmt(v)}" for x, v in zip(xs, vals)]
    _emit(args, "\n".join(lines) + "\n")
    return 0


def _cmd_density(args):
    ps = _points_from_args(args)
    est = pointset.beurling(ps, args.R)
    _emit_json(
        args,
        "density",
        {
            "lower": est.lower,
            "upper": est.upper,
            "window_radius": est.window_radius,
            "certified": est.certified,
            "n_points": len(ps),
            "separation": pointset.separation(ps) if len(ps) > 1 else None,
        },
    )
    return 0


def _cmd_zak(args):
    from . import zak as zakmod

    spec = _load_gen(args.gen)
    grid = zakmod.zak_grid(spec, args.grid, args.trunc_tol)
    lines = [f"# {json.dumps(_config(args, 'zak'), sort_keys=True)}", "x,xi,re,im,abs"]
    for i, x in enumerate(grid.x_nodes):
        for j, xi in enumerate(grid.xi_nodes):
            z = grid.values[i, j]
            lines.append(
                f"{_fmt(x)},{_fmt(xi)},{_fmt(z.real)},{_fmt(z.imag)},{_fmt(abs(z))}"
            )
    _emit(args, "\n".join(lines) + "\n")
    return 0


def _cmd_sample_bounds(args):
    spec = _load_gen(args.gen)
    ps = _points_from_args(args)
    sb = pregramian.sampling_bounds(
        spec, ps, T=args.T, margin=args.margin, x=args.x, floor_rel=args.floor_rel
    )
    _emit_json(
        args,
        "sample-bounds",
        {
            "A_est": sb.A_est,
            "B_est": sb.B_est,
            "T": sb.T,
            "margin": sb.margin,
            "floor": sb.floor,
            "verdict": sb.verdict,
        },
    )
    return 0


def _cmd_gabor_sweep(args):
    spec = _load_gen(args.gen)
    betas = parse_range(args.betas)
    threads = resolve_threads(args.threads)
    reports = gabor.lattice_sweep(
        spec,
        args.alpha,
        betas,
        T=args.T,
        margin=args.margin,
        x_resolution=args.x_resolution,
        floor_rel=args.floor_rel,
        threads=threads,
    )
    lines = [
        f"# {json.dumps(_config(args, 'gabor-sweep'), sort_keys=True)}",
        "beta,alpha_beta,density,A_est,B_est,verdict",
    ]
    for rep in reports:
        lines.append(
            f"{_fmt(rep.beta)},{_fmt(args.alpha * rep.beta)},{_fmt(rep.density)},"
            f"{_fmt(rep.A_est)},{_fmt(rep.B_est)},{rep.verdict}"
        )
    _emit(args, "\n".join(lines) + "\n")
    return 4 if any(r.verdict == "inconclusive" for r in reports) else 0


def _cmd_reconstruct(args):
    spec = _load_gen(args.gen)
    ps = _points_from_args(args)
    res = reconstruct.recover(
        spec, ps, _load_reals(args.samples), T=args.T, margin=args.margin
    )
    _emit_json(
        args,
        "reconstruct",
        {
            "offset": res.coeffs.offset,
            "coeffs": [float(v) for v in res.coeffs.values],
            "residual_l2": res.residual_l2,
            "condition_estimate": res.condition_estimate,
        },
    )
    return 0


def _cmd_interpolate(args):
    spec = _load_gen(args.gen)
    ps = _points_from_args(args)
    res = reconstruct.interpolate(
        spec, ps, _load_reals(args.values), T=args.T, margin=args.margin
    )
    _emit_json(
        args,
        "interpolate",
        {
            "offset": res.coeffs.offset,
            "coeffs": [float(v) for v in res.coeffs.values],
            "residual_l2": res.residual_l2,
            "condition_estimate": res.condition_estimate,
            "coeff_l2": res.coeffs.l2,
        },
    )
    return 0


def _cmd_rolle(args):
    lo, hi = (float(p) for p in args.interval.split(","))
    failures = []
    for t in range(args.trials):
        out = analytic.rolle_trial(args.seed + 1000 * t, (lo, hi), args.grid_step)
        if not out["ok"]:
            failures.append(
                {
                    "seed": out["seed"],
                    "before": out["before"].count,
                    "after": out["after"].count,
                }
            )
    _emit_json(
        args,
        "rolle",
        {
            "trials": args.trials,
            "ok_count": args.trials - len(failures),
            "failures": failures,
        },
    )
    return 0 if not failures else 3


def _cmd_fock_audit(args):
    mu = _load_measure(args.measure)
    rows = analytic.jensen_audit(
        mu, parse_range(args.radii), tol=args.tol, samples_per_circle=args.samples_per_circle
    )
    _emit_json(args, "fock-audit", {"rows": rows, "all_ok": all(r["ok"] for r in rows)})
    return 0 if all(r["ok"] for r in rows) else 3


# ------------------------------------------------------------------- parser

def _add_common(p, gen=True):
    if gen:
        p.add_argument("--gen", required=True, help="window spec: JSON file or inline JSON")
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--threads", type=int, default=None, help="worker threads (env SHIFTFRAME_THREADS)")
    p.add_argument("--seed", type=int, default=0)


def _add_points(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--points", help="file with one point per line")
    g.add_argument("--lattice", help="alpha[,span]")
    g.add_argument("--jitter", help="alpha,jitter,seed,span")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="shiftframe",
        description="Sampling stability and Gabor frame bounds for shift-invariant spaces",
    )
    ap.add_argument("--version", action="version", version=f"shiftframe {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a window")
    _add_common(p)
    p.add_argument("--x", required=True, help="points: list or start:stop:step")
    p.add_argument("--tol", type=float, default=1e-12)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("density", help="Beurling density estimates of a point set")
    _add_common(p, gen=False)
    _add_points(p)
    p.add_argument("--R", type=float, default=10.0)
    p.add_argument("--T", type=float, default=40.0, help=argparse.SUPPRESS)
    p.set_defaults(func=_cmd_density)

    p = sub.add_parser("zak", help="Zak transform on a grid (CSV)")
    _add_common(p)
    p.add_argument("--grid", type=int, default=128)
    p.add_argument("--trunc-tol", type=float, default=1e-12, dest="trunc_tol")
    p.set_defaults(func=_cmd_zak)

    p = sub.add_parser("sample-bounds", help="sampling stability interval on a point set")
    _add_common(p)
    _add_points(p)
    p.add_argument("--T", type=float, default=40.0)
    p.add_argument("--margin", type=int, default=None)
    p.add_argument("--x", type=float, default=0.0)
    p.add_argument("--floor-rel", type=float, default=1e-8, dest="floor_rel")
    p.set_defaults(func=_cmd_sample_bounds)

    p = sub.add_parser("gabor-sweep", help="frame bounds across modulation steps (CSV)")
    _add_common(p)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--betas", required=True, help="list or start:stop:step")
    p.add_argument("--T", type=float, default=40.0)
    p.add_argument("--margin", type=int, default=None)
    p.add_argument("--x-resolution", type=int, default=64, dest="x_resolution")
    p.add_argument("--floor-rel", type=float, default=1e-6, dest="floor_rel")
    p.set_defaults(func=_cmd_gabor_sweep)

    p = sub.add_parser("reconstruct", help="recover coefficients from samples")
    _add_common(p)
    _add_points(p)
    p.add_argument("--samples", required=True, help="file with one sample per line")
    p.add_argument("--T", type=float, default=40.0)
    p.add_argument("--margin", type=int, default=None)
    p.set_defaults(func=_cmd_reconstruct)

    p = sub.add_parser("interpolate", help="min-norm coefficients hitting given values")
    _add_common(p)
    _add_points(p)
    p.add_argument("--values", required=True, help="file with one value per line")
    p.add_argument("--T", type=float, default=40.0)
    p.add_argument("--margin", type=int, default=None)
    p.set_defaults(func=_cmd_interpolate)

    p = sub.add_parser("rolle", help="seeded factor-transfer zero-count audits")
    _add_common(p, gen=False)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--interval", default="-15,15")
    p.add_argument("--grid-step", type=float, default=0.005, dest="grid_step")
    p.set_defaults(func=_cmd_rolle)

    p = sub.add_parser("fock-audit", help="zero-count growth audit of a discrete measure")
    _add_common(p, gen=False)
    p.add_argument("--measure", required=True, help="JSON file {\"atoms\": [[t, re, im], ...]}")
    p.add_argument("--radii", default="1,2,3")
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--samples-per-circle", type=int, default=2048, dest="samples_per_circle")
    p.set_defaults(func=_cmd_fock_audit)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except _NUMERICAL as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except (ShiftframeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
