"""Gabor frame bounds via sampling stability of rescaled shift systems.

A Gabor system over the rectangular lattice alpha Z x beta Z with window g
is a frame exactly when the rescaled window samples stably on beta * Lambda
uniformly over fractional shifts x. frame_bounds sweeps x over a regular
grid and aggregates the truncated stability interval.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import generator, pregramian
from .errors import UnsupportedKind
from .pointset import PointSet, beurling, separation


@dataclass
class FrameReport:
    A_est: float
    B_est: float
    x_profile: list
    beta: float
    density: float
    verdict: str  # "frame" | "not_frame" | "inconclusive"
    T: float
    margin: int
    x_resolution: int
    floor: float
    notes: tuple = ()


def scale_window(spec: generator.GeneratorSpec, beta: float) -> generator.GeneratorSpec:
    """Window of the dilated system: eval(out, x) proportional to
    eval(in, x/beta), normalized so the transform is 1 at the origin."""
    if not beta > 0:
        raise ValueError("beta must be positive")
    if spec.kind == "gaussian_type":
        return generator.gaussian(
            deltas=tuple(beta * d for d in spec.deltas), c=beta * beta * spec.c
        )
    if spec.kind == "one_sided_exp":
        return generator.one_sided_exp(delta=beta * spec.delta)
    if spec.kind == "sech":
        return generator.sech(nu=spec.nu / beta)
    raise UnsupportedKind("modulated windows do not rescale within the family")


def frame_bounds(
    spec: generator.GeneratorSpec,
    ps: PointSet,
    beta: float,
    T: float = 40.0,
    margin: int | None = None,
    x_resolution: int = 64,
    tol: float = 1e-12,
    floor_rel: float = 1e-6,
    threads: int = 1,
    density_R: float | None = None,
) -> FrameReport:
    """Estimate Gabor frame bounds for the system (g, Lambda x beta Z)."""
    scaled = scale_window(spec, beta)
    sps = ps.scale(beta)
    if margin is None:
        margin = pregramian.default_margin(sps)
    xs = [i / x_resolution for i in range(x_resolution)]

    def one(x):
        pg = pregramian.build(scaled, sps, x=x, T=T, margin=margin, tol=tol)
        smin, smax = pregramian.sigma_extremes(pg)
        return (x, smin * smin, smax * smax)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            profile = list(pool.map(one, xs))
    else:
        profile = [one(x) for x in xs]

    A = min(p[1] for p in profile)
    B = max(p[2] for p in profile)
    floor = floor_rel * B
    notes = []
    if A < floor:
        verdict = "not_frame"
    else:
        jump = 0.0
        for (x0, a0, _), (x1, a1, _) in zip(profile, profile[1:]):
            jump = max(jump, abs(a1 - a0) / max(a1, a0))
        if jump > 0.5:
            verdict = "inconclusive"
            notes.append(
                f"lower-bound profile jumps by {jump:.2f} between shift nodes; "
                "refine x_resolution or T"
            )
        else:
            verdict = "frame"

    if ps.provenance == "lattice" and ps.alpha:
        density = 1.0 / (ps.alpha * beta)
    else:
        if density_R is None:
            span = float(ps.points[-1] - ps.points[0])
            density_R = max(min(25.0, span / 4.0), 1.0)
        density = beurling(ps, density_R).lower / beta
    return FrameReport(
        A_est=A,
        B_est=B,
        x_profile=profile,
        beta=beta,
        density=density,
        verdict=verdict,
        T=T,
        margin=margin,
        x_resolution=x_resolution,
        floor=floor,
        notes=tuple(notes),
    )


def lattice_sweep(
    spec: generator.GeneratorSpec,
    alpha: float,
    betas,
    T: float = 40.0,
    **kw,
) -> list:
    """frame_bounds across modulation steps; lattice span covers [-T, T]
    after the densest rescaling."""
    betas = list(betas)
    if not betas:
        return []
    if any(not b > 0 for b in betas):
        raise ValueError("betas must be positive")
    from .pointset import lattice

    span = int(math.ceil(T / (alpha * min(betas)))) + 1
    ps = lattice(alpha, span)
    return [frame_bounds(spec, ps, beta, T=T, **kw) for beta in betas]
