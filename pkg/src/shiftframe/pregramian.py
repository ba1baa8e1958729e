"""Truncated coefficient-to-sample matrices and sampling stability bounds.

For a window g, points lambda in [-T, T], and integer shifts k, the matrix
(g(x + lambda - k)) maps shift coefficients to samples. Its extreme singular
values, with edge columns dropped (truncation excites spurious modes living
near the boundary), estimate the sampling stability interval [A, B].
"""

import math
from dataclasses import dataclass

import numpy as np

from . import generator
from .errors import DegenerateMatrix, EmptyWindow
from .pointset import PointSet, separation

DEFAULT_TOL = 1e-12


@dataclass
class PreGramianWindow:
    row_points: np.ndarray
    col_indices: np.ndarray
    values: np.ndarray
    tail_bound: float
    interior_margin: int
    x: float
    T: float
    tol: float
    core_left: float = 0.0
    core_right: float = 0.0


@dataclass
class SamplingBounds:
    A_est: float
    B_est: float
    T: float
    margin: int
    floor: float
    verdict: str  # "sampling" | "below_floor"


def default_margin(ps: PointSet) -> int:
    return int(math.ceil(5.0 / separation(ps)))


def build(
    spec: generator.GeneratorSpec,
    ps: PointSet,
    x: float = 0.0,
    T: float = 40.0,
    margin: int | None = None,
    tol: float = DEFAULT_TOL,
) -> PreGramianWindow:
    """Materialize (g(x + lambda - k)) for lambda in [-T, T], with column
    range padded by the window's certified per-side decay radii."""
    if not T > 1:
        raise ValueError(f"T must exceed 1, got {T}")
    lam = ps.restrict(-T, T)
    if lam.size == 0:
        raise EmptyWindow(f"no points in [-{T}, {T}]")
    rl, rr = generator.side_radii(spec, tol)
    # column k contributes when x + lambda - k lands inside [-rl, rr]
    k_lo = int(math.floor(-T - rr))
    k_hi = int(math.ceil(T + rl + 1.0))
    cols = np.arange(k_lo, k_hi + 1)
    args = (x + lam[:, None]) - cols[None, :]
    values = generator.evaluate(spec, args, tol)
    if margin is None:
        margin = default_margin(ps) if len(ps) > 1 else 0
    # bulk of column k's sample coupling: g above one permille of its peak
    core_l, core_r = generator.side_radii(
        spec, 1e-3 * generator.global_max_bound(spec)
    )
    return PreGramianWindow(
        row_points=lam,
        col_indices=cols,
        values=values,
        tail_bound=generator.tail_sum_bound(spec, max(int(math.ceil(max(rl, rr))), 1)),
        interior_margin=margin,
        x=x,
        T=T,
        tol=tol,
        core_left=core_l,
        core_right=core_r,
    )


def interior_column_mask(pg: PreGramianWindow) -> np.ndarray:
    """Columns whose coefficients the retained samples actually determine.

    Three drops: `interior_margin` columns trimmed from each side (truncation
    edge modes); columns whose bulk sample coupling [k - core_left, k +
    core_right] sticks out of the row window (their strong rows were cut
    off, faking near-null directions for skewed windows); and columns with
    every entry below 10*tol (pure padding)."""
    n = pg.col_indices.size
    mask = np.zeros(n, dtype=bool)
    m = pg.interior_margin
    if 2 * m < n:
        mask[m : n - m] = True
    lam_lo, lam_hi = pg.row_points[0], pg.row_points[-1]
    k = pg.col_indices
    core = (k - pg.core_left - 1.0 >= lam_lo) & (k + pg.core_right <= lam_hi)
    if (mask & core).any():
        mask &= core
    alive = np.abs(pg.values).max(axis=0) >= 10.0 * pg.tol
    if (mask & alive).any():
        mask &= alive
    return mask


def sigma_extremes(pg: PreGramianWindow) -> tuple[float, float]:
    """(sigma_min over interior columns, sigma_max over all columns).

    An interior block wider than it is tall has a coefficient null space, so
    its sigma_min is exactly zero."""
    if np.abs(pg.values).max() < pg.tol:
        raise DegenerateMatrix("all matrix entries below tolerance")
    mask = interior_column_mask(pg)
    if not mask.any():
        raise DegenerateMatrix("margin leaves no interior columns")
    s_full = np.linalg.svd(pg.values, compute_uv=False)
    M = pg.values[:, mask]
    if M.shape[1] > M.shape[0]:
        smin = 0.0
    else:
        smin = float(np.linalg.svd(M, compute_uv=False)[-1])
    return smin, float(s_full[0])


def schur_upper(spec: generator.GeneratorSpec, ps: PointSet) -> float:
    """x-independent certified upper bound on sigma_max for any truncation:
    relative separation times the amalgam norm bound."""
    from .pointset import rel_separation

    return float(rel_separation(ps)) * generator.wiener_norm_bound(spec)


def sampling_bounds(
    spec: generator.GeneratorSpec,
    ps: PointSet,
    T: float = 40.0,
    margin: int | None = None,
    x: float = 0.0,
    tol: float = DEFAULT_TOL,
    floor_rel: float = 1e-8,
) -> SamplingBounds:
    """A_est = sigma_min^2, B_est = sigma_max^2 of the truncated matrix."""
    pg = build(spec, ps, x=x, T=T, margin=margin, tol=tol)
    smin, smax = sigma_extremes(pg)
    floor = floor_rel * smax * smax
    verdict = "sampling" if smin * smin > floor else "below_floor"
    return SamplingBounds(
        A_est=smin * smin,
        B_est=smax * smax,
        T=T,
        margin=pg.interior_margin,
        floor=floor,
        verdict=verdict,
    )
