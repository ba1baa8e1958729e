"""Coefficient recovery from samples and interpolation in shift spans.

Both paths assemble the truncated coefficient-to-sample matrix. Recovery
solves the least-squares problem on the interior columns (edge columns are
truncation artifacts, reported as zero); interpolation finds the min-norm
coefficient sequence attaining given values, or declares it infeasible.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import generator, pregramian
from .errors import DegenerateMatrix, IllConditioned, Infeasible, NonConvergent
from .pointset import PointSet

DENSE_CUTOFF = 500


@dataclass
class CoeffSeq:
    offset: int
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)

    @property
    def l2(self) -> float:
        return float(np.linalg.norm(self.values))

    @property
    def indices(self):
        return np.arange(self.offset, self.offset + self.values.size)


@dataclass
class ReconstructionResult:
    coeffs: CoeffSeq
    residual_l2: float
    condition_estimate: float


def synthesize(spec: generator.GeneratorSpec, coeffs: CoeffSeq, x, tol=1e-12):
    """f(x) = sum_k c_k g(x - k) for the finitely supported sequence."""
    x = np.asarray(x, dtype=np.float64)
    scalar = x.ndim == 0
    xv = np.atleast_1d(x)
    ks = coeffs.indices.astype(np.float64)
    G = generator.evaluate(spec, xv[:, None] - ks[None, :], tol)
    out = G @ coeffs.values
    return float(out[0]) if scalar else out


def _cg_normal(M, b, rel_tol, maxiter):
    """Conjugate gradient on the normal equations M^T M c = M^T b."""
    A = M.T @ M
    rhs = M.T @ b
    x = np.zeros_like(rhs)
    r = rhs.copy()
    p = r.copy()
    rs = float(r @ r)
    ref = math.sqrt(rs)
    if ref == 0.0:
        return x
    for _ in range(maxiter):
        Ap = A @ p
        alpha = rs / float(p @ Ap)
        x += alpha * p
        r -= alpha * Ap
        rs_new = float(r @ r)
        if math.sqrt(rs_new) <= rel_tol * ref:
            return x
        p = r + (rs_new / rs) * p
        rs = rs_new
    raise NonConvergent(f"normal-equation CG did not reach {rel_tol} in {maxiter} steps")


def recover(
    spec: generator.GeneratorSpec,
    ps: PointSet,
    samples,
    T: float = 40.0,
    margin: int | None = None,
    tol: float = 1e-12,
    floor_rel: float = 1e-8,
    rel_tol: float = 1e-12,
) -> ReconstructionResult:
    """Least-squares coefficients from samples on the points inside [-T, T]."""
    samples = np.asarray(samples, dtype=np.float64).ravel()
    pg = pregramian.build(spec, ps, x=0.0, T=T, margin=margin, tol=tol)
    if samples.size != pg.row_points.size:
        raise ValueError(
            f"{samples.size} samples for {pg.row_points.size} points in the window"
        )
    smin, smax = pregramian.sigma_extremes(pg)
    if smin * smin <= floor_rel * smax * smax:
        raise IllConditioned(
            f"sigma_min^2 {smin * smin:.3e} below floor {floor_rel * smax * smax:.3e}"
        )
    mask = pregramian.interior_column_mask(pg)
    M = pg.values[:, mask]
    if M.shape[1] < DENSE_CUTOFF:
        c, *_ = np.linalg.lstsq(M, samples, rcond=None)
    else:
        c = _cg_normal(M, samples, rel_tol, maxiter=20 * M.shape[1])
    residual = float(np.linalg.norm(M @ c - samples))
    full = np.zeros(pg.col_indices.size)
    full[mask] = c
    return ReconstructionResult(
        coeffs=CoeffSeq(offset=int(pg.col_indices[0]), values=full),
        residual_l2=residual,
        condition_estimate=(smax / smin) ** 2 if smin > 0 else math.inf,
    )


def interpolate(
    spec: generator.GeneratorSpec,
    ps: PointSet,
    values,
    T: float = 40.0,
    margin: int | None = None,
    tol: float = 1e-12,
    residual_tol: float = 1e-10,
) -> ReconstructionResult:
    """Min-norm coefficients with f(lambda) = values on the window's points.

    Infeasible when no sequence attains the values within residual_tol.
    """
    values = np.asarray(values, dtype=np.float64).ravel()
    pg = pregramian.build(spec, ps, x=0.0, T=T, margin=margin, tol=tol)
    if values.size != pg.row_points.size:
        raise ValueError(
            f"{values.size} values for {pg.row_points.size} points in the window"
        )
    c, *_ = np.linalg.lstsq(pg.values, values, rcond=None)
    residual = float(np.linalg.norm(pg.values @ c - values))
    if residual > residual_tol:
        raise Infeasible(
            f"best residual {residual:.3e} above tolerance {residual_tol:.3e}"
        )
    try:
        smin, smax = pregramian.sigma_extremes(pg)
        cond = (smax / smin) ** 2 if smin > 0 else math.inf
    except DegenerateMatrix:
        cond = math.inf
    return ReconstructionResult(
        coeffs=CoeffSeq(offset=int(pg.col_indices[0]), values=c),
        residual_l2=residual,
        condition_estimate=cond,
    )
