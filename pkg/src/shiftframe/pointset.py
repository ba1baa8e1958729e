"""Sampling point sets: construction, separation, and Beurling densities.

Points are kept sorted and strictly increasing; duplicates are rejected at
construction (two samples at one location add no information and would make
separation zero). Counting windows are closed on both ends.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DuplicatePoints,
    JitterTooLarge,
    TooFewPoints,
    WindowTooLarge,
)

_DUP_TOL = 1e-12


@dataclass(frozen=True)
class PointSet:
    points: np.ndarray
    provenance: str = "explicit"
    alpha: float | None = None
    jitter: float | None = None
    seed: int | None = None

    def __post_init__(self):
        pts = np.sort(np.asarray(self.points, dtype=np.float64).ravel())
        if pts.size == 0:
            raise TooFewPoints("point set is empty")
        if pts.size > 1 and np.min(np.diff(pts)) <= _DUP_TOL:
            raise DuplicatePoints("coincident points in input")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return int(self.points.size)

    def translate(self, s: float) -> "PointSet":
        return PointSet(self.points + s, provenance=self.provenance, alpha=self.alpha)

    def scale(self, beta: float) -> "PointSet":
        alpha = self.alpha * beta if (self.alpha is not None and beta > 0) else None
        prov = self.provenance if alpha is not None else "explicit"
        return PointSet(self.points * beta, provenance=prov, alpha=alpha)

    def restrict(self, lo: float, hi: float) -> np.ndarray:
        i = np.searchsorted(self.points, lo, side="left")
        j = np.searchsorted(self.points, hi, side="right")
        return self.points[i:j]


@dataclass(frozen=True)
class DensityEstimate:
    lower: float
    upper: float
    window_radius: float
    certified: bool


def from_points(points) -> PointSet:
    return PointSet(points, provenance="explicit")


def lattice(alpha: float, span: int) -> PointSet:
    """alpha * {-span, ..., span}."""
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    pts = alpha * np.arange(-span, span + 1, dtype=np.float64)
    return PointSet(pts, provenance="lattice", alpha=alpha)


def make_jittered(alpha: float, jitter: float, seed: int, span: int) -> PointSet:
    """{k alpha + eta_k : |k| <= span} with eta_k uniform in [-jitter, jitter]."""
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    if jitter < 0 or jitter >= alpha / 2:
        raise JitterTooLarge(
            f"jitter {jitter} must lie in [0, alpha/2) = [0, {alpha / 2})"
        )
    rng = np.random.default_rng(seed)
    k = np.arange(-span, span + 1, dtype=np.float64)
    pts = alpha * k + rng.uniform(-jitter, jitter, size=k.size)
    return PointSet(pts, provenance="jittered_lattice", alpha=alpha, jitter=jitter, seed=seed)


def paired_integers(span: int = 20) -> PointSet:
    """Integers plus exponentially close companions {k, k + 2^-|k|}.

    Relative separation stays finite while the ordinary separation collapses;
    the companion of 0 collides with the point 1 and is dropped.
    """
    k = np.arange(-span, span + 1)
    raw = np.concatenate([k.astype(np.float64), k + 2.0 ** (-np.abs(k))])
    raw = np.sort(raw)
    keep = np.concatenate([[True], np.diff(raw) > _DUP_TOL])
    return PointSet(raw[keep], provenance="paired_integers")


def separation(ps: PointSet) -> float:
    """Smallest gap between consecutive points."""
    if len(ps) < 2:
        raise TooFewPoints("separation needs at least two points")
    return float(np.min(np.diff(ps.points)))


def rel_separation(ps: PointSet) -> int:
    """Largest number of points in a closed unit window anchored at a point."""
    if len(ps) < 1:
        raise TooFewPoints("empty point set")
    p = ps.points
    hi = np.searchsorted(p, p + 1.0, side="right")
    lo = np.arange(p.size)
    return int(np.max(hi - lo))


def beurling(ps: PointSet, R: float = 10.0) -> DensityEstimate:
    """Window-count estimates of lower/upper Beurling density at radius R.

    Counts points in closed windows [x-R, x+R] for anchors x at least R from
    either edge of the data; counts are exact (window-edge events are
    enumerated), normalized by 2R. Lattices get their exact density.
    """
    if ps.provenance == "lattice" and ps.alpha:
        return DensityEstimate(1.0 / ps.alpha, 1.0 / ps.alpha, R, certified=True)
    p = ps.points
    if not R > 0:
        raise ValueError("R must be positive")
    a, b = p[0] + R, p[-1] - R
    if a > b:
        raise WindowTooLarge(f"R={R} leaves no interior anchors for this set")
    count = lambda x: (
        np.searchsorted(p, x + R, side="right") - np.searchsorted(p, x - R, side="left")
    )
    # counts change only when a window edge crosses a point
    events = np.concatenate([p - R, p + R])
    events = np.sort(events[(events >= a) & (events <= b)])
    anchors = [a, b]
    anchors.extend(0.5 * (events[:-1] + events[1:]))
    anchors.extend(events)
    counts = np.array([count(x) for x in anchors])
    return DensityEstimate(
        lower=float(counts.min()) / (2.0 * R),
        upper=float(counts.max()) / (2.0 * R),
        window_radius=R,
        certified=False,
    )


def save_points(path, ps: PointSet):
    with open(path, "w") as fh:
        for x in ps.points:
            fh.write(f"{x:.17g}\n")


def load_points(path) -> PointSet:
    vals = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                vals.append(float(line))
    return from_points(vals)
