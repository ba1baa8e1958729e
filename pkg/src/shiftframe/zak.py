"""Zak transform: evaluation, grids, quasi-periodicity, zero location.

Zg(x, xi) = sum_k g(x + k) e^{2 pi i k xi}, truncated where the window's
certified decay says the tail is below tolerance. Quasi-periodicity
Zg(x+1, xi) = e^{-2 pi i xi} Zg(x, xi) pins the convention.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import generator
from .errors import NonConvergent

_GOLD = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass
class ZakGrid:
    x_nodes: np.ndarray
    xi_nodes: np.ndarray
    values: np.ndarray  # shape (len(x_nodes), len(xi_nodes))
    trunc_tol: float


def _k_range(spec, x_min, x_max, tol):
    rl, rr = generator.side_radii(spec, tol)
    k_lo = int(math.floor(-x_max - rl))
    k_hi = int(math.ceil(-x_min + rr))
    return np.arange(k_lo, k_hi + 1)


def zak_eval(spec, x, xi, tol=1e-10):
    """Zak transform at a single (x, xi)."""
    ks = _k_range(spec, x, x, tol)
    gv = generator.evaluate_complex(spec, x + ks.astype(np.float64), tol)
    ph = np.exp(2j * math.pi * ks * xi)
    out = complex(np.dot(gv, ph))
    if not np.isfinite(out):
        raise NonConvergent("Zak sum did not evaluate to a finite value")
    return out


def zak_grid(spec, n: int, trunc_tol=1e-12) -> ZakGrid:
    """Zak values on the n x n grid {i/n} x {j/n} over [0,1)^2."""
    x_nodes = np.arange(n) / n
    xi_nodes = np.arange(n) / n
    ks = _k_range(spec, 0.0, 1.0, trunc_tol)
    G = np.empty((n, ks.size), dtype=np.complex128)
    for i, x in enumerate(x_nodes):
        G[i] = generator.evaluate_complex(spec, x + ks.astype(np.float64), trunc_tol)
    E = np.exp(2j * math.pi * np.outer(ks, xi_nodes))
    return ZakGrid(x_nodes=x_nodes, xi_nodes=xi_nodes, values=G @ E, trunc_tol=trunc_tol)


def quasi_periodicity_residual(spec, n: int = 64, trunc_tol=1e-12) -> float:
    """max |Zg(x+1, xi) - e^{-2 pi i xi} Zg(x, xi)| over the n x n grid."""
    grid = zak_grid(spec, n, trunc_tol)
    worst = 0.0
    for i, x in enumerate(grid.x_nodes):
        shifted = np.array([zak_eval(spec, x + 1.0, xi, trunc_tol) for xi in grid.xi_nodes])
        ref = np.exp(-2j * math.pi * grid.xi_nodes) * grid.values[i]
        worst = max(worst, float(np.max(np.abs(shifted - ref))))
    return worst


def _golden_min(f, lo, hi, iters=60):
    a, b = lo, hi
    c = b - _GOLD * (b - a)
    d = a + _GOLD * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _GOLD * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLD * (b - a)
            fd = f(d)
    return (a + b) / 2.0


def zak_zero_search(spec, resolution: int = 64, refine_tol: float = 1e-8, tol=1e-12):
    """Locate zeros of |Zg| on [0,1)^2.

    Grid scan for local minima of |Z|^2, then coordinate descent (golden
    section per axis); returns (x, xi, |Z|) triples with |Z| < refine_tol,
    deduplicated.
    """
    if resolution < 32:
        raise ValueError("resolution must be at least 32")
    grid = zak_grid(spec, resolution, tol)
    mag = np.abs(grid.values) ** 2
    # local minima on the torus
    seeds = []
    for i in range(resolution):
        for j in range(resolution):
            v = mag[i, j]
            neigh = (
                mag[(i - 1) % resolution, j],
                mag[(i + 1) % resolution, j],
                mag[i, (j - 1) % resolution],
                mag[i, (j + 1) % resolution],
            )
            if all(v <= w for w in neigh):
                seeds.append((i, j))
    f = lambda x, xi: abs(zak_eval(spec, x, xi, tol)) ** 2
    h = 1.5 / resolution
    found = []
    for i, j in seeds:
        x, xi = grid.x_nodes[i], grid.xi_nodes[j]
        for _ in range(6):
            x = _golden_min(lambda t: f(t, xi), x - h, x + h)
            xi = _golden_min(lambda t: f(x, t), xi - h, xi + h)
        val = math.sqrt(f(x, xi))
        if val < refine_tol:
            found.append((x % 1.0, xi % 1.0, val))
    # dedupe on the torus
    out = []
    for x, xi, v in sorted(found, key=lambda t: t[2]):
        dup = any(
            min(abs(x - a), 1 - abs(x - a)) < 1e-4
            and min(abs(xi - b), 1 - abs(xi - b)) < 1e-4
            for a, b, _ in out
        )
        if not dup:
            out.append((x, xi, v))
    return out


def modulated_zak(base_spec, c_seq, d_seq, x, xi, tol=1e-10):
    """Factored Zak of the modulated window: chat(xi) dhat(x) Zg(x, xi),
    with chat(xi) = sum_k c_k e^{2 pi i k xi} and dhat as in the window."""
    if not isinstance(c_seq, generator.Seq):
        c_seq = generator.Seq(*c_seq)
    if not isinstance(d_seq, generator.Seq):
        d_seq = generator.Seq(*d_seq)
    ch = sum(
        ck * np.exp(2j * math.pi * k * xi)
        for k, ck in zip(c_seq.indices, c_seq.values)
    )
    dh = sum(
        dl * np.exp(2j * math.pi * l * x)
        for l, dl in zip(d_seq.indices, d_seq.values)
    )
    return complex(ch * dh * zak_eval(base_spec, x, xi, tol))
