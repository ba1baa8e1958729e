"""Numeric kernels for window evaluation, in two interchangeable backends.

The numpy path leans on scipy.special.erfcx; the numba path carries its own
scaled-complementary-error-function so the jitted loops stay self-contained.
Both are exposed through module-level names bound once at import according to
`backend.USE_NUMBA`; `_IMPLS` keeps both reachable for parity tests.
"""

import math

import numpy as np
from scipy.special import erfcx as _sp_erfcx

from .backend import HAS_NUMBA, USE_NUMBA

_SQRT_PI = math.sqrt(math.pi)
_PI2 = math.pi * math.pi


# ---------------------------------------------------------------- numpy path

def _gauss_np(x, c):
    """sqrt(pi/c) * exp(-pi^2 x^2 / c); Fourier pair of exp(-c xi^2)."""
    x = np.asarray(x, dtype=np.float64)
    return math.sqrt(math.pi / c) * np.exp(-_PI2 * x * x / c)


def _conv_np(x, delta, c):
    # exponential smoothing of the Gaussian, split by the sign of
    # u = sqrt(c)/(2 pi |delta|) - sign(delta) pi x / sqrt(c) so that erfcx
    # only ever sees nonnegative arguments (both branches stay bounded).
    s = 1.0 if delta > 0 else -1.0
    ad = abs(delta)
    u = math.sqrt(c) / (2.0 * math.pi * ad) - s * math.pi * x / math.sqrt(c)
    gx = np.exp(-_PI2 * x * x / c)
    out = np.empty_like(x)
    pos = u >= 0.0
    out[pos] = gx[pos] * _sp_erfcx(u[pos])
    if not pos.all():
        xm = x[~pos]
        a = c / (4.0 * _PI2 * delta * delta) - xm / delta
        out[~pos] = 2.0 * np.exp(a) - gx[~pos] * _sp_erfcx(-u[~pos])
    return out / (2.0 * ad)


def _tp_np(x, deltas, weights, c):
    x = np.asarray(x, dtype=np.float64)
    out = np.zeros_like(x)
    for j in range(deltas.size):
        out += weights[j] * _conv_np(x, deltas[j], c)
    return out


def _onesided_np(x, delta):
    x = np.asarray(x, dtype=np.float64)
    t = x / delta
    out = np.zeros_like(x)
    sup = t >= 0.0
    out[sup] = np.exp(-t[sup]) / abs(delta)
    return out


def _sech_np(x, nu):
    x = np.asarray(x, dtype=np.float64)
    t = np.abs(nu * x)
    e = np.exp(-t)
    return 2.0 * e / (1.0 + e * e)


_IMPLS = {
    "numpy": {
        "gauss": _gauss_np,
        "tp": _tp_np,
        "onesided": _onesided_np,
        "sech": _sech_np,
    }
}


# ---------------------------------------------------------------- numba path

if HAS_NUMBA:
    import numba as nb

    @nb.njit(cache=True)
    def _erfcx_nb(u):
        # u >= 0 only. Below 25 the direct product keeps full relative
        # precision (erfc(25) ~ 1e-273 is still a normal double); beyond,
        # the asymptotic series converges to <1e-16 in 7 terms.
        if u < 25.0:
            return math.exp(u * u) * math.erfc(u)
        inv2 = 1.0 / (2.0 * u * u)
        term = 1.0
        acc = 1.0
        for k in range(1, 7):
            term *= -(2.0 * k - 1.0) * inv2
            acc += term
        return acc / (u * _SQRT_PI)

    @nb.njit(cache=True)
    def _gauss_nb(x, c):
        out = np.empty(x.size, dtype=np.float64)
        amp = math.sqrt(math.pi / c)
        for i in range(x.size):
            out[i] = amp * math.exp(-_PI2 * x[i] * x[i] / c)
        return out

    @nb.njit(cache=True)
    def _tp_nb(x, deltas, weights, c):
        out = np.zeros(x.size, dtype=np.float64)
        sc = math.sqrt(c)
        for j in range(deltas.size):
            d = deltas[j]
            ad = abs(d)
            s = 1.0 if d > 0 else -1.0
            u0 = sc / (2.0 * math.pi * ad)
            a0 = c / (4.0 * _PI2 * d * d)
            w = weights[j] / (2.0 * ad)
            for i in range(x.size):
                xi = x[i]
                gx = math.exp(-_PI2 * xi * xi / c)
                u = u0 - s * math.pi * xi / sc
                if u >= 0.0:
                    v = gx * _erfcx_nb(u)
                else:
                    v = 2.0 * math.exp(a0 - xi / d) - gx * _erfcx_nb(-u)
                out[i] += w * v
        return out

    @nb.njit(cache=True)
    def _onesided_nb(x, delta):
        out = np.zeros(x.size, dtype=np.float64)
        inv = 1.0 / abs(delta)
        for i in range(x.size):
            t = x[i] / delta
            if t >= 0.0:
                out[i] = math.exp(-t) * inv
        return out

    @nb.njit(cache=True)
    def _sech_nb(x, nu):
        out = np.empty(x.size, dtype=np.float64)
        for i in range(x.size):
            e = math.exp(-abs(nu * x[i]))
            out[i] = 2.0 * e / (1.0 + e * e)
        return out

    def _wrap(kernel):
        # jitted kernels want contiguous 1-d float64; keep the numpy-path
        # calling convention (any shape, scalar included).
        def run(x, *args):
            arr = np.ascontiguousarray(x, dtype=np.float64)
            return kernel(arr.ravel(), *args).reshape(arr.shape)

        return run

    _IMPLS["numba"] = {
        "gauss": _wrap(lambda x, c: _gauss_nb(x, c)),
        "tp": _wrap(lambda x, d, w, c: _tp_nb(x, d, w, c)),
        "onesided": _wrap(lambda x, d: _onesided_nb(x, d)),
        "sech": _wrap(lambda x, n: _sech_nb(x, n)),
    }


_active = _IMPLS["numba" if USE_NUMBA else "numpy"]
gauss_eval = _active["gauss"]
tp_eval = _active["tp"]
onesided_eval = _active["onesided"]
sech_eval = _active["sech"]
