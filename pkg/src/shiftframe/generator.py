"""Window specifications and certified evaluation.

A window is described by a small frozen spec and evaluated through closed
forms wherever possible:

* ``gaussian_type`` — Fourier transform prod_j (1+2 pi i delta_j xi)^{-1}
  exp(-c xi^2).  In time this is the Gaussian smoothed by a chain of
  one-sided exponentials; with distinct deltas a partial-fraction expansion
  reduces it to scaled complementary error functions.  Repeated (or nearly
  repeated) deltas fall back to certified quadrature.
* ``one_sided_exp`` — (1/|delta|) exp(-x/delta) on its support half-line.
* ``sech`` — sech(nu x).
* ``modulated`` — gamma(x) = dhat(x) * sum_k c_k g(x-k) for a base window g,
  with dhat(x) = sum_l d_l exp(2 pi i l x); finitely supported sequences only.

Decay certificates (per-side radii and tail sums) come from the same closed
forms: every component is log-concave and unimodal, so one verified decrease
pins the whole tail under a geometric bound.
"""

import json
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.integrate import quad
from scipy.special import erfcx as _erfcx

from . import _kernels
from .errors import IndexOutOfRange, NonConvergent, UnsupportedKind

KINDS = ("gaussian_type", "one_sided_exp", "sech", "modulated")

_PI2 = math.pi * math.pi


@dataclass(frozen=True)
class Seq:
    """Finitely supported coefficient sequence: values[i] sits at offset+i."""

    offset: int
    values: tuple

    def __post_init__(self):
        if len(self.values) == 0:
            raise ValueError("empty coefficient sequence")
        object.__setattr__(self, "values", tuple(complex(v) for v in self.values))

    @property
    def indices(self):
        return range(self.offset, self.offset + len(self.values))

    def l1(self) -> float:
        return float(sum(abs(v) for v in self.values))


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    deltas: tuple = ()
    c: float = 0.0
    delta: float = 0.0
    nu: float = 0.0
    base: "GeneratorSpec | None" = None
    c_seq: Seq | None = None
    d_seq: Seq | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown window kind {self.kind!r}")
        if self.kind == "gaussian_type":
            object.__setattr__(self, "deltas", tuple(float(d) for d in self.deltas))
            if any(d == 0.0 for d in self.deltas):
                raise ValueError("deltas must be nonzero")
            if not self.c > 0.0:
                raise ValueError("c must be positive")
        elif self.kind == "one_sided_exp":
            if self.delta == 0.0:
                raise ValueError("delta must be nonzero")
        elif self.kind == "sech":
            if not self.nu > 0.0:
                raise ValueError("nu must be positive")
        else:
            if self.base is None or self.c_seq is None or self.d_seq is None:
                raise ValueError("modulated windows need base, c_seq and d_seq")
            if self.base.kind == "modulated":
                raise ValueError("modulated windows cannot be nested")


@dataclass(frozen=True)
class AccuracyCert:
    """Evaluation accuracy promise: |error| <= abs_tol once contributions
    beyond truncation_radius are dropped."""

    abs_tol: float
    truncation_radius: float


def gaussian(deltas=(), c=math.pi) -> GeneratorSpec:
    return GeneratorSpec(kind="gaussian_type", deltas=tuple(deltas), c=c)


def one_sided_exp(delta=1.0) -> GeneratorSpec:
    return GeneratorSpec(kind="one_sided_exp", delta=delta)


def sech(nu=1.0) -> GeneratorSpec:
    return GeneratorSpec(kind="sech", nu=nu)


def modulated(base, c_seq, d_seq) -> GeneratorSpec:
    if not isinstance(c_seq, Seq):
        c_seq = Seq(*c_seq)
    if not isinstance(d_seq, Seq):
        d_seq = Seq(*d_seq)
    return GeneratorSpec(kind="modulated", base=base, c_seq=c_seq, d_seq=d_seq)


# ------------------------------------------------------------ serialization

def _seq_to_json(s: Seq):
    vals = []
    for v in s.values:
        vals.append(v.real if v.imag == 0.0 else [v.real, v.imag])
    return {"offset": s.offset, "values": vals}


def _seq_from_json(obj) -> Seq:
    vals = [complex(v[0], v[1]) if isinstance(v, list) else complex(v) for v in obj["values"]]
    return Seq(offset=int(obj["offset"]), values=tuple(vals))


def to_json(spec: GeneratorSpec) -> str:
    return json.dumps(_to_obj(spec), sort_keys=True)


def _to_obj(spec: GeneratorSpec):
    if spec.kind == "gaussian_type":
        return {"kind": spec.kind, "deltas": list(spec.deltas), "c": spec.c}
    if spec.kind == "one_sided_exp":
        return {"kind": spec.kind, "delta": spec.delta}
    if spec.kind == "sech":
        return {"kind": spec.kind, "nu": spec.nu}
    return {
        "kind": spec.kind,
        "base": _to_obj(spec.base),
        "c_seq": _seq_to_json(spec.c_seq),
        "d_seq": _seq_to_json(spec.d_seq),
    }


def from_json(text) -> GeneratorSpec:
    obj = json.loads(text) if isinstance(text, str) else text
    kind = obj["kind"]
    if kind == "gaussian_type":
        return gaussian(deltas=obj.get("deltas", ()), c=obj["c"])
    if kind == "one_sided_exp":
        return one_sided_exp(delta=obj["delta"])
    if kind == "sech":
        return sech(nu=obj["nu"])
    if kind == "modulated":
        return modulated(
            from_json(obj["base"]),
            _seq_from_json(obj["c_seq"]),
            _seq_from_json(obj["d_seq"]),
        )
    raise ValueError(f"unknown window kind {kind!r}")


# ------------------------------------------------------------- Fourier side

def fourier_eval(spec: GeneratorSpec, xi):
    """Fourier transform at xi (convention: integral of g(x) e^{-2 pi i x xi})."""
    xi = np.asarray(xi, dtype=np.float64)
    if spec.kind == "gaussian_type":
        out = np.exp(-spec.c * xi * xi).astype(np.complex128)
        for d in spec.deltas:
            out /= 1.0 + 2j * math.pi * d * xi
        return out if out.shape else complex(out)
    if spec.kind == "one_sided_exp":
        out = 1.0 / (1.0 + 2j * math.pi * spec.delta * xi)
        return out if np.shape(out) else complex(out)
    if spec.kind == "sech":
        t = np.abs(_PI2 * xi / spec.nu)
        e = np.exp(-t)
        out = (math.pi / spec.nu) * 2.0 * e / (1.0 + e * e) + 0j
        return out if out.shape else complex(out)
    # modulated: gamma-hat(xi) = sum_l d_l chat(xi - l) ghat(xi - l) with
    # chat(xi) = sum_k c_k e^{-2 pi i k xi}
    out = np.zeros(np.shape(xi), dtype=np.complex128)
    for l, dl in zip(spec.d_seq.indices, spec.d_seq.values):
        sh = xi - l
        ch = np.zeros(np.shape(xi), dtype=np.complex128)
        for k, ck in zip(spec.c_seq.indices, spec.c_seq.values):
            ch += ck * np.exp(-2j * math.pi * k * sh)
        out += dl * ch * fourier_eval(spec.base, sh)
    return out if out.shape else complex(out)


# ---------------------------------------------------------------- time side

def _partial_fractions(deltas):
    """Weights A_j = prod_{l != j} (1 - delta_l/delta_j)^{-1} for distinct deltas."""
    d = np.asarray(deltas, dtype=np.float64)
    w = np.empty_like(d)
    for j in range(d.size):
        p = 1.0
        for l in range(d.size):
            if l != j:
                p *= 1.0 - d[l] / d[j]
        w[j] = 1.0 / p
    return w


def _delta_groups(deltas, rel=1e-8):
    """Group indices of (numerically) coincident deltas."""
    order = sorted(range(len(deltas)), key=lambda i: deltas[i])
    groups = []
    for i in order:
        if groups and abs(deltas[i] - deltas[groups[-1][0]]) <= rel * max(
            1.0, abs(deltas[i])
        ):
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def _confluent_terms(deltas, rel=1e-8):
    """Partial fractions with repeated poles.

    Returns [(B, r, delta)] so that prod_j (1 + delta_j s)^{-1} equals
    sum B * (1 + delta s)^{-r}.  Taylor-expands the complementary factors
    around each pole; series arithmetic only, no symbolic algebra.
    """
    groups = _delta_groups(deltas, rel)
    terms = []
    for grp in groups:
        dj = float(np.mean([deltas[i] for i in grp]))
        m = len(grp)
        # Taylor coefficients of prod over other groups of (a + delta_l u)^{-m_l}
        # in u = s + 1/dj, where a = 1 - delta_l/dj.
        series = np.zeros(m)
        series[0] = 1.0
        for other in groups:
            if other is grp:
                continue
            dl = float(np.mean([deltas[i] for i in other]))
            ml = len(other)
            a = 1.0 - dl / dj
            # (a + dl*u)^{-ml} = a^{-ml} * sum_p binom(-ml, p) (dl/a)^p u^p
            fac = np.zeros(m)
            coef = a ** (-ml)
            for p in range(m):
                fac[p] = coef
                coef *= -(ml + p) / (p + 1) * (dl / a)
            series = np.convolve(series, fac)[:m]
        for r in range(1, m + 1):
            terms.append((series[m - r] * dj ** (r - m), r, dj))
    return terms


def _gamma_kernel_conv(x, B, r, delta, c, tol):
    """quad of B * t^{r-1} e^{-t/delta} / (delta^r (r-1)!) against the
    Gaussian factor, truncated where the Gaussian tail drops below tol/10."""
    R = math.sqrt(c * math.log(10.0 / tol)) / math.pi
    amp = math.sqrt(math.pi / c)
    norm = abs(B) / (abs(delta) ** r * math.gamma(r))
    sgn_b = 1.0 if B >= 0 else -1.0
    eps = tol / (10.0 * max(norm, 1.0))
    out = np.empty(x.size)
    err = 0.0
    for i, xi in enumerate(x.ravel()):
        lo, hi = xi - R, xi + R
        if delta > 0:
            lo = max(lo, 0.0)
        else:
            hi = min(hi, 0.0)
        if lo >= hi:
            out[i] = 0.0
            continue
        val, e = quad(
            lambda t: abs(t) ** (r - 1)
            * math.exp(-t / delta)
            * amp
            * math.exp(-_PI2 * (xi - t) ** 2 / c),
            lo,
            hi,
            epsabs=eps,
            epsrel=1e-12,
            limit=200,
        )
        out[i] = sgn_b * norm * val
        err = max(err, norm * e)
    if err > tol:
        raise NonConvergent(f"quadrature error {err:.3e} above tol {tol:.3e}")
    return out.reshape(x.shape)


def _eval_gaussian_type(spec, x, tol):
    x = np.asarray(x, dtype=np.float64)
    if len(spec.deltas) == 0:
        return _kernels.gauss_eval(x, spec.c)
    groups = _delta_groups(spec.deltas)
    if all(len(g) == 1 for g in groups):
        d = np.asarray(spec.deltas, dtype=np.float64)
        return _kernels.tp_eval(x, d, _partial_fractions(d), spec.c)
    out = np.zeros_like(x)
    for B, r, dj in _confluent_terms(spec.deltas):
        out += _gamma_kernel_conv(x, B, r, dj, spec.c, tol)
    return out


def _dhat(d_seq: Seq, x):
    out = np.zeros(np.shape(x), dtype=np.complex128)
    for l, dl in zip(d_seq.indices, d_seq.values):
        out += dl * np.exp(2j * math.pi * l * np.asarray(x))
    return out


def evaluate_complex(spec: GeneratorSpec, x, tol=1e-12):
    """Window value at x; complex for modulated windows, real-valued otherwise."""
    x = np.asarray(x, dtype=np.float64)
    scalar = x.ndim == 0
    xv = np.atleast_1d(x)
    if spec.kind == "gaussian_type":
        out = _eval_gaussian_type(spec, xv, tol).astype(np.complex128)
    elif spec.kind == "one_sided_exp":
        out = _kernels.onesided_eval(xv, spec.delta).astype(np.complex128)
    elif spec.kind == "sech":
        out = _kernels.sech_eval(xv, spec.nu).astype(np.complex128)
    else:
        acc = np.zeros_like(xv, dtype=np.complex128)
        for k, ck in zip(spec.c_seq.indices, spec.c_seq.values):
            acc += ck * evaluate_complex(spec.base, xv - k, tol)
        out = _dhat(spec.d_seq, xv) * acc
    return complex(out[0]) if scalar else out


def evaluate(spec: GeneratorSpec, x, tol=1e-12):
    """Real window value at x (scalar or array).

    Raises UnsupportedKind for a modulated window whose imaginary part is not
    negligible; use evaluate_complex for those.
    """
    out = evaluate_complex(spec, x, tol)
    re, im = np.real(out), np.imag(out)
    if np.max(np.abs(np.atleast_1d(im))) > max(tol, 1e-9 * (1.0 + np.max(np.abs(np.atleast_1d(re))))):
        raise UnsupportedKind("window is complex-valued at these points")
    return float(re) if np.ndim(out) == 0 else np.asarray(re, dtype=np.float64)


def reduce(spec: GeneratorSpec, j: int) -> GeneratorSpec:
    """Remove the j-th exponential factor (1-based, order as given)."""
    if spec.kind != "gaussian_type":
        raise UnsupportedKind(f"reduce is defined for gaussian_type, not {spec.kind}")
    if not 1 <= j <= len(spec.deltas):
        raise IndexOutOfRange(f"factor index {j} outside 1..{len(spec.deltas)}")
    rest = spec.deltas[: j - 1] + spec.deltas[j:]
    return gaussian(deltas=rest, c=spec.c)


# ------------------------------------------------- decay envelope machinery

@dataclass
class _Term:
    """One |weight| * profile(x) component; profile is log-concave unimodal."""

    weight: float
    fn: Callable[[float], float]
    support: str = "both"  # "both", "right", "left"
    cap: float = 1.0  # certified sup of the bare profile


def _conv_profile(delta, c):
    sc, s, ad = math.sqrt(c), (1.0 if delta > 0 else -1.0), abs(delta)

    def f(x):
        u = sc / (2.0 * math.pi * ad) - s * math.pi * x / sc
        if u >= 0:
            v = math.exp(-_PI2 * x * x / c) * _erfcx(u)
        else:
            v = 2.0 * math.exp(c / (4.0 * _PI2 * delta * delta) - x / delta) - math.exp(
                -_PI2 * x * x / c
            ) * _erfcx(-u)
        return v / (2.0 * ad)

    return f


def _confluent_profile(B, r, delta, c):
    w = abs(B)

    # inflate the quadrature value so domain truncation cannot make the
    # profile underestimate the true sup it certifies
    def f(x):
        return _gamma_kernel_conv(np.array([x]), 1.0, r, delta, c, 1e-12)[0] * (
            1.0 + 1e-6
        )

    return w, f


def _terms(spec: GeneratorSpec):
    if spec.kind == "gaussian_type":
        # each profile is a probability density smoothed by the Gaussian
        # factor, so sqrt(pi/c) caps every bare profile
        cap = math.sqrt(math.pi / spec.c)
        if len(spec.deltas) == 0:
            return [
                _Term(1.0, lambda x, a=cap, c=spec.c: a * math.exp(-_PI2 * x * x / c), cap=cap)
            ]
        groups = _delta_groups(spec.deltas)
        if all(len(g) == 1 for g in groups):
            d = np.asarray(spec.deltas)
            w = _partial_fractions(d)
            return [
                _Term(abs(w[j]), _conv_profile(d[j], spec.c), cap=cap)
                for j in range(d.size)
            ]
        out = []
        for B, r, dj in _confluent_terms(spec.deltas):
            w, f = _confluent_profile(B, r, dj, spec.c)
            out.append(_Term(w, f, cap=cap))
        return out
    if spec.kind == "one_sided_exp":
        ad = abs(spec.delta)
        side = "right" if spec.delta > 0 else "left"
        return [_Term(1.0 / ad, lambda x, ad=ad: math.exp(-abs(x) / ad), side)]
    if spec.kind == "sech":
        return [
            _Term(1.0, lambda x, n=spec.nu: 2.0 * math.exp(-abs(n * x)) / (1.0 + math.exp(-2 * abs(n * x))))
        ]
    # modulated: |gamma| <= ||d||_1 * sum_k |c_k| |g(x-k)|; shift base terms.
    base_terms = _terms(spec.base)
    amp = spec.d_seq.l1()
    out = []
    for k, ck in zip(spec.c_seq.indices, spec.c_seq.values):
        for t in base_terms:
            out.append(
                _Term(
                    amp * abs(ck) * t.weight,
                    lambda x, f=t.fn, k=k: f(x - k),
                    t.support,
                    t.cap,
                )
            )
    return out


def _side_value(term: _Term, r: float, side: int) -> float:
    # certified bound on sup |term| over side * x >= r, given the profile is
    # decreasing there (checked by the caller via _cert_decreasing)
    if side > 0 and term.support == "left":
        return term.weight * term.fn(r) if r <= 0 else 0.0
    if side < 0 and term.support == "right":
        return term.weight * term.fn(-r) if r <= 0 else 0.0
    return term.weight * term.fn(side * r)


def _cert_decreasing(term: _Term, r: float, side: int, h=0.5) -> bool:
    # unimodal: a decrease entering r proves the mode sits at or before r
    fa = _side_value(term, r - h, side)
    fb = _side_value(term, r, side)
    return fa >= fb


def _term_side_radius(term: _Term, side: int, tol: float, r0=1.0) -> float:
    r = r0
    while r < 512.0:
        if _cert_decreasing(term, r, side):
            v = _side_value(term, r, side)
            nxt = _side_value(term, r + 1.0, side)
            rho = min(nxt / v, 0.999) if v > 0 else 0.0
            if v / max(1.0 - rho, 1e-3) < tol:
                return r
        r += 0.5
    raise NonConvergent("decay radius search exceeded 512")


def side_radii(spec: GeneratorSpec, tol=1e-12):
    """Certified decay radii (left, right): |g(x)| < tol beyond each side."""
    terms = _terms(spec)
    per = tol / len(terms)
    rl = max(_term_side_radius(t, -1, per) for t in terms)
    rr = max(_term_side_radius(t, +1, per) for t in terms)
    return rl, rr


def accuracy_cert(spec: GeneratorSpec, tol=1e-12) -> AccuracyCert:
    """Certified radius beyond which |g| stays below tol (either side)."""
    rl, rr = side_radii(spec, tol)
    return AccuracyCert(abs_tol=tol, truncation_radius=max(rl, rr))


def decay_radius(spec: GeneratorSpec, tol=1e-12) -> int:
    return int(math.ceil(accuracy_cert(spec, tol).truncation_radius))


def tail_sum_bound(spec: GeneratorSpec, K: int) -> float:
    """Certified bound on sum over |j| >= K of sup_{[j, j+1]} |g| (both tails).

    Each term is unimodal: past its certified decrease point the interval
    sups telescope into a geometric sum; any stretch before that point is
    capped by the term's certified profile sup.
    """
    terms = _terms(spec)
    total = 0.0
    for side in (+1, -1):
        for t in terms:
            r = float(K)
            while not _cert_decreasing(t, r, side):
                r += 0.5
                if r > K + 64:
                    raise NonConvergent("tail bound: no certified decrease")
            if r > K:
                total += (r - K) * t.weight * t.cap
            acc = 0.0
            for j in range(8):
                acc += _side_value(t, r + j, side)
            v = _side_value(t, r + 8, side)
            nxt = _side_value(t, r + 9, side)
            rho = min(nxt / v, 0.999) if v > 0 else 0.0
            total += acc + v / (1.0 - rho)
    return total


# --------------------------------------------------------------- sup bounds

def global_max_bound(spec: GeneratorSpec) -> float:
    """Certified upper bound on sup |g|."""
    if spec.kind == "gaussian_type":
        # |g| <= integral of |ghat| <= integral of e^{-c xi^2}
        return math.sqrt(math.pi / spec.c)
    if spec.kind == "one_sided_exp":
        return 1.0 / abs(spec.delta)
    if spec.kind == "sech":
        return 1.0
    return spec.d_seq.l1() * spec.c_seq.l1() * global_max_bound(spec.base)


def derivative_bound(spec: GeneratorSpec) -> float:
    """Certified upper bound on sup |g'| (infinite for one_sided_exp jumps)."""
    if spec.kind == "gaussian_type":
        # |g'| <= 2 pi * integral |xi| e^{-c xi^2} = 2 pi / c... integral is 1/c
        return 2.0 * math.pi / spec.c
    if spec.kind == "one_sided_exp":
        return math.inf
    if spec.kind == "sech":
        return spec.nu / 2.0
    d1 = 2.0 * math.pi * sum(
        abs(l * v) for l, v in zip(spec.d_seq.indices, spec.d_seq.values)
    )
    return spec.c_seq.l1() * (
        d1 * global_max_bound(spec.base) + spec.d_seq.l1() * derivative_bound(spec.base)
    )


def wiener_norm_bound(spec: GeneratorSpec, refine: int = 0) -> float:
    """Certified upper bound on sum_k sup_{[k,k+1]} |g|.

    Grid maxima plus a derivative-based remainder per interval, plus the
    certified tail beyond the decay radius.  Increasing `refine` halves the
    grid step; the result is a running min, so it is monotone in `refine`.
    """
    if spec.kind == "one_sided_exp":
        ad = abs(spec.delta)
        return (1.0 + 1.0 / (1.0 - math.exp(-1.0 / ad))) / ad
    if spec.kind == "modulated":
        # translation invariance of the amalgam norm over integer shifts
        return spec.c_seq.l1() * spec.d_seq.l1() * wiener_norm_bound(spec.base, refine)
    K = decay_radius(spec, 1e-12)
    L = derivative_bound(spec)
    best = math.inf
    for lev in range(refine + 1):
        step = 1e-3 / (1 << lev)
        n = int(math.ceil(1.0 / step))
        bound = 0.0
        for k in range(-K, K):
            xs = k + np.arange(n + 1) / n
            vals = np.abs(evaluate(spec, xs))
            bound += float(vals.max()) + L / (2.0 * n)
        bound += tail_sum_bound(spec, K)
        best = min(best, bound)
    return best
