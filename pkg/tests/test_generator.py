"""Window construction, evaluation, and certified bounds."""

import json
import math

import numpy as np
import pytest

from shiftframe import (
    IndexOutOfRange,
    Seq,
    UnsupportedKind,
    accuracy_cert,
    decay_radius,
    derivative_bound,
    evaluate,
    evaluate_complex,
    fourier_eval,
    from_json,
    gaussian,
    global_max_bound,
    modulated,
    one_sided_exp,
    reduce,
    sech,
    tail_sum_bound,
    to_json,
    wiener_norm_bound,
)

from oracles import quad_fourier, quad_time_domain

PI = math.pi

# Frozen outputs of tests/oracles.py (independent quadrature).
TP_03_AT_07 = 5.2003666582723473e-01
TP_03_AT_M12 = 3.1711183142415838e-03
TP_M04_AT_05 = 1.7509881210561215e-01
TP_03_M02_AT_08 = 2.7772415775090076e-01
TP_CONFLUENT_AT_06 = 7.3379861473787855e-01
GAUSS_AT_04 = 6.0492256276427103e-01


def test_fourier_trivial_values():
    assert fourier_eval(gaussian((), 1.0), 0.0) == 1.0 + 0.0j
    assert fourier_eval(gaussian((0.4,), 2.0), 0.0) == pytest.approx(1.0, abs=1e-15)
    assert fourier_eval(one_sided_exp(0.7), 0.0) == pytest.approx(1.0, abs=1e-15)


def test_fourier_closed_formula():
    spec = gaussian((0.5,), PI)
    xi = 1.0
    want = math.exp(-PI) / complex(1.0, 2 * PI * 0.5)
    assert fourier_eval(spec, xi) == pytest.approx(want, abs=1e-15)


def test_fourier_matches_time_domain_transform():
    # numerical FT of evaluate() must land back on fourier_eval
    from scipy.integrate import quad

    spec = gaussian((0.5,), PI)
    for xi in (0.0, 0.3, 1.0):
        re, _ = quad(
            lambda x: evaluate(spec, x) * math.cos(2 * PI * xi * x), -12, 12,
            epsabs=1e-12, limit=300,
        )
        im, _ = quad(
            lambda x: -evaluate(spec, x) * math.sin(2 * PI * xi * x), -12, 12,
            epsabs=1e-12, limit=300,
        )
        assert complex(re, im) == pytest.approx(fourier_eval(spec, xi), abs=1e-10)


def test_fourier_modulus_dominated_by_gaussian_factor():
    spec = gaussian((0.3, -0.2, 0.1), 0.8)
    for xi in np.linspace(-4, 4, 81):
        assert abs(fourier_eval(spec, xi)) <= math.exp(-0.8 * xi * xi) + 1e-15


def test_eval_pure_gaussian():
    assert evaluate(gaussian((), PI), 0.0) == pytest.approx(1.0, abs=1e-14)
    assert evaluate(gaussian((), PI), 0.4) == pytest.approx(GAUSS_AT_04, abs=1e-13)


def test_eval_one_sided():
    spec = one_sided_exp(1.0)
    assert evaluate(spec, -0.5) == 0.0
    assert evaluate(spec, 0.0) == pytest.approx(1.0, abs=1e-15)
    assert evaluate(spec, 2.0) == pytest.approx(math.exp(-2.0), abs=1e-15)
    neg = one_sided_exp(-0.5)
    assert evaluate(neg, 0.5) == 0.0
    assert evaluate(neg, -1.0) == pytest.approx(2.0 * math.exp(-2.0), abs=1e-15)


def test_eval_sech():
    spec = sech(1.3)
    for x in (0.0, 0.7, -2.1):
        assert evaluate(spec, x) == pytest.approx(1.0 / math.cosh(1.3 * x), abs=1e-14)


def test_eval_single_delta_against_quadrature():
    spec = gaussian((0.3,), PI)
    assert evaluate(spec, 0.7) == pytest.approx(TP_03_AT_07, abs=1e-11)
    assert evaluate(spec, -1.2) == pytest.approx(TP_03_AT_M12, abs=1e-11)
    assert evaluate(gaussian((-0.4,), PI), 0.5) == pytest.approx(
        TP_M04_AT_05, abs=1e-11
    )


def test_eval_two_distinct_deltas_against_quadrature():
    spec = gaussian((0.3, -0.2), PI)
    assert evaluate(spec, 0.8) == pytest.approx(TP_03_M02_AT_08, abs=1e-11)


def test_eval_repeated_deltas_against_quadrature():
    spec = gaussian((0.25, 0.25), PI)
    assert evaluate(spec, 0.6, tol=1e-10) == pytest.approx(
        TP_CONFLUENT_AT_06, abs=1e-9
    )


def test_eval_grid_against_inverse_transform():
    # the closed erfcx form vs plain Fourier inversion on a wide grid
    spec = gaussian((0.3,), PI)
    xs = np.linspace(-10, 10, 101)
    vals = evaluate(spec, xs)
    for i in range(0, 101, 4):
        assert vals[i] == pytest.approx(quad_fourier(xs[i], (0.3,), PI), abs=2e-10)


def test_eval_array_shape_and_match():
    spec = gaussian((0.3, -0.2), PI)
    xs = np.linspace(-3, 3, 17).reshape(17)
    vals = evaluate(spec, xs)
    assert vals.shape == (17,)
    for x, v in zip(xs, vals):
        assert v == pytest.approx(evaluate(spec, float(x)), abs=1e-14)


def test_eval_seeded_random_specs_against_quadrature():
    rng = np.random.default_rng(7)
    for _ in range(4):
        n = int(rng.integers(1, 3))
        deltas = tuple(rng.uniform(0.1, 0.5, n) * rng.choice([-1.0, 1.0], n))
        c = float(rng.uniform(1.0, 4.0))
        spec = gaussian(deltas, c)
        for x in rng.uniform(-2.0, 2.0, 3):
            assert evaluate(spec, float(x)) == pytest.approx(
                quad_fourier(float(x), deltas, c), abs=1e-9
            )


def test_modulated_assembly():
    base = gaussian((0.3,), PI)
    c_seq = Seq(offset=-1, values=(0.5, 1.0, -0.25))
    d_seq = Seq(offset=0, values=(1.0, 0.3j))
    spec = modulated(base, c_seq, d_seq)
    x = 0.37
    dhat = sum(
        d * np.exp(2j * PI * (d_seq.offset + l) * x)
        for l, d in enumerate(d_seq.values)
    )
    comb = sum(
        ck * evaluate(base, x - (c_seq.offset + k))
        for k, ck in enumerate(c_seq.values)
    )
    assert evaluate_complex(spec, x) == pytest.approx(dhat * comb, abs=1e-12)


def test_modulated_real_projection_guard():
    base = gaussian((), PI)
    spec = modulated(base, Seq(0, (1.0,)), Seq(0, (1.0, 1.0)))
    with pytest.raises(UnsupportedKind):
        evaluate(spec, 0.3)  # genuinely complex-valued window


def test_json_round_trip():
    specs = [
        gaussian((0.3, -0.2), PI),
        gaussian((), 2.0),
        one_sided_exp(-0.7),
        sech(2.5),
        modulated(gaussian((0.3,), 1.0), Seq(-1, (1.0, 2.0 + 1.0j)), Seq(0, (1.0,))),
    ]
    for spec in specs:
        again = from_json(to_json(spec))
        assert again == spec
    obj = json.loads(to_json(specs[0]))
    assert obj["kind"] == "gaussian_type"
    assert obj["deltas"] == [0.3, -0.2]
    assert obj["c"] == PI


def test_json_rejects_malformed():
    with pytest.raises((ValueError, KeyError)):
        from_json('{"kind": "gaussian_type", "c": -1, "deltas": []}')
    with pytest.raises((ValueError, KeyError)):
        from_json('{"kind": "mystery"}')


def test_reduce_removes_requested_delta():
    spec = gaussian((0.3,), PI)
    assert reduce(spec, 1) == gaussian((), PI)
    spec2 = gaussian((0.3, -0.2), 1.0)
    assert reduce(spec2, 2) == gaussian((0.3,), 1.0)
    assert reduce(reduce(spec2, 1), 1) == reduce(reduce(spec2, 2), 1) == gaussian((), 1.0)


def test_reduce_validation():
    with pytest.raises(IndexOutOfRange):
        reduce(gaussian((0.3,), PI), 2)
    with pytest.raises(IndexOutOfRange):
        reduce(gaussian((0.3,), PI), 0)
    with pytest.raises(UnsupportedKind):
        reduce(sech(1.0), 1)


def test_constructor_validation():
    with pytest.raises(ValueError):
        gaussian((0.3,), -1.0)
    with pytest.raises(ValueError):
        gaussian((0.0,), 1.0)
    with pytest.raises(ValueError):
        one_sided_exp(0.0)
    with pytest.raises(ValueError):
        sech(-1.0)
    base = gaussian((), PI)
    inner = modulated(base, Seq(0, (1.0,)), Seq(0, (1.0,)))
    with pytest.raises(ValueError):
        modulated(inner, Seq(0, (1.0,)), Seq(0, (1.0,)))


@pytest.mark.parametrize(
    "spec",
    [
        gaussian((), PI),
        gaussian((0.3,), PI),
        gaussian((0.3, -0.2), PI),
        one_sided_exp(1.0),
        sech(1.0),
    ],
    ids=["gauss", "tp1", "tp2", "onesided", "sech"],
)
def test_accuracy_cert_truncation(spec):
    cert = accuracy_cert(spec, tol=1e-10)
    R = cert.truncation_radius
    xs = np.concatenate([np.linspace(-R - 6, -R, 40), np.linspace(R, R + 6, 40)])
    assert np.all(np.abs(evaluate(spec, xs)) <= 1e-10 * 1.001)
    assert decay_radius(spec, 1e-10) == math.ceil(R)


@pytest.mark.parametrize("K", [3, 5, 9])
def test_tail_sum_bound_dominates_brute_tail(K):
    for spec in (gaussian((0.3,), PI), gaussian((0.2, 0.2), 2.0), sech(1.0)):
        bound = tail_sum_bound(spec, K)
        brute = 0.0
        for j in list(range(K, K + 40)) + list(range(-K - 40, -K)):
            xs = np.linspace(j, j + 1, 101)
            brute += float(np.max(np.abs(evaluate(spec, xs))))
        assert brute <= bound * (1 + 1e-9)


def test_global_and_derivative_bounds():
    for spec in (gaussian((), PI), gaussian((0.3, -0.2), PI), sech(2.0)):
        xs = np.linspace(-8, 8, 4001)
        vals = evaluate(spec, xs)
        assert np.max(np.abs(vals)) <= global_max_bound(spec) * (1 + 1e-12)
        fd = np.abs(np.diff(vals)) / (xs[1] - xs[0])
        assert np.max(fd) <= derivative_bound(spec) * (1 + 1e-6)


def test_wiener_bound_dominates_dense_grid():
    for spec in (gaussian((), PI), sech(1.0), gaussian((0.3,), PI)):
        bound = wiener_norm_bound(spec)
        total = 0.0
        for k in range(-12, 12):
            xs = np.linspace(k, k + 1, 1001)
            total += float(np.max(np.abs(evaluate(spec, xs))))
        assert total <= bound * (1 + 1e-9)
        assert bound >= abs(evaluate(spec, 0.0))
        assert math.isfinite(bound)


def test_wiener_bound_one_sided_closed_form():
    delta = 0.8
    want = (1.0 + 1.0 / (1.0 - math.exp(-1.0 / delta))) / delta
    assert wiener_norm_bound(one_sided_exp(delta)) == pytest.approx(want, rel=1e-12)


def test_wiener_bound_monotone_under_refinement():
    spec = gaussian((0.3,), PI)
    b0 = wiener_norm_bound(spec, refine=0)
    b1 = wiener_norm_bound(spec, refine=1)
    b2 = wiener_norm_bound(spec, refine=2)
    assert b2 <= b1 <= b0


def test_wiener_bound_modulated_product_rule():
    base = gaussian((), PI)
    spec = modulated(base, Seq(0, (1.0, -2.0)), Seq(0, (0.5, 0.5)))
    assert wiener_norm_bound(spec) == pytest.approx(
        3.0 * 1.0 * wiener_norm_bound(base), rel=1e-12
    )
