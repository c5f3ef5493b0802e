import mpmath
import pytest

from ranksieve.analytic import (
    AnalyticBoundParams,
    LocalFactor,
    PrimeBudgetError,
    analytic_rank_bound,
    archimedean_term,
    arithmetic_term,
    conductor_term,
    parity_refine,
    power_sums,
    prime_cutoff,
)
from ranksieve.catalog import STANDARD_CURVES, standard_curve
from ranksieve.numeric import precision

from oracles import archimedean_quadrature, arithmetic_term_rational


def _params(label, delta, **kw):
    ainvs, n, eps, _rank = STANDARD_CURVES[label]
    curve = standard_curve(label)
    bad = tuple(p for p in (2, 3, 5, 7, 11, 37, 389, 5077) if curve.discriminant() % p == 0)
    return curve, AnalyticBoundParams(delta, n, eps, bad, **kw)


def test_power_sums_additive():
    assert all(s == 0 for s in power_sums(LocalFactor.additive(7), 6))


def test_power_sums_ap_zero():
    got = [float(s) for s in power_sums(LocalFactor.good(7, 0), 4)]
    assert got == [0, -2, 0, 2]


def test_power_sums_multiplicative():
    sk = power_sums(LocalFactor.multiplicative(5, 1), 4)
    for k, s in enumerate(sk, start=1):
        assert abs(s - mpmath.mpf(5) ** (-k / 2.0)) < 1e-25


def test_cutoff_monotone():
    assert prime_cutoff(1) == int(mpmath.floor(mpmath.e ** (2 * mpmath.pi)))
    assert prime_cutoff(1.5) > prime_cutoff(1)


def test_arithmetic_term_against_rational_oracle():
    curve, params = _params("11a", 1.0)
    fast = arithmetic_term(curve, params)
    exact = arithmetic_term_rational(curve, params)
    assert abs(fast - exact) < 1e-6


def test_arithmetic_term_precision_stable():
    curve, params = _params("11a", 1.0)
    v1 = arithmetic_term(curve, params)
    with precision(100):
        v2 = arithmetic_term(curve, params)
    assert abs(v1 - v2) < 1e-8


def test_archimedean_closed_form_vs_quadrature():
    for delta in (1, 1.5, 2, 3, 4):
        closed = archimedean_term(delta)
        quad = archimedean_quadrature(delta)
        assert abs(closed - quad) < 1e-8, delta


def test_archimedean_decay():
    assert abs(archimedean_term(10 ** 6)) < 1e-6


def test_conductor_term_values():
    assert abs(conductor_term(11, 1) - mpmath.mpf("-0.20337825")) < 1e-7
    assert abs(conductor_term(37, 1) - mpmath.mpf("-0.010318538")) < 1e-8
    n_unit = 4 * mpmath.pi ** 2
    assert abs(conductor_term(n_unit, 2.5)) < 1e-25


def test_parity_refinement():
    assert parity_refine(mpmath.mpf("29.4"), 1) == 28
    assert parity_refine(mpmath.mpf("28.7"), -1) == 27
    assert parity_refine(mpmath.mpf(5), -1) == 5


def test_full_bounds_cover_known_ranks():
    for label in ("11a", "37a", "389a"):
        curve, params = _params(label, 1.5)
        raw, refined = analytic_rank_bound(curve, params)
        rank = STANDARD_CURVES[label][3]
        assert raw >= rank
        assert refined >= rank
        assert (-1) ** refined == params.root_number


def test_full_bounds_frozen_values():
    expected = {"11a": "0.29601851", "37a": "1.1632253", "389a": "2.0537875"}
    for label, val in expected.items():
        curve, params = _params(label, 1.5)
        raw, _ = analytic_rank_bound(curve, params)
        assert abs(raw - mpmath.mpf(val)) < 1e-6


def test_prime_budget_guard():
    curve, params = _params("11a", 3.0)
    params.prime_budget = 10 ** 5
    with pytest.raises(PrimeBudgetError):
        arithmetic_term(curve, params)


def test_ap_cache_used():
    from ranksieve.analytic import local_factor

    curve, params = _params("11a", 1.0)
    params.ap_cache = {7: 99}  # wrong on purpose: the cache must win
    f = local_factor(curve, 7, params)
    assert abs(f.s1 - 99 / mpmath.sqrt(7)) < 1e-20


def test_unlisted_bad_prime_rejected():
    curve, params = _params("11a", 1.0)
    params.bad_primes = ()
    with pytest.raises(ValueError):
        arithmetic_term(curve, params)


def test_params_validation():
    with pytest.raises(ValueError):
        AnalyticBoundParams(0.5, 11)
    with pytest.raises(ValueError):
        AnalyticBoundParams(1.0, 0)
