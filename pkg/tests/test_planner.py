import math

import mpmath
import pytest

from ranksieve.catalog import REDUCED_FIELD_FORMS, reduced_field_form
from ranksieve.cubic import BinaryCubicForm
from ranksieve.planner import (
    SievePlan,
    alpha_bits,
    choose_skew,
    estimate_relations,
    make_plan,
    max_form_bits,
    murphy_alpha,
)

# published yield estimates for the rank-28 field at bound 1,202,639
YIELD_TABLE = {
    45.0: 51394,
    45.5: 65320,
    46.0: 82602,
    46.5: 104046,
    47.0: 130648,
    47.5: 163641,
    48.0: 204554,
    48.5: 255278,
}
EXACT_CONSTANTS = (174.6, 0.375, 20.2)


def _skew_bits(form):
    return float(mpmath.log(choose_skew(form), 2))


def test_skew_record_fields():
    assert abs(_skew_bits(reduced_field_form(28)) - 41.25) <= 0.25
    assert abs(_skew_bits(reduced_field_form(27)) - 26.625) <= 0.25


def test_skew_palindromic():
    assert abs(_skew_bits(BinaryCubicForm(3, 7, 7, 3)) - 0.0) < 1e-9


def test_alpha_matches_published_constant():
    # the published shell table embeds base 174.6 = 176.5 + alpha(bits)
    a = murphy_alpha(reduced_field_form(28), 2000)
    assert abs(alpha_bits(a) - (-1.9)) <= 0.4


def test_alpha_sign_structure():
    # no roots mod small p pushes alpha up: compare against a zeroed variant
    form = BinaryCubicForm(1, 0, -1, -1)  # no roots mod 2 and 3
    a = murphy_alpha(form, 200)
    # the p = 2, 3 contributions are log p/(p-1) > 0
    assert float(a) > -2.0


def test_alpha_converges_with_cutoff():
    for co in [(1, 2, -3, 5), (2, 1, 1, 1)]:
        form = BinaryCubicForm(*co)
        a1 = murphy_alpha(form, 2000)
        a2 = murphy_alpha(form, 4000)
        assert abs(float(a1) - float(a2)) < 0.05


def test_boundary_size_claim():
    # at skewness 2^41.25 and area 2^42.25 the two largest coefficient
    # terms agree within 1.5 bits and the boundary max is 176.5 +- 1 bits
    form = reduced_field_form(28)
    a_bound = round(2 ** 41.25)
    b_bound = 1
    cs = (form.c0, form.c1, form.c2, form.c3)
    terms = sorted(
        (math.log2(abs(cs[i])) + i * math.log2(a_bound) + (3 - i) * 0.0 for i in range(4)),
        reverse=True,
    )
    assert terms[0] - terms[1] <= 1.5
    assert abs(max_form_bits(form, a_bound, b_bound) - 176.5) <= 1.0


def _k28_plan(alpha, region_bits):
    return SievePlan(
        reduced_field_form(28), mpmath.mpf(2) ** 41.25, region_bits, 0, 0,
        float(alpha), 1202639, 0.0,
    )


def test_yield_estimates_exact_constants():
    plan = _k28_plan(murphy_alpha(reduced_field_form(28), 2000), 45.0)
    for s, expect in YIELD_TABLE.items():
        plan.region_bits = s
        est = float(estimate_relations(plan, 0.25, EXACT_CONSTANTS))
        assert abs(est - expect) / expect < 0.02, (s, est)


def test_yield_estimates_self_computed():
    alpha = murphy_alpha(reduced_field_form(28), 2000)
    plan = _k28_plan(alpha, 45.0)
    for s, expect in YIELD_TABLE.items():
        plan.region_bits = s
        est = float(estimate_relations(plan))
        assert abs(est - expect) / expect < 0.15, (s, est)


def test_yield_monotone():
    alpha = murphy_alpha(reduced_field_form(28), 2000)
    plan = _k28_plan(alpha, 45.0)
    vals = []
    for s in (45.0, 46.0, 47.0, 48.0):
        plan.region_bits = s
        vals.append(float(estimate_relations(plan)))
    assert all(a < b for a, b in zip(vals, vals[1:]))
    plan.region_bits = 46.0
    lo = float(estimate_relations(plan))
    plan.smoothness_bound = 4 * 1202639
    hi = float(estimate_relations(plan))
    assert hi > lo


def test_shell_width_guard():
    plan = _k28_plan(-1.3, 45.0)
    with pytest.raises(ValueError):
        estimate_relations(plan, 0.0)


def test_make_plan_invariants():
    plan = make_plan(BinaryCubicForm(1, 0, -1, -1), 117, 20.0, alpha_cutoff=500)
    area = 2 * plan.a_bound * plan.b_bound
    assert abs(math.log2(area) - plan.region_bits) <= 0.25
    skew_bits_val = float(mpmath.log(plan.skew, 2))
    assert abs(math.log2(plan.a_bound / plan.b_bound) - skew_bits_val) <= 0.5
    assert plan.predicted_relations > 0
