import random

import pytest

from ranksieve.catalog import PRIME_BOUNDS, REDUCED_FIELD_FORMS, reduced_field_form
from ranksieve.cubic import (
    BinaryCubicForm,
    CubicField,
    ReducibleFormError,
    bach_bound,
    build_factor_base,
    julia_reduce,
    maximalize,
    remove_index,
)
from ranksieve.numeric import primes_below, roots_mod_p

from oracles import dedekind_maximal_at


def test_disc_examples():
    assert BinaryCubicForm(1, 0, -1, -1).disc() == -23
    assert BinaryCubicForm(1, 0, 0, -1).disc() == -27
    f = BinaryCubicForm(1, 0, -1, -1)
    shifted = f.transform(((1, 1), (0, 1)))
    assert shifted.disc() == f.disc()
    with pytest.raises(ValueError):
        from ranksieve.cubic import disc

        disc(BinaryCubicForm(0, 1, 2, 1))


def test_transform_composes():
    rng = random.Random(2)
    f = BinaryCubicForm(3, -2, 5, 7)
    for _ in range(20):
        m1 = _random_unimodular(rng)
        m2 = _random_unimodular(rng)
        lhs = f.transform(m1).transform(m2)
        prod = (
            (m1[0][0] * m2[0][0] + m1[0][1] * m2[1][0],
             m1[0][0] * m2[0][1] + m1[0][1] * m2[1][1]),
            (m1[1][0] * m2[0][0] + m1[1][1] * m2[1][0],
             m1[1][0] * m2[0][1] + m1[1][1] * m2[1][1]),
        )
        assert lhs == f.transform(prod)


def _random_unimodular(rng, size=5):
    while True:
        m = [[rng.randrange(-size, size + 1) for _ in range(2)] for _ in range(2)]
        if m[0][0] * m[1][1] - m[0][1] * m[1][0] in (1, -1):
            return ((m[0][0], m[0][1]), (m[1][0], m[1][1]))


@pytest.mark.parametrize("rank", sorted(REDUCED_FIELD_FORMS))
def test_published_forms_are_reduced(rank):
    form = reduced_field_form(rank)
    red = julia_reduce(form)
    co = form.coeffs
    assert red.coeffs in {
        co,
        tuple(-c for c in co),
        (co[0], -co[1], co[2], -co[3]),
        (-co[0], co[1], -co[2], co[3]),
    }


def test_julia_reduce_shifted_form():
    red = julia_reduce(BinaryCubicForm(1, 3, 2, -1))
    assert red.disc() == -23
    assert max(abs(c) for c in red.coeffs) <= 3


def test_julia_reduce_recovers_canonical():
    rng = random.Random(17)
    base = julia_reduce(BinaryCubicForm(1, 0, -1, -1))
    for _ in range(15):
        scrambled = BinaryCubicForm(1, 0, -1, -1).transform(_random_unimodular(rng, 20))
        assert julia_reduce(scrambled).coeffs == base.coeffs
    assert julia_reduce(base) == base  # idempotent


def test_julia_reduce_rejects_reducible():
    with pytest.raises(ReducibleFormError):
        julia_reduce(BinaryCubicForm(1, 0, 0, -1))  # x^3 - 1


def test_maximalize_known_index():
    # x^3 - 4 has index 2 over the maximal order of Q(cbrt(2))
    field = maximalize(BinaryCubicForm(1, 0, 0, -4), [(2, 4), (3, 3)])
    assert field.disc == -108
    assert field.signature == (1, 1)
    # already-maximal form is unchanged up to reduction
    f23 = julia_reduce(BinaryCubicForm(1, 0, -1, -1))
    assert maximalize(f23, [(23, 1)]).form == f23


def test_maximalize_incomplete_factorization():
    with pytest.raises(ValueError):
        maximalize(BinaryCubicForm(1, 0, 0, -4), [(2, 2)])


def test_two_division_field_of_37a():
    # raw cubic (4, 0, -4, 1) has index 2; the field discriminant is 148
    field = maximalize(BinaryCubicForm(4, 0, -4, 1), [(2, 4), (37, 1)])
    assert field.disc == 148
    assert field.signature == (3, 0)
    for q in (2, 37):
        assert dedekind_maximal_at(field.form, q)


def test_index_removal_agrees_with_dedekind():
    # every field used in the acceptance run is maximal at its square primes
    for coeffs in [(1, 0, -1, -1), (1, 0, 4, -1), (1, -1, -3, 1), (1, 0, -9, -6),
                   (4, 1, -1, -1)]:
        form = BinaryCubicForm(*coeffs)
        d = abs(form.disc())
        for q in primes_below(100):
            if d % (q * q) == 0:
                assert dedekind_maximal_at(form, q), (coeffs, q)


@pytest.mark.parametrize("rank", sorted(PRIME_BOUNDS))
def test_bach_bounds_table(rank):
    field = CubicField.from_maximal_form(reduced_field_form(rank))
    assert abs(bach_bound(field) - PRIME_BOUNDS[rank][0]) <= 1


def test_bach_bound_small():
    field = CubicField.from_maximal_form(BinaryCubicForm(1, 0, -1, -1))
    assert bach_bound(field) == 117


def test_factor_base_small_field():
    field = CubicField.from_maximal_form(BinaryCubicForm(1, 0, -1, -1))
    fb = build_factor_base(field, 10)
    # exhaustive splitting for p in {2,3,5,7}: roots of x^3-x-1 mod p
    expected = []
    for p in (2, 3, 5, 7):
        for r in range(p):
            if (r ** 3 - r - 1) % p == 0:
                expected.append((p, r))
    assert [(fp.p, fp.root[0]) for fp in fb.primes] == expected
    assert fb.rational_prime_count == 4


def test_factor_base_splitting_properties():
    rng = random.Random(31)
    fields = []
    while len(fields) < 6:
        co = (1, rng.randrange(-3, 4), rng.randrange(-6, 7), rng.randrange(-6, 7))
        f = BinaryCubicForm(*co)
        if f.disc() != 0 and f.is_irreducible() and f.disc() % 4 in (0, 1):
            try:
                fields.append(CubicField.from_maximal_form(f))
            except ValueError:
                continue
    for field in fields:
        for p in primes_below(100):
            rts = roots_mod_p(field.form.coeffs, p)
            n_distinct = len(rts)
            total_mult = sum(m for _, m in rts)
            assert total_mult <= 3
            if field.disc % p:
                assert n_distinct in (0, 1, 3)
                # residue degrees over p sum to 3
                deg2 = 1 if n_distinct == 1 else 0
                deg3 = 1 if n_distinct == 0 else 0
                assert n_distinct + 2 * deg2 + 3 * deg3 == 3


def test_alpha_valuations_account_for_norm():
    # non-monic maximal form: poles over c3, zeros over c0
    form = BinaryCubicForm(4, 1, -1, -1)  # disc -339, maximal
    field = CubicField.from_maximal_form(form)
    fb = build_factor_base(field, 200)
    for p in (2, 3, 5):
        if form.c0 % p and form.c3 % p:
            continue
        total = sum(fb.primes[c].alpha_valuation for c in fb.columns_over(p))
        v_c0 = _pval(form.c0, p)
        v_c3 = _pval(form.c3, p)
        assert total == v_c0 - v_c3, p


def _pval(n, p):
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


def test_factor_base_jobs_deterministic():
    field = CubicField.from_maximal_form(BinaryCubicForm(1, 0, 4, -1))
    fb1 = build_factor_base(field, 500, jobs=1)
    fb2 = build_factor_base(field, 500, jobs=3)
    assert [(f.p, f.root, f.ramified, f.alpha_valuation) for f in fb1.primes] == [
        (f.p, f.root, f.ramified, f.alpha_valuation) for f in fb2.primes
    ]
