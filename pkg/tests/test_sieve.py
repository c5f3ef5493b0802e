import math

import pytest

from ranksieve.cubic import BinaryCubicForm, CubicField, build_factor_base
from ranksieve.sieve import (
    Relation,
    RelationSet,
    SieveBudgetError,
    line_sieve,
    rational_relations,
    relation_matrix_rows,
    sieve_line,
    targeted_relations,
    trial_factor,
    verify_norm_identity,
)

from oracles import brute_force_smooth_pairs

FIELD_23 = CubicField.from_maximal_form(BinaryCubicForm(1, 0, -1, -1))
FIELD_283 = CubicField.from_maximal_form(BinaryCubicForm(1, 0, 4, -1))
FIELD_339 = CubicField.from_maximal_form(BinaryCubicForm(4, 1, -1, -1))


def test_unit_norm_pair_is_candidate():
    fb = build_factor_base(FIELD_23, 50)
    cands = line_sieve(fb, 50, 5, threshold_bits=25)
    assert (1, 1) in cands
    rel = trial_factor(fb, 1, 1)
    assert rel is not None and rel.exponents == ()


def test_empty_factor_base_no_candidates():
    fb = build_factor_base(FIELD_23, 50)
    empty = type(fb)(fb.field, fb.bound, [], fb.rational_prime_count)
    assert line_sieve(empty, 30, 3, threshold_bits=-5) == []


def test_budget_guard():
    fb = build_factor_base(FIELD_23, 50)
    with pytest.raises(SieveBudgetError):
        line_sieve(fb, 10 ** 7, 10 ** 4, cell_budget=10 ** 6)


@pytest.mark.parametrize("field,bound,a_bound,b_bound", [
    (FIELD_23, 100, 200, 12),
    (FIELD_283, 100, 150, 10),
    (FIELD_339, 100, 200, 12),
])
def test_sieve_completeness_small(field, bound, a_bound, b_bound):
    """line_sieve + trial_factor finds exactly the brute-force smooth set."""
    fb = build_factor_base(field, bound)
    want = brute_force_smooth_pairs(fb, a_bound, b_bound)
    got = set()
    for a, b in line_sieve(fb, a_bound, b_bound):
        if trial_factor(fb, a, b) is not None:
            got.add((a, b))
    assert got == want


def test_norm_identity_bulk():
    fb = build_factor_base(FIELD_283, 382)
    n = 0
    for a, b in line_sieve(fb, 3000, 20):
        rel = trial_factor(fb, a, b)
        if rel is not None:
            assert verify_norm_identity(fb, rel)
            n += 1
    assert n > 300


def test_trial_factor_requires_coprime():
    fb = build_factor_base(FIELD_23, 50)
    with pytest.raises(ValueError):
        trial_factor(fb, 2, 2)
    with pytest.raises(ValueError):
        trial_factor(fb, 3, 0)


def test_trial_factor_rejects_nonsmooth():
    fb = build_factor_base(FIELD_23, 20)
    # F(4, -1) = 64 - 4 + 1 = 61, prime and above the bound
    assert trial_factor(fb, 4, 1) is None


def test_pole_offsets_constant_until_targeted():
    """c3 = 4 = 2^2: the prime at infinity over 2 carries a constant -2
    until a b = 2 line is sieved (mirrors the record-field phenomenon)."""
    fb = build_factor_base(FIELD_339, 200)
    inf_col = fb.index[(2, (1, 0))]
    assert fb.primes[inf_col].alpha_valuation == -2
    rels = []
    for a, b in line_sieve(fb, 400, 5):
        if b % 2:
            rel = trial_factor(fb, a, b)
            if rel is not None:
                rels.append(rel)
    assert rels
    for rel in rels:
        exps = dict(rel.exponents)
        assert exps.get(inf_col, 0) == -2
    targeted = targeted_relations(fb, 2, 4, a_bound=2000)
    assert targeted
    parities = {dict(r.exponents).get(inf_col, 0) % 2 for r in targeted}
    assert len(parities) >= 1
    for rel in targeted:
        assert rel.b == 2
        assert verify_norm_identity(fb, rel)


def test_rational_relations_patterns():
    fb = build_factor_base(FIELD_23, 117)
    rels = rational_relations(fb, 117)
    assert all(r.b == 0 for r in rels)
    for r in rels:
        assert verify_norm_identity(fb, r)
    # 23 is ramified with pattern (2, 1): its rational relation must appear
    ram = [r for r in rels if r.a == 23]
    assert len(ram) == 1
    exps = sorted(e for _, e in ram[0].exponents)
    assert exps == [1, 2]
    # inert and partially split primes contribute nothing
    inert = {r.a for r in rels}
    assert 2 not in inert and 3 not in inert


def test_rational_relations_limit_guard():
    fb = build_factor_base(FIELD_23, 50)
    with pytest.raises(ValueError):
        rational_relations(fb, 51)


def test_relation_set_dedupes():
    rels = RelationSet(None)
    r = Relation(1, 1, ())
    assert rels.add(r)
    assert not rels.add(Relation(1, 1, ()))
    assert len(rels) == 1


def test_matrix_rows_mod2():
    rel = Relation(5, 1, ((0, 2), (3, -1), (7, 3)))
    assert relation_matrix_rows([rel]) == [[3, 7]]


def test_sieve_line_matches_rectangle():
    fb = build_factor_base(FIELD_23, 60)
    per_line = [(a, b) for b in range(1, 4) for a in sieve_line(fb, b, 80)]
    rect = line_sieve(fb, 80, 3)
    assert per_line == rect
