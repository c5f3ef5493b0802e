"""
Line sieve over [-A, A] x [1, B] for the ideals (a + b*alpha) that factor
entirely over the factor base, plus rational relations from completely
split primes and targeted b = p lines for pole columns.

Exponents are valuations of the fractional ideal (a + b*alpha): the hit
root over each p dividing F(a, -b) receives the whole multiplicity
v_p(F(a, -b)), and every pole column (root at infinity over p | c3)
carries its constant alpha_valuation offset.  This makes the norm
identity  sum e_P log p = log|F(a,-b)| - log|c3|  exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .cubic import FactorBase


class SieveBudgetError(ValueError):
    pass


@dataclass(frozen=True)
class Relation:
    a: int
    b: int
    exponents: tuple  # ((column, valuation), ...) sorted by column
    provenance: str = "sieved"

    def odd_columns(self):
        return [c for c, e in self.exponents if e % 2]


@dataclass
class RelationSet:
    base: FactorBase
    relations: list = field(default_factory=list)
    _seen: set = field(default_factory=set)

    def add(self, rel: Relation) -> bool:
        key = (rel.a, rel.b)
        if key in self._seen:
            return False
        self._seen.add(key)
        self.relations.append(rel)
        return True

    def extend(self, rels):
        return sum(self.add(r) for r in rels)

    def __len__(self):
        return len(self.relations)


def _roots_by_prime(base: FactorBase):
    """p -> (affine roots, has_infinity) for sieving."""
    table = {}
    for fp in base.primes:
        aff, inf = table.setdefault(fp.p, ([], [False]))
        if fp.root[1] == 1:
            aff.append(fp.root[0])
        else:
            inf[0] = True
    return table


def _log_norm_bits(coeffs, a_lo, a_hi, b):
    """log2 |F(a, -b)| for a in [a_lo, a_hi] as float64, floored at 0."""
    c3, c2, c1, c0 = (float(c) for c in coeffs)
    a = np.arange(a_lo, a_hi + 1, dtype=np.float64)
    val = ((c3 * a + c2 * -b) * a + c1 * b * b) * a + c0 * -(b ** 3)
    val = np.abs(val)
    val[val < 2.0] = 2.0
    return np.log2(val)


def sieve_line(base: FactorBase, b: int, a_bound: int, threshold_bits: float = 20.0,
               segment: int = 1 << 26):
    """Candidate a-values on one horizontal line b = const."""
    coeffs = base.field.form.coeffs
    table = _roots_by_prime(base)
    out = []
    lo = -a_bound
    while lo <= a_bound:
        hi = min(lo + segment - 1, a_bound)
        width = hi - lo + 1
        acc = np.zeros(width, dtype=np.uint8)
        line_offset = 0.0
        for p, (aff, (has_inf,)) in table.items():
            w = max(1, int(math.log2(p)))
            if b % p == 0:
                # affine roots need p | a here, excluded by the gcd filter;
                # the infinity root hits the whole line
                if has_inf:
                    line_offset += w
            else:
                for r in aff:
                    start = ((-b * r) - lo) % p
                    acc[start::p] += w
        target = _log_norm_bits(coeffs, lo, hi, b) - threshold_bits - line_offset
        if target.max() > 230:
            raise SieveBudgetError("norms exceed the byte-accumulator range")
        hits = np.nonzero(acc.astype(np.float64) >= target)[0]
        for i in hits:
            a = lo + int(i)
            if math.gcd(a, b) == 1:
                out.append(a)
        lo = hi + 1
    return out


def line_sieve(base: FactorBase, a_bound: int, b_bound: int,
               threshold_bits: float = 20.0, cell_budget: int = 2 * 10 ** 9):
    """Candidate (a, b) pairs over the rectangle [-A, A] x [1, B]."""
    if a_bound < 1 or b_bound < 1:
        raise ValueError("region bounds must be at least 1")
    if not base.primes:
        return []
    cells = (2 * a_bound + 1) * b_bound
    if cells > cell_budget:
        raise SieveBudgetError(
            f"region has {cells} cells, budget {cell_budget}; "
            "sieve b-line segments separately or raise the budget"
        )
    cands = []
    for b in range(1, b_bound + 1):
        cands.extend((a, b) for a in sieve_line(base, b, a_bound, threshold_bits))
    return cands


def trial_factor(base: FactorBase, a: int, b: int):
    """
    The Relation for (a + b*alpha) when it factors over the base, else None.
    Requires gcd(a, b) = 1 and b >= 1.
    """
    if b < 1 or math.gcd(a, b) != 1:
        raise ValueError("need coprime (a, b) with b >= 1")
    coeffs = base.field.form.coeffs
    c3 = coeffs[0]
    g = (c3 * a ** 3 - coeffs[1] * a * a * b + coeffs[2] * a * b * b
         - coeffs[3] * b ** 3)
    rem = abs(g)
    exps = {}

    def attribute(p, v):
        if b % p == 0:
            root = (1, 0)
        else:
            root = ((-a) * pow(b, -1, p) % p, 1)
        col = base.index.get((p, root))
        if col is None:
            return False
        exps[col] = exps.get(col, 0) + v
        return True

    for p in base.rational_primes():
        if p * p > rem:
            break
        if rem % p == 0:
            v = 0
            while rem % p == 0:
                rem //= p
                v += 1
            if not attribute(p, v):
                return None
    if rem > 1:
        if rem >= base.bound or not attribute(rem, 1):
            return None
    for col, aval in base.pole_columns():
        exps[col] = exps.get(col, 0) + aval
    exps = {c: e for c, e in exps.items() if e != 0}
    return Relation(a, b, tuple(sorted(exps.items())), "sieved")


def rational_relations(base: FactorBase, limit: int):
    """
    One relation p + 0*alpha per rational prime p < limit whose primes are
    all of degree one: completely split p give exponents (1, 1, 1), and
    ramified patterns give (2, 1) or (3).
    """
    if limit > base.bound:
        raise ValueError("limit exceeds the factor-base bound")
    out = []
    for p in base.rational_primes():
        if p >= limit:
            break
        cols = base.columns_over(p)
        ram = [c for c in cols if base.primes[c].ramified]
        if len(cols) == 3 and not ram:
            exps = tuple((c, 1) for c in sorted(cols))
        elif len(cols) == 2 and len(ram) == 1:
            exps = tuple(sorted((c, 2 if c in ram else 1) for c in cols))
        elif len(cols) == 1 and ram:
            exps = ((cols[0], 3),)
        else:
            continue
        out.append(Relation(p, 0, exps, "rational"))
    return out


def targeted_relations(base: FactorBase, p: int, count: int, a_bound: int = 10 ** 5,
                       threshold_bits: float = 20.0):
    """
    Relations on the line b = p, aimed at making the column of the prime
    over p with root at infinity vary.  Raises when the budget yields none.
    """
    got = []
    for a in sieve_line(base, p, a_bound, threshold_bits):
        rel = trial_factor(base, a, p)
        if rel is not None:
            got.append(rel)
            if len(got) >= count:
                return got
    if not got:
        raise SieveBudgetError(
            f"no relations with b = {p} for |a| <= {a_bound}; enlarge the region"
        )
    return got


def relation_matrix_rows(relations):
    """Mod-2 rows (lists of odd-exponent columns) for the relation list."""
    return [rel.odd_columns() for rel in relations]


def verify_norm_identity(base: FactorBase, rel: Relation) -> bool:
    """Exact check: prod p^e over the exponents equals |F(a,-b)| / |c3|."""
    from fractions import Fraction

    coeffs = base.field.form.coeffs
    if rel.b == 0:
        g = abs(coeffs[0]) * rel.a ** 3
    else:
        a, b = rel.a, rel.b
        g = abs(coeffs[0] * a ** 3 - coeffs[1] * a * a * b
                + coeffs[2] * a * b * b - coeffs[3] * b ** 3)
    lhs = Fraction(1)
    for col, e in rel.exponents:
        p = base.primes[col].p
        lhs *= Fraction(p) ** e
    return lhs == Fraction(g, abs(coeffs[0]))
