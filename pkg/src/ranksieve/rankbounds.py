"""
Selmer-rank bound assembly: dim Sel_2(E/Q) <= g + u + n with g the
class-group 2-rank of the cubic 2-division subfield, u from the sign of
the curve discriminant, and n counting multiplicative primes with even
valuation plus splitting defects at additive primes.  The global root
number fixes the parity of the Selmer dimension (trivial 2-torsion
assumed throughout), shaving the bound by one when the parities clash.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cubic import CubicField
from .elliptic import EllipticCurve, tate_local
from .numeric import roots_mod_p


@dataclass
class BKTerms:
    g: int | None  # class-group 2-rank (or an upper bound for it)
    u: int
    n: int
    phi_m: tuple  # multiplicative primes with even ord of the discriminant
    phi_a: tuple  # (p, n_p) at additive primes
    root_number: int | None = None
    known_rank_lower: int | None = None


@dataclass
class RankReport:
    terms: BKTerms
    selmer_upper: int
    rank_lower: int | None
    rank_upper: int
    status: str
    g_lower: int | None = None  # reverse inference from the known rank


def primes_above_count(field: CubicField, p: int) -> int:
    """Number of primes of the field over p, from the form splitting."""
    roots = roots_mod_p(field.form.coeffs, p)
    mults = sorted(m for _, m in roots)
    if not mults:
        return 1  # inert
    if mults == [1]:
        return 2  # linear times irreducible quadratic
    if mults == [3]:
        return 1  # totally ramified
    if mults == [1, 2]:
        return 2
    if mults == [1, 1, 1]:
        return 3
    raise AssertionError(f"impossible splitting {mults} at {p}")


def compute_bk_terms(curve: EllipticCurve, bad_primes, field: CubicField,
                     root_number=None, known_rank_lower=None, g=None) -> BKTerms:
    """
    Classify the supplied bad primes with Tate's algorithm and assemble
    (u, n, Phi_m, Phi_a).  `bad_primes` must list every prime dividing the
    curve discriminant with additive reduction or even ord; primes of the
    discriminant omitted here are taken multiplicative with odd valuation
    on the caller's authority.
    """
    phi_m = []
    phi_a = []
    disc = curve.discriminant()
    for p in sorted(bad_primes):
        if disc % p != 0:
            continue
        local = tate_local(curve, p)
        if local.is_multiplicative and local.ord_p_disc % 2 == 0:
            phi_m.append(p)
        elif local.reduction_type == "additive":
            phi_a.append((p, primes_above_count(field, p)))
    u = 2 if disc > 0 else 1
    n = len(phi_m) + sum(n_p - 1 for _, n_p in phi_a)
    return BKTerms(g, u, n, tuple(phi_m), tuple(phi_a), root_number, known_rank_lower)


def selmer_upper_bound(terms: BKTerms) -> int:
    """g + u + n, less one when the root number forces the other parity."""
    if terms.g is None:
        raise ValueError("class-group 2-rank bound g is required")
    bound = terms.g + terms.u + terms.n
    if terms.root_number is not None and (-1) ** bound != terms.root_number:
        bound -= 1
    return bound


def rank_report(terms: BKTerms) -> RankReport:
    upper = selmer_upper_bound(terms)
    lower = terms.known_rank_lower
    if lower is not None and lower > upper:
        raise ValueError(f"known rank {lower} exceeds the Selmer bound {upper}")
    if lower is not None and lower == upper:
        status = "rank determined (GRH)"
    elif lower is not None:
        status = "rank in range (GRH upper)"
    else:
        status = "upper bound only (GRH)"
    g_lower = None
    if lower is not None:
        g_lower = max(0, lower - terms.u - terms.n)
        if terms.g is not None and g_lower > terms.g:
            raise ValueError("reverse inference exceeds the supplied g bound")
    return RankReport(terms, upper, lower, upper, status, g_lower)
