"""
Explicit-formula upper bound on the analytic rank: the zero sum against
the Fejer kernel ((sin pi Delta x)/(pi Delta x))^2 equals an arithmetic
prime sum, an archimedean term with a closed form, and a conductor term.
Under GRH every summand over the zeros is nonnegative, so the total
bounds the order of vanishing at the central point; the global root
number then refines the bound by parity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath

from .elliptic import ADDITIVE, GOOD, SPLIT_MULT, EllipticCurve, count_ap, tate_local
from .numeric import dilog


class PrimeBudgetError(ValueError):
    pass


@dataclass
class AnalyticBoundParams:
    delta: float
    conductor: int
    root_number: int | None = None
    bad_primes: tuple = ()
    ap_cache: dict = field(default_factory=dict)
    prime_budget: int = 10 ** 7

    def __post_init__(self):
        if self.delta < 1:
            raise ValueError("tightness parameter must be at least 1")
        if self.conductor < 1:
            raise ValueError("conductor must be positive")


@dataclass(frozen=True)
class LocalFactor:
    """Analytically normalized Euler factor data: s1 = alpha + beta,
    q = alpha * beta, with |alpha| = 1 at good primes."""

    p: int
    s1: mpmath.mpf
    q: mpmath.mpf

    @classmethod
    def good(cls, p, ap):
        return cls(p, mpmath.mpf(ap) / mpmath.sqrt(p), mpmath.mpf(1))

    @classmethod
    def multiplicative(cls, p, ap):
        return cls(p, mpmath.mpf(ap) / mpmath.sqrt(p), mpmath.mpf(0))

    @classmethod
    def additive(cls, p):
        return cls(p, mpmath.mpf(0), mpmath.mpf(0))

    @classmethod
    def from_reduction(cls, data):
        if data.reduction_type == GOOD:
            return cls.good(data.p, data.a_p)
        if data.reduction_type == ADDITIVE:
            return cls.additive(data.p)
        return cls.multiplicative(data.p, 1 if data.reduction_type == SPLIT_MULT else -1)


def power_sums(factor: LocalFactor, kmax: int):
    """[s_1, ..., s_kmax] with s_k = alpha^k + beta^k by the recurrence."""
    if kmax < 1:
        raise ValueError("kmax must be at least 1")
    out = []
    s_prev2 = mpmath.mpf(2)  # s_0
    s_prev1 = factor.s1
    out.append(s_prev1)
    for _ in range(kmax - 1):
        s_next = factor.s1 * s_prev1 - factor.q * s_prev2
        out.append(s_next)
        s_prev2, s_prev1 = s_prev1, s_next
    return out


def prime_cutoff(delta) -> int:
    return int(mpmath.floor(mpmath.e ** (2 * mpmath.mpf(delta) * mpmath.pi)))


def local_factor(curve: EllipticCurve, p: int, params: AnalyticBoundParams) -> LocalFactor:
    if p in params.bad_primes:
        return LocalFactor.from_reduction(tate_local(curve, p))
    if p in params.ap_cache:
        return LocalFactor.good(p, params.ap_cache[p])
    if curve.discriminant() % p == 0:
        raise ValueError(
            f"prime {p} divides the discriminant but is not listed in bad_primes"
        )
    return LocalFactor.good(p, count_ap(curve, p))


def arithmetic_term(curve: EllipticCurve, params: AnalyticBoundParams):
    """
    -(1/(Delta pi)) sum over p <= exp(2 Delta pi), k <= 2 Delta pi / log p
    of log(p) (k/p^(k/2)) s_k (1 - k log(p) / (2 Delta pi)).
    """
    from .numeric import primes_below

    delta = mpmath.mpf(params.delta)
    cutoff = prime_cutoff(delta)
    if cutoff > params.prime_budget and not params.ap_cache:
        raise PrimeBudgetError(
            f"prime cutoff exp(2 delta pi) = {cutoff} exceeds budget "
            f"{params.prime_budget}; supply an a_p cache or lower delta"
        )
    dpi = delta * mpmath.pi
    two_dpi = 2 * dpi
    total = mpmath.mpf(0)
    for p in primes_below(cutoff + 1):
        logp = mpmath.log(p)
        kmax = int(mpmath.floor(two_dpi / logp))
        if kmax < 1:
            continue
        sk = power_sums(local_factor(curve, p, params), kmax)
        rootp = mpmath.sqrt(p)
        pk = mpmath.mpf(1)
        inner = mpmath.mpf(0)
        for k in range(1, kmax + 1):
            pk *= rootp
            inner += (k / pk) * sk[k - 1] * (1 - k * logp / two_dpi)
        total += logp * inner
    return -total / dpi


def archimedean_term(delta):
    """Closed form of the digamma integral against the Fejer kernel."""
    delta = mpmath.mpf(delta)
    if delta < 1:
        raise ValueError("delta must be at least 1")
    pi = mpmath.pi
    return (
        -mpmath.euler / (pi ** 2 * delta)
        + (pi ** 2 / 6 - dilog(mpmath.e ** (-2 * pi * delta)))
        / (2 * pi ** 3 * delta ** 2)
    )


def conductor_term(conductor: int, delta):
    if conductor < 1:
        raise ValueError("conductor must be positive")
    delta = mpmath.mpf(delta)
    return mpmath.log(mpmath.sqrt(conductor) / (2 * mpmath.pi)) / (delta * mpmath.pi)


def parity_refine(raw_bound, root_number: int) -> int:
    """Largest integer at most raw_bound whose parity matches the sign."""
    r = int(mpmath.floor(raw_bound))
    if (-1) ** r != root_number:
        r -= 1
    return r


def analytic_rank_bound(curve: EllipticCurve, params: AnalyticBoundParams):
    """
    (raw_bound, parity_refined): the zero-sum value g + u + n, and the
    parity refinement when the root number is supplied (else None).
    """
    raw = (
        arithmetic_term(curve, params)
        + archimedean_term(params.delta)
        + conductor_term(params.conductor, params.delta)
    )
    refined = None
    if params.root_number is not None:
        refined = parity_refine(raw, params.root_number)
    return raw, refined
