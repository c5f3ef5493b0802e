"""
Sieve parameter selection: skewness from coefficient balancing, the
root-density correction alpha, and shell-based relation-yield estimates.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import mpmath

from .cubic import BinaryCubicForm
from .numeric import dickman_rho, primes_below, roots_mod_p


@dataclass
class SievePlan:
    form: BinaryCubicForm
    skew: mpmath.mpf
    region_bits: float
    a_bound: int
    b_bound: int
    alpha: float  # natural-log units
    smoothness_bound: int
    predicted_relations: float


def choose_skew(form: BinaryCubicForm):
    """
    The skew s > 0 equating the two largest of the four boundary terms
    |c_i| s^((2i-3)/2) (coefficient sizes at unit area), found by pairwise
    crossings.
    """
    if not form.is_irreducible():
        raise ValueError("form must be irreducible")
    logs = [math.log2(abs(c)) if c else -math.inf
            for c in (form.c0, form.c1, form.c2, form.c3)]

    def envelope(sbits):
        return max(logs[i] + (2 * i - 3) / 2 * sbits for i in range(4))

    best = None
    for i in range(4):
        for j in range(i + 1, 4):
            if logs[i] == -math.inf or logs[j] == -math.inf:
                continue
            sbits = (logs[i] - logs[j]) / (j - i)
            m = envelope(sbits)
            if best is None or m < best[0]:
                best = (m, sbits)
    return mpmath.mpf(2) ** best[1]


def murphy_alpha(form: BinaryCubicForm, prime_cutoff: int = 2000, samples: int = 4000,
                 seed: int = 0):
    """
    sum over p of log p (1/(p-1) - E_p), where E_p is the expected p-adic
    valuation of F at a random coprime pair: n_p p/(p^2-1) for unramified p
    with n_p simple projective roots, a sampled average at ramified p.
    Natural-log units; divide by ln 2 for bits.
    """
    if prime_cutoff < 100:
        raise ValueError("prime_cutoff too small to be meaningful")
    d = form.disc()
    total = mpmath.mpf(0)
    rng = random.Random(seed)
    for p in primes_below(prime_cutoff + 1):
        roots = roots_mod_p(form.coeffs, p)
        if d % p:
            n_p = len(roots)
            expected = mpmath.mpf(n_p * p) / (p * p - 1)
        else:
            expected = _sampled_valuation(form, p, samples, rng)
        total += mpmath.log(p) * (mpmath.mpf(1) / (p - 1) - expected)
    return total


def alpha_bits(alpha) -> float:
    """Convert a natural-log alpha to base-2 log units."""
    return float(alpha / mpmath.log(2))


def _sampled_valuation(form: BinaryCubicForm, p: int, samples: int, rng):
    span = p ** 6
    acc = 0
    for _ in range(samples):
        a = rng.randrange(span)
        b = rng.randrange(span)
        if math.gcd(math.gcd(a, b), p) != 1 and a % p == 0 and b % p == 0:
            continue
        v = form.value(a, -b)
        while v == 0:
            a, b = rng.randrange(span), rng.randrange(span)
            v = form.value(a, -b)
        while v % p == 0:
            acc += 1
            v //= p
    return mpmath.mpf(acc) / samples


def max_form_bits(form: BinaryCubicForm, a_bound, b_bound) -> float:
    """
    log2 of the corner bound sum_i |c_i| A^i B^(3-i) on max |F| over
    [-A, A] x [1, B]; within a bit of the true boundary maximum and
    dominated by the two largest terms once the skew balances them.
    """
    cs = (form.c0, form.c1, form.c2, form.c3)
    total = sum(abs(cs[i]) * a_bound ** i * b_bound ** (3 - i) for i in range(4))
    return math.log2(total)


def make_plan(form: BinaryCubicForm, smoothness_bound: int, region_bits: float,
              alpha_cutoff: int = 2000) -> SievePlan:
    skew = choose_skew(form)
    sbits = float(mpmath.log(skew, 2))
    b = max(1, round(2 ** ((region_bits - 1 - sbits) / 2)))
    a = max(1, round(2 ** (region_bits - 1) / b))
    alpha = murphy_alpha(form, alpha_cutoff)
    plan = SievePlan(form, skew, region_bits, a, b, float(alpha),
                     smoothness_bound, 0.0)
    plan.predicted_relations = float(estimate_relations(plan))
    return plan


def estimate_relations(plan: SievePlan, shell_width: float = 0.25,
                       exact_constants: tuple | None = None):
    """
    Shell-sum estimate of the number of full relations in the plan's
    region: (1/zeta(2)) sum_k area(shell k) rho((size_k + alpha_bits)/log2 B).

    `exact_constants`, when given as (numerator_base, numerator_step,
    log2_bound), replaces the computed shell sizes for bit-faithful
    reproduction of published estimates.
    """
    if shell_width <= 0:
        raise ValueError("shell width must be positive")
    sbits = float(mpmath.log(plan.skew, 2))
    s_min = 1 + sbits
    nshells = int(round((plan.region_bits - s_min) / shell_width))
    if nshells < 0:
        raise ValueError("region smaller than one shell at this skew")
    log2_bound = math.log2(plan.smoothness_bound)
    abits = alpha_bits(plan.alpha)
    total = mpmath.mpf(0)
    for k in range(nshells + 1):
        sk = s_min + shell_width * k
        if k == 0:
            area = mpmath.mpf(2) ** sk
        else:
            area = mpmath.mpf(2) ** sk - mpmath.mpf(2) ** (sk - shell_width)
        if exact_constants is not None:
            base, step, logb = exact_constants
            u = (base + step * k) / logb
        else:
            a_k = mpmath.sqrt(mpmath.mpf(2) ** (sk - 1) * plan.skew)
            b_k = max(1.0, float(mpmath.mpf(2) ** (sk - 1) / a_k))
            size_k = max_form_bits(plan.form, int(a_k), max(1, int(round(b_k))))
            u = (size_k + abits) / log2_bound
        total += area * dickman_rho(u)
    return total * 6 / mpmath.pi ** 2
