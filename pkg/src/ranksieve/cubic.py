"""
Binary cubic forms as cubic fields: discriminants, Julia reduction,
index removal down to the field discriminant, prime splitting, and
factor-base construction.

A form (c3, c2, c1, c0) stands for F(X, Y) = c3 X^3 + c2 X^2 Y
+ c1 X Y^2 + c0 Y^3.  When disc(F) equals the field discriminant, the
splitting of a rational prime p mirrors the factorization of F mod p as a
binary form over P^1(F_p): distinct projective roots give the degree-one
primes over p, with ramification index equal to the root multiplicity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from multiprocessing import Pool

import mpmath

from .numeric import primes_below, roots_mod_p


class ReducibleFormError(ValueError):
    pass


@dataclass(frozen=True)
class BinaryCubicForm:
    c3: int
    c2: int
    c1: int
    c0: int

    @property
    def coeffs(self):
        return (self.c3, self.c2, self.c1, self.c0)

    def disc(self) -> int:
        a, b, c, d = self.coeffs
        return (
            18 * a * b * c * d
            - 4 * b ** 3 * d
            + b * b * c * c
            - 4 * a * c ** 3
            - 27 * a * a * d * d
        )

    def content(self) -> int:
        return math.gcd(math.gcd(abs(self.c3), abs(self.c2)), math.gcd(abs(self.c1), abs(self.c0)))

    def value(self, x: int, y: int) -> int:
        a, b, c, d = self.coeffs
        return a * x ** 3 + b * x * x * y + c * x * y * y + d * y ** 3

    def transform(self, m) -> "BinaryCubicForm":
        """The form F((X,Y) * M^T), i.e. substitute X -> aX+bY, Y -> cX+dY."""
        (a, b), (c, d) = m
        p3, p2, p1, p0 = self.coeffs
        # expand F(aX+bY, cX+dY)
        n3 = p3 * a ** 3 + p2 * a * a * c + p1 * a * c * c + p0 * c ** 3
        n2 = (
            3 * p3 * a * a * b
            + p2 * (a * a * d + 2 * a * b * c)
            + p1 * (2 * a * c * d + b * c * c)
            + 3 * p0 * c * c * d
        )
        n1 = (
            3 * p3 * a * b * b
            + p2 * (2 * a * b * d + b * b * c)
            + p1 * (a * d * d + 2 * b * c * d)
            + 3 * p0 * c * d * d
        )
        n0 = p3 * b ** 3 + p2 * b * b * d + p1 * b * d * d + p0 * d ** 3
        return BinaryCubicForm(n3, n2, n1, n0)

    def is_irreducible(self) -> bool:
        if self.c3 == 0 or self.disc() == 0:
            return False
        from .elliptic import _has_rational_root

        return not _has_rational_root(self.coeffs)


def disc(form: BinaryCubicForm) -> int:
    d = form.disc()
    if d == 0:
        raise ValueError("form has zero discriminant")
    return d


def _julia_covariant(form: BinaryCubicForm):
    """Positive definite quadratic (A, B, C) covariant to the form.

    For totally real forms (disc > 0) this is the Hessian, matching the
    weights lc^2 (a_j - a_k)^2 on (X - a_i Y)^2.  For disc < 0 the same
    weight pattern (squared differences of the two other roots) gives
    4 v^2 (X - aY)^2 + 2 ((a-u)^2 + v^2) ((X - uY)^2 + v^2 Y^2) for the
    real root a and complex pair u +- iv.
    """
    a, b, c, d = form.coeffs
    if form.disc() > 0:
        return (
            mpmath.mpf(b * b - 3 * a * c),
            mpmath.mpf(b * c - 9 * a * d),
            mpmath.mpf(c * c - 3 * b * d),
        )
    digits = max(len(str(abs(x))) for x in form.coeffs)
    with mpmath.workdps(2 * digits + 40):
        from .numeric import cubic_roots

        real, cplx = cubic_roots(a, b, c, d)
        alpha = real[0]
        beta = cplx[0]
        u, v = mpmath.re(beta), abs(mpmath.im(beta))
        t2 = 4 * v * v
        s2 = (alpha - u) ** 2 + v * v
        A = t2 + 2 * s2
        B = -2 * t2 * alpha - 4 * s2 * u
        C = t2 * alpha * alpha + 2 * s2 * (u * u + v * v)
        return (A, B, C)


_SMALL_GL2 = None


def _small_unimodular():
    global _SMALL_GL2
    if _SMALL_GL2 is None:
        mats = []
        rng = range(-1, 2)
        for a in rng:
            for b in rng:
                for c in rng:
                    for d in rng:
                        if a * d - b * c in (1, -1):
                            mats.append(((a, b), (c, d)))
        _SMALL_GL2 = mats
    return _SMALL_GL2


def julia_reduce(form: BinaryCubicForm) -> BinaryCubicForm:
    """
    GL2(Z)-reduce the form to a local minimum of the Julia covariant.
    Deterministic: ties are broken toward the lexicographically smallest
    (|c3|, |c2|, |c1|, |c0|), then the coefficient tuple itself.
    """
    if not form.is_irreducible():
        raise ReducibleFormError(f"form {form.coeffs} is reducible")
    f = form
    for _ in range(10000):
        A, B, C = _julia_covariant(f)
        k = int(mpmath.nint(-B / (2 * A)))
        if k != 0:
            f = f.transform(((1, k), (0, 1)))
            continue
        if A > C * (1 + mpmath.mpf(10) ** -20):
            f = f.transform(((0, -1), (1, 0)))
            continue
        break
    else:
        raise RuntimeError("julia reduction did not terminate")
    # canonical representative among equivalent reduced neighbours
    best = None
    for m in _small_unimodular():
        g = f.transform(m)
        A, B, C = _julia_covariant(g)
        if abs(B) <= A * (1 + 1e-12) and A <= C * (1 + 1e-12):
            key = (
                abs(g.c3),
                abs(g.c2),
                abs(g.c1),
                abs(g.c0),
                -g.c3,
                -g.c2,
                -g.c1,
                -g.c0,
            )
            if best is None or key < best[0]:
                best = (key, g)
    return best[1]


def _remove_index_once(form: BinaryCubicForm, q: int):
    """One index-removal step at q, or None when the form is q-maximal.

    The ring of the form is non-maximal at q exactly when F has a multiple
    projective root mod q whose lift satisfies the extra congruence below;
    the returned form generates the same field with disc/q^2.
    """
    c3, c2, c1, c0 = form.coeffs
    if form.disc() % (q * q) != 0:
        return None
    for (r, s), mult in roots_mod_p(form.coeffs, q):
        if mult < 2:
            continue
        if s == 0:
            # root at infinity: need q^2 | c3 (q | c2 from multiplicity)
            if c3 % (q * q) == 0:
                return BinaryCubicForm(c3 // (q * q), c2 // q, c1, c0 * q)
        else:
            b0 = form.value(r, 1)
            if b0 % (q * q) == 0:
                b1 = 3 * c3 * r * r + 2 * c2 * r + c1
                assert b1 % q == 0
                return BinaryCubicForm(b0 // (q * q), b1 // q, 3 * c3 * r + c2, q * c3)
    return None


def remove_index(form: BinaryCubicForm, candidate_primes) -> BinaryCubicForm:
    """
    Strip the index from the form at every prime in `candidate_primes`,
    which must include all primes where the form's ring is non-maximal.
    """
    changed = True
    while changed:
        changed = False
        g = form.content()
        if g != 1:
            form = BinaryCubicForm(*(c // g for c in form.coeffs))
            changed = True
        for q in sorted(set(candidate_primes)):
            step = _remove_index_once(form, q)
            while step is not None:
                form = step
                changed = True
                g = form.content()
                if g != 1:
                    form = BinaryCubicForm(*(c // g for c in form.coeffs))
                step = _remove_index_once(form, q)
    return form


@dataclass(frozen=True)
class CubicField:
    """A cubic field carried by a form whose disc is the field discriminant."""

    form: BinaryCubicForm
    disc: int
    signature: tuple[int, int]

    @classmethod
    def from_maximal_form(cls, form: BinaryCubicForm) -> "CubicField":
        d = form.disc()
        if d == 0:
            raise ValueError("zero discriminant")
        if d % 4 not in (0, 1):
            raise ValueError("discriminant is not 0 or 1 mod 4; form not maximal")
        sig = (3, 0) if d > 0 else (1, 1)
        return cls(form, d, sig)

    @property
    def r1r2_sum(self):
        return self.signature[0] + self.signature[1]


def maximalize(form: BinaryCubicForm, factored_disc) -> CubicField:
    """
    Produce the field attached to the form: remove the index at every prime
    q with q^2 dividing disc(form), then Julia-reduce.

    `factored_disc` must be a complete factorization of disc(form) as a
    list of (prime, exponent) pairs (the sign is ignored).
    """
    d = form.disc()
    prod = 1
    for p, e in factored_disc:
        prod *= p ** e
    if prod != abs(d):
        raise ValueError("factored_disc is not a complete factorization of disc(form)")
    candidates = [p for p, e in factored_disc if e >= 2]
    reduced = julia_reduce(remove_index(form, candidates))
    return CubicField.from_maximal_form(reduced)


def bach_bound(field: CubicField) -> int:
    """floor(12 (ln |disc|)^2): primes below generate Cl(K) under GRH."""
    with mpmath.workdps(30):
        return int(mpmath.floor(12 * mpmath.log(abs(field.disc)) ** 2))


@dataclass(frozen=True)
class FactorBasePrime:
    p: int
    root: tuple[int, int]  # projective (r, s), s in {0, 1}
    ramified: bool
    alpha_valuation: int


class FactorBase:
    """Degree-one prime ideals of norm < bound, ordered by (p, root)."""

    def __init__(self, field: CubicField, bound: int, primes, rational_prime_count: int):
        self.field = field
        self.bound = bound
        self.primes = primes
        self.rational_prime_count = rational_prime_count
        self.index = {(fp.p, fp.root): i for i, fp in enumerate(primes)}
        self._by_p = {}
        for i, fp in enumerate(primes):
            self._by_p.setdefault(fp.p, []).append(i)

    def __len__(self):
        return len(self.primes)

    def columns_over(self, p):
        return self._by_p.get(p, [])

    def rational_primes(self):
        """Sorted list of rational primes appearing under some ideal."""
        return sorted(self._by_p)

    def pole_columns(self):
        """(column, alpha_valuation) at the poles of alpha (negative values)."""
        return [
            (i, fp.alpha_valuation)
            for i, fp in enumerate(self.primes)
            if fp.alpha_valuation < 0
        ]


def _pval(n, p):
    v = 0
    n = abs(n)
    while n and n % p == 0:
        n //= p
        v += 1
    return v


def _fb_chunk(args):
    coeffs, plist = args
    out = []
    for p in plist:
        rts = roots_mod_p(coeffs, p)
        if rts:
            out.append((p, rts))
    return out


def build_factor_base(field: CubicField, bound: int, jobs: int | None = None) -> FactorBase:
    """
    One FactorBasePrime per degree-one prime ideal of norm < bound.

    alpha_valuation is the valuation of the fractional ideal (alpha) at the
    entry: -v_p(c3) at a root (1:0), +v_p(c0) at a root (0:1), else 0.
    """
    if bound < 2:
        raise ValueError("bound must be at least 2")
    coeffs = field.form.coeffs
    c3, c0 = coeffs[0], coeffs[3]
    ps = primes_below(bound)
    if jobs is None:
        jobs = 1
    if jobs > 1 and len(ps) > 4 * jobs:
        chunks = [(coeffs, ps[i::jobs]) for i in range(jobs)]
        with Pool(jobs) as pool:
            results = pool.map(_fb_chunk, chunks)
        per_p = sorted(pr for chunk in results for pr in chunk)
    else:
        per_p = _fb_chunk((coeffs, ps))
    entries = []
    for p, rts in per_p:
        for (r, s), mult in rts:
            if s == 0:
                aval = -_pval(c3, p)
            elif r == 0:
                aval = _pval(c0, p)
            else:
                aval = 0
            entries.append(FactorBasePrime(p, (r, s), mult > 1, aval))
    return FactorBase(field, bound, entries, len(ps))
