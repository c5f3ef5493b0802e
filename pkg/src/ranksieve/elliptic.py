"""
Integral Weierstrass models: invariants, point verification, point counts
over F_p, Tate's algorithm for local reduction data, and extraction of the
cubic form whose root field is the cubic subfield of the 2-division field.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .numeric import is_prime

GOOD = "good"
SPLIT_MULT = "split multiplicative"
NONSPLIT_MULT = "nonsplit multiplicative"
ADDITIVE = "additive"


class SingularCurveError(ValueError):
    pass


@dataclass(frozen=True)
class EllipticCurve:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with integer ai."""

    a1: int
    a2: int
    a3: int
    a4: int
    a6: int

    def __post_init__(self):
        if self.discriminant() == 0:
            raise SingularCurveError("zero discriminant")

    def b_invariants(self):
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    def c_invariants(self):
        b2, b4, b6, _ = self.b_invariants()
        return b2 * b2 - 24 * b4, -b2 ** 3 + 36 * b2 * b4 - 216 * b6

    def discriminant(self) -> int:
        b2, b4, b6, b8 = self.b_invariants()
        return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def ainvs(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)


@dataclass(frozen=True)
class LocalReductionData:
    p: int
    reduction_type: str
    a_p: int
    ord_p_disc: int
    conductor_exponent: int
    kodaira: str

    @property
    def is_good(self):
        return self.reduction_type == GOOD

    @property
    def is_multiplicative(self):
        return self.reduction_type in (SPLIT_MULT, NONSPLIT_MULT)


def invariants(curve: EllipticCurve):
    """(b2, b4, b6, b8, disc); raises SingularCurveError when disc = 0."""
    b2, b4, b6, b8 = curve.b_invariants()
    disc = curve.discriminant()
    if disc == 0:
        raise SingularCurveError("zero discriminant")
    return b2, b4, b6, b8, disc


def verify_point(curve: EllipticCurve, x, y) -> bool:
    """Exact check of the Weierstrass equation at a rational point."""
    x = Fraction(x)
    y = Fraction(y)
    lhs = y * y + curve.a1 * x * y + curve.a3 * y
    rhs = x ** 3 + curve.a2 * x * x + curve.a4 * x + curve.a6
    return lhs == rhs


def count_ap(curve: EllipticCurve, p: int) -> int:
    """
    Trace of Frobenius a_p = p + 1 - #E(F_p) for a good prime, by counting.

    Uses a quadratic-residue table on the completed square for p > 3 and
    direct enumeration of the curve equation at p = 2, 3.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if curve.discriminant() % p == 0:
        raise ValueError(f"{p} is a bad prime; use tate_local")
    if p > 2 ** 32:
        raise ValueError("p beyond the enumeration budget")
    if p <= 3:
        count = 1  # point at infinity
        a1, a2, a3, a4, a6 = (a % p for a in curve.ainvs())
        for x in range(p):
            for y in range(p):
                if (y * y + a1 * x * y + a3 * y - (x ** 3 + a2 * x * x + a4 * x + a6)) % p == 0:
                    count += 1
        return p + 1 - count
    # (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6 =: g(x)
    b2, b4, b6, _ = curve.b_invariants()
    c3, c2, c1, c0 = 4 % p, b2 % p, (2 * b4) % p, b6 % p
    x = np.arange(p, dtype=np.int64)
    g = ((c3 * x + c2) % p * x + c1) % p
    g = (g * x + c0) % p
    # chi table: chi[v] = 1 if v is a nonzero square, -1 nonsquare, 0 at 0
    chi = np.full(p, -1, dtype=np.int64)
    sq = (x * x) % p
    chi[sq] = 1
    chi[0] = 0
    return int(-chi[g].sum())


def _pval(n: int, p: int) -> int:
    if n == 0:
        return 10 ** 9  # effectively infinite
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _quadratic_has_root(a, b, c, p):
    """Does a t^2 + b t + c have a root in F_p?"""
    a, b, c = a % p, b % p, c % p
    if a == 0:
        return True  # degenerate, treated as split by callers that reach it
    if p == 2:
        return any((a * t * t + b * t + c) % 2 == 0 for t in (0, 1))
    disc = (b * b - 4 * a * c) % p
    return disc == 0 or pow(disc, (p - 1) // 2, p) == 1


def tate_local(curve: EllipticCurve, p: int) -> LocalReductionData:
    """
    Tate's algorithm at p: reduction type, Kodaira symbol, conductor
    exponent, and the local a_p (+-1 for multiplicative, 0 for additive).
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    disc = curve.discriminant()
    n = _pval(disc, p)
    if n == 0:
        return LocalReductionData(p, GOOD, count_ap(curve, p), 0, 0, "I0")

    a1, a2, a3, a4, a6 = curve.ainvs()

    # move the singular point to (0, 0) mod p
    x0, y0 = _singular_point(a1, a2, a3, a4, a6, p)
    a1, a2, a3, a4, a6 = _translate(a1, a2, a3, a4, a6, x0, y0)

    b2 = a1 * a1 + 4 * a2

    if b2 % p != 0:
        # multiplicative: split iff T^2 + a1 T - a2 factors over F_p
        split = _quadratic_has_root(1, a1, -a2, p)
        ap = 1 if split else -1
        rtype = SPLIT_MULT if split else NONSPLIT_MULT
        return LocalReductionData(p, rtype, ap, n, 1, f"I{n}")

    return _tate_additive(a1, a2, a3, a4, a6, p, n)


def _singular_point(a1, a2, a3, a4, a6, p):
    """A singular point of the reduction mod p (exists since p | disc)."""
    for x in range(p):
        # solve 2y + a1 x + a3 = 0 when p odd; brute force y otherwise
        ys = range(p) if p == 2 else [(-(a1 * x + a3)) * pow(2, -1, p) % p]
        for y in ys:
            if (y * y + a1 * x * y + a3 * y - (x ** 3 + a2 * x * x + a4 * x + a6)) % p:
                continue
            # partial derivatives must vanish
            fx = (a1 * y - (3 * x * x + 2 * a2 * x + a4)) % p
            fy = (2 * y + a1 * x + a3) % p
            if fx == 0 and fy == 0:
                return x, y
    raise AssertionError("no singular point found")


def _translate(a1, a2, a3, a4, a6, r, t):
    """(x, y) -> (x + r, y + t): new a-invariants."""
    a6 = a6 + a2 * r * r + a4 * r + r ** 3 - t * t - a1 * r * t - a3 * t
    a4 = a4 + 2 * a2 * r + 3 * r * r - a1 * t
    a3 = a3 + a1 * r + 2 * t
    a2 = a2 + 3 * r
    return a1, a2, a3, a4, a6


def _shear(a1, a2, a3, a4, a6, s):
    """y -> y + s x: new a-invariants."""
    return a1 + 2 * s, a2 - s * a1 - s * s, a3, a4 - s * a3, a6


def _tate_additive(a1, a2, a3, a4, a6, p, n_total):
    """Steps 3-11 of Tate's algorithm; singular point already at (0,0)."""
    n = n_total
    if _pval(a6, p) < 2:
        return _finish(p, n_total, "II", n)
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    if _pval(b8, p) < 3:
        return _finish(p, n_total, "III", n - 1)
    b6 = a3 * a3 + 4 * a6
    if _pval(b6, p) < 3:
        return _finish(p, n_total, "IV", n - 2)

    # normalize: kill a1 and a2 mod p with y -> y + s x, then push a3, a6
    # with y -> y + p t (t a root of the repeated quadratic, so p^2 | a3'
    # and p^3 | a6')
    if p == 2:
        assert a1 % 2 == 0  # 2 | b2 forces a1 even
        s = a2 % 2
    else:
        s = (-a1) * pow(2, -1, p) % p
    a1, a2, a3, a4, a6 = _shear(a1, a2, a3, a4, a6, s)
    t = _quad_double_root(1, (a3 // p) % p, (-(a6 // p ** 2)) % p, p)
    a1, a2, a3, a4, a6 = _translate(a1, a2, a3, a4, a6, 0, t * p)
    assert a2 % p == 0 and a3 % p ** 2 == 0 and a4 % p ** 2 == 0 and a6 % p ** 3 == 0

    # step 6: P(T) = T^3 + a2,1 T^2 + a4,2 T + a6,3 mod p
    a21, a42, a63 = a2 // p, a4 // p ** 2, a6 // p ** 3
    if _cubic_is_squarefree(a21, a42, a63, p):
        return _finish(p, n_total, "I0*", n - 4)
    triple_root = _cubic_triple_root(a21, a42, a63, p)
    if triple_root is None:
        # double root: type I_nu*; translate the double root to 0 and loop
        r = _cubic_double_root(a21, a42, a63, p)
        a1, a2, a3, a4, a6 = _translate(a1, a2, a3, a4, a6, r * p, 0)
        nu = _type_Instar_nu(a1, a2, a3, a4, a6, p)
        return _finish(p, n_total, f"I{nu}*", n - 4 - nu)
    # triple root: translate it to 0
    a1, a2, a3, a4, a6 = _translate(a1, a2, a3, a4, a6, triple_root * p, 0)
    # step 8: Y^2 + a3,2 Y - a6,4 over F_p
    a32, a64 = a3 // p ** 2, a6 // p ** 4
    if _quadratic_sep_roots(1, a32, -a64, p):
        return _finish(p, n_total, "IV*", n - 6)
    t = _quad_double_root(1, a32 % p, (-a64) % p, p)
    a1, a2, a3, a4, a6 = _translate(a1, a2, a3, a4, a6, 0, t * p ** 2)
    if _pval(a4, p) < 4:
        return _finish(p, n_total, "III*", n - 7)
    if _pval(a6, p) < 6:
        return _finish(p, n_total, "II*", n - 8)
    # non-minimal model: divide out u = p and restart
    sub = tate_local(
        EllipticCurve(a1 // p, a2 // p ** 2, a3 // p ** 3, a4 // p ** 4, a6 // p ** 6),
        p,
    )
    return LocalReductionData(
        p, sub.reduction_type, sub.a_p, n_total, sub.conductor_exponent, sub.kodaira
    )


def _finish(p, ord_disc, kodaira, f):
    return LocalReductionData(p, ADDITIVE, 0, ord_disc, f, kodaira)


def _cubic_is_squarefree(c2, c1, c0, p):
    """Is T^3 + c2 T^2 + c1 T + c0 squarefree mod p (three distinct roots in
    the algebraic closure)?"""
    # squarefree iff gcd(P, P') = 1; compute the cubic discriminant mod p
    c2, c1, c0 = c2 % p, c1 % p, c0 % p
    d = (
        18 * c2 * c1 * c0
        - 4 * c2 ** 3 * c0
        + c2 * c2 * c1 * c1
        - 4 * c1 ** 3
        - 27 * c0 * c0
    ) % p
    if p in (2, 3):
        # discriminant test unreliable in small characteristic: check directly
        from .numeric import roots_mod_p

        rts = roots_mod_p((1, c2, c1, c0), p)
        if any(m > 1 for _, m in rts):
            return False
        # repeated factor may be an irreducible quadratic: P squarefree iff
        # gcd(P, P') nontrivial; P' = 3T^2 + 2 c2 T + c1
        return not _poly_common_factor([c0, c1, c2, 1], [c1, 2 * c2, 3], p)
    return d != 0


def _poly_common_factor(f, g, p):
    from .numeric import _poly_gcd

    gcd = _poly_gcd([x % p for x in f], [x % p for x in g], p)
    return len(gcd) > 1


def _cubic_triple_root(c2, c1, c0, p):
    """The triple root of T^3 + c2 T^2 + c1 T + c0 mod p, or None."""
    from .numeric import roots_mod_p

    for (r, s), m in roots_mod_p((1, c2, c1, c0), p):
        if s == 1 and m == 3:
            return r
    return None


def _cubic_double_root(c2, c1, c0, p):
    from .numeric import roots_mod_p

    for (r, s), m in roots_mod_p((1, c2, c1, c0), p):
        if s == 1 and m == 2:
            return r
    raise AssertionError("expected a double root")


def _quadratic_sep_roots(a, b, c, p):
    """Does a Y^2 + b Y + c have two distinct roots in the closure of F_p?"""
    if p == 2:
        return b % 2 != 0  # separable iff the derivative b is nonzero
    return (b * b - 4 * a * c) % p != 0


def _quad_double_root(a, b, c, p):
    """Double root of a Y^2 + b Y + c mod p (assumed inseparable/repeated)."""
    if p == 2:
        # Y^2 + c with b even: root is sqrt(c) = c^(p^(k-1))... over F_2: c
        return c % 2
    return (-b) * pow(2 * a, -1, p) % p


def _type_Instar_nu(a1, a2, a3, a4, a6, p):
    """Subprocedure for I_nu*: alternating double-root chase in Y then X."""
    nu = 1
    while True:
        if nu % 2 == 1:
            # test Y^2 + a_{3,2+k} Y - a_{6,4+2k} with k = (nu-1)/2
            k = (nu - 1) // 2
            c1 = (a3 // p ** (2 + k)) % p
            c0 = (-(a6 // p ** (4 + 2 * k))) % p
            if _quadratic_sep_roots(1, c1, c0, p):
                return nu
            t = _quad_double_root(1, c1, c0, p)
            a1, a2, a3, a4, a6 = _translate(a1, a2, a3, a4, a6, 0, t * p ** (2 + k))
        else:
            # test a_{2,1} X^2 + a_{4,3+k} X + a_{6,5+2k} with k = nu/2 - 1
            k = nu // 2 - 1
            c2 = (a2 // p) % p
            c1 = (a4 // p ** (3 + k)) % p
            c0 = (a6 // p ** (5 + 2 * k)) % p
            if _quadratic_sep_roots(c2, c1, c0, p):
                return nu
            r = _quad_double_root(c2, c1, c0, p)
            a1, a2, a3, a4, a6 = _translate(a1, a2, a3, a4, a6, r * p ** (2 + k), 0)
        nu += 1


def two_division_cubic(curve: EllipticCurve):
    """
    The binary cubic (4, b2, 2*b4, b6): roots are x-coordinates of the
    2-torsion (as (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6).
    Raises if the cubic is reducible (rational 2-torsion present).
    """
    b2, b4, b6, _ = curve.b_invariants()
    coeffs = (4, b2, 2 * b4, b6)
    if _has_rational_root(coeffs):
        raise ValueError("curve has rational 2-torsion; cubic is reducible")
    return coeffs


def _has_rational_root(coeffs):
    """Rational-root test for an integer cubic c3 x^3 + ... + c0."""
    c3, c2, c1, c0 = coeffs
    if c0 == 0 or c3 == 0:
        return True
    # rational roots u of the form correspond to integer roots t = c3 u of
    # the monic transform T^3 + c2 T^2 + c1 c3 T + c0 c3^2
    m2, m1, m0 = c2, c1 * c3, c0 * c3 * c3
    import mpmath

    from .numeric import cubic_roots

    digits = max(len(str(abs(c))) for c in (m2, m1, m0))
    with mpmath.workdps(3 * digits + 30):
        real, _ = cubic_roots(1, m2, m1, m0)
        for r in real:
            t = int(mpmath.nint(r))
            for cand in (t - 1, t, t + 1):
                if ((cand + m2) * cand + m1) * cand + m0 == 0:
                    return True
    return False


def conductor(curve: EllipticCurve, bad_primes) -> int:
    """Product of p^(conductor exponent) over the supplied bad primes."""
    n = 1
    for p in bad_primes:
        n *= p ** tate_local(curve, p).conductor_exponent
    return n
