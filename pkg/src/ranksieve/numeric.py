"""
Integer and high-precision building blocks: primality and prime iteration,
roots of cubics modulo p, quadratic characters, and the special functions
(dilogarithm, Dickman rho) used by the planner and the analytic bound.

All integer arithmetic uses Python ints.  High-precision reals are mpmath
mpf values; the working precision defaults to 50 decimal digits and can be
changed with the `precision` context manager.
"""

from __future__ import annotations

import math
from contextlib import contextmanager

import mpmath
import numpy as np

DEFAULT_DPS = 50
mpmath.mp.dps = DEFAULT_DPS

# Deterministic Miller-Rabin witnesses for n < 3.3e24 (covers 64-bit and then some)
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_ROUNDS_LARGE = 64


@contextmanager
def precision(dps):
    """Temporarily set the mpmath working precision (decimal digits)."""
    with mpmath.workdps(dps):
        yield


def is_prime(n: int) -> bool:
    """Deterministic for n < 3.3e24, Miller-Rabin with 64 rounds above."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1

    def witness(a):
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            return False
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                return False
        return True

    if n < 3317044064679887385961981:
        return not any(witness(a) for a in _MR_WITNESSES if a % n)
    # probabilistic fallback for very large inputs
    import random

    rng = random.Random(n & 0xFFFFFFFF)
    return not any(witness(rng.randrange(2, n - 1)) for _ in range(_MR_ROUNDS_LARGE))


def primes_below(bound: int) -> list[int]:
    """All primes p < bound, by sieve of Eratosthenes."""
    if bound <= 2:
        return []
    sieve = np.ones(bound, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(bound**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return [int(p) for p in np.nonzero(sieve)[0]]


def _poly_mulmod(f, g, mod, p):
    """Multiply f*g in F_p[x] reduced mod the monic cubic `mod`."""
    out = [0] * (len(f) + len(g) - 1)
    for i, fi in enumerate(f):
        if fi:
            for j, gj in enumerate(g):
                out[i + j] = (out[i + j] + fi * gj) % p
    # reduce degree >= 3 using x^3 = -(m2 x^2 + m1 x + m0)
    m0, m1, m2 = mod
    for k in range(len(out) - 1, 2, -1):
        c = out[k]
        if c:
            out[k] = 0
            out[k - 1] = (out[k - 1] - c * m2) % p
            out[k - 2] = (out[k - 2] - c * m1) % p
            out[k - 3] = (out[k - 3] - c * m0) % p
    while len(out) > 3:
        out.pop()
    while len(out) < 3:
        out.append(0)
    return out


def _poly_powmod(base, e, mod, p):
    """Compute base^e in F_p[x]/(monic cubic mod); base has degree <= 2."""
    result = [1, 0, 0]
    base = list(base)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        e >>= 1
        base = _poly_mulmod(base, base, mod, p)
    return result


def _poly_gcd(f, g, p):
    """gcd in F_p[x]; inputs are coefficient lists (ascending), output monic."""
    f = list(f)
    g = list(g)

    def deg(h):
        d = len(h) - 1
        while d >= 0 and h[d] % p == 0:
            d -= 1
        return d

    while True:
        df, dg = deg(f), deg(g)
        if dg < 0:
            break
        if df < dg:
            f, g = g, f
            continue
        # f -= lead(f)/lead(g) * x^(df-dg) * g
        c = f[df] * pow(g[dg], -1, p) % p
        shift = df - dg
        for i in range(dg + 1):
            f[i + shift] = (f[i + shift] - c * g[i]) % p
        if deg(f) < deg(g):
            f, g = g, f
    d = deg(f)
    if d < 0:
        return [0]
    inv = pow(f[d], -1, p)
    return [c * inv % p for c in f[: d + 1]]


def _sqrt_mod(a, p):
    """Square root mod odd prime p via Tonelli-Shanks; None if non-residue."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks
    q = p - 1
    s = 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        t2 = t
        i = 0
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def _roots_of_low_degree(coeffs, p):
    """Roots in F_p of a polynomial of degree <= 2 (ascending coeffs)."""
    c = [x % p for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    if len(c) <= 1:
        return []
    if len(c) == 2:
        return [(-c[0]) * pow(c[1], -1, p) % p]
    # quadratic
    a, b, cc = c[2], c[1], c[0]
    if p == 2:
        return [r for r in (0, 1) if (a * r * r + b * r + cc) % 2 == 0]
    disc = (b * b - 4 * a * cc) % p
    s = _sqrt_mod(disc, p)
    if s is None:
        return []
    inv2a = pow(2 * a, -1, p)
    roots = {(-b + s) * inv2a % p, (-b - s) * inv2a % p}
    return sorted(roots)


_ENUM_CUTOFF = 10**4


def _affine_roots(c3, c2, c1, c0, p):
    """Distinct roots r of c3 r^3 + c2 r^2 + c1 r + c0 = 0 in F_p."""
    c3 %= p
    if c3 == 0:
        return _roots_of_low_degree([c0, c1, c2], p)
    if p < _ENUM_CUTOFF:
        r = np.arange(p, dtype=np.int64)
        vals = ((c3 * r + c2) % p * r + c1) % p
        vals = (vals * r + c0) % p
        return [int(x) for x in np.nonzero(vals == 0)[0]]
    # gcd(x^p - x, f) splits off the roots
    inv = pow(c3, -1, p)
    mod = (c0 * inv % p, c1 * inv % p, c2 * inv % p)
    xp = _poly_powmod([0, 1, 0], p, mod, p)
    xp[1] = (xp[1] - 1) % p
    f = [mod[0], mod[1], mod[2], 1]
    g = _poly_gcd(f, xp, p)
    deg = len(g) - 1
    if deg <= 0:
        return []
    if deg <= 2:
        return _roots_of_low_degree(g, p)
    # completely split: (x+c)^((p-1)/2) - 1 shares a proper factor with g
    # for about 3/4 of all shifts c
    gmod = (g[0], g[1], g[2])
    for c in range(p):
        h = _poly_powmod([c, 1, 0], (p - 1) // 2, gmod, p)
        h[0] = (h[0] - 1) % p
        d = _poly_gcd(g, h, p)
        if len(d) == 2:
            r1 = _roots_of_low_degree(d, p)[0]
            rem = _deflate_cubic(c3, c2, c1, c0, r1, p)
            return sorted({r1, *rem})
        if len(d) == 3:
            r1, r2 = _roots_of_low_degree(d, p)
            rem = _deflate_cubic(c3, c2, c1, c0, r1, p)
            return sorted({r1, r2, *rem})
    raise AssertionError(f"splitting failed mod {p}")


def _deflate_cubic(c3, c2, c1, c0, r, p):
    """Roots of the quadratic cofactor of (x - r) in the cubic mod p."""
    # synthetic division: c3 x^3 + ... = (x - r)(c3 x^2 + e1 x + e0)
    e1 = (c2 + c3 * r) % p
    e0 = (c1 + e1 * r) % p
    return _roots_of_low_degree([e0, e1, c3], p)


def roots_mod_p(form_coeffs, p: int):
    """
    Projective roots (r, s) of a binary cubic modulo p, with multiplicity.

    `form_coeffs` is (c3, c2, c1, c0) for F(X, Y) = c3 X^3 + c2 X^2 Y
    + c1 X Y^2 + c0 Y^3.  Affine roots come back as (r, 1) with r in
    [0, p); the point at infinity as (1, 0), present when p | c3.
    Returns a list of ((r, s), multiplicity) sorted by root.

    >>> roots_mod_p((1, 0, -1, -1), 2)
    []
    >>> roots_mod_p((1, 0, -1, -1), 23)
    [((3, 1), 1), ((10, 1), 2)]
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    c3, c2, c1, c0 = (c % p for c in form_coeffs)
    if c3 == 0 and c2 == 0 and c1 == 0 and c0 == 0:
        raise ValueError(f"form vanishes identically mod {p}")
    out = []
    for r in _affine_roots(c3, c2, c1, c0, p):
        out.append(((r, 1), _affine_multiplicity(c3, c2, c1, c0, r, p)))
    if c3 == 0:
        # multiplicity of (1:0) = number of leading coefficients divisible by p
        m = 1
        if c2 == 0:
            m = 2
            if c1 == 0:
                m = 3
        out.append(((1, 0), m))
    out.sort(key=lambda t: (t[0][1] == 0, t[0][0]))
    return out


def _affine_multiplicity(c3, c2, c1, c0, r, p):
    # repeated synthetic division by (x - r); robust at p = 2 and 3
    coeffs = [c3 % p, c2 % p, c1 % p, c0 % p]
    mult = 0
    while True:
        acc = 0
        out = []
        for c in coeffs:
            acc = (acc * r + c) % p
            out.append(acc)
        if out[-1] != 0:
            return mult
        mult += 1
        coeffs = out[:-1]
        if not coeffs:
            return mult


def legendre_additive(x: int, p: int) -> int:
    """
    Additive Legendre character: 0 if x is a square mod p, 1 otherwise.

    >>> legendre_additive(2, 7)
    0
    >>> legendre_additive(3, 7)
    1
    """
    if p == 2 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    if x % p == 0:
        raise ValueError(f"character undefined: {p} divides {x}")
    return 0 if pow(x, (p - 1) // 2, p) == 1 else 1


def dilog(x):
    """
    The dilogarithm sum_{n>=1} x^n / n^2 for 0 <= x <= 1.

    >>> abs(dilog(1) - mpmath.pi**2 / 6) < 1e-30
    True
    """
    x = mpmath.mpf(x)
    if x < 0 or x > 1:
        raise ValueError("dilog argument must lie in [0, 1]")
    return mpmath.polylog(2, x)


def _real_cbrt(x):
    if x >= 0:
        return mpmath.root(x, 3)
    return -mpmath.root(-x, 3)


def cubic_roots(a, b, c, d):
    """
    The three roots of a x^3 + b x^2 + c x + d (a != 0) at the current
    mpmath precision, via the trigonometric/Cardano closed forms.  Returns
    (real_roots, complex_roots) with complex roots in conjugate pairs.
    """
    a, b, c, d = (mpmath.mpf(v) for v in (a, b, c, d))
    shift = -b / (3 * a)
    p = (3 * a * c - b * b) / (3 * a * a)
    q = (2 * b ** 3 - 9 * a * b * c + 27 * a * a * d) / (27 * a ** 3)
    if p == 0 and q == 0:
        return [shift, shift, shift], []
    disc = -4 * p ** 3 - 27 * q * q
    if disc > 0:
        # three distinct real roots; p < 0 here
        m = 2 * mpmath.sqrt(-p / 3)
        theta = mpmath.acos(3 * q / (p * m))
        reals = [m * mpmath.cos((theta - 2 * mpmath.pi * k) / 3) + shift for k in range(3)]
        return sorted(reals), []
    s = mpmath.sqrt(q * q / 4 + p ** 3 / 27)
    u = _real_cbrt(-q / 2 + s)
    v = _real_cbrt(-q / 2 - s)
    real = u + v + shift
    if disc == 0:
        return sorted([real, -(u + v) / 2 + shift, -(u + v) / 2 + shift]), []
    re = -(u + v) / 2 + shift
    im = (u - v) * mpmath.sqrt(3) / 2
    return [real], [mpmath.mpc(re, im), mpmath.mpc(re, -im)]


class _DickmanTable:
    """Piecewise power series for rho on [k, k+1], expanded at midpoints."""

    def __init__(self, nterms=80):
        self.nterms = nterms
        self.pieces = []  # pieces[k] = coeffs of rho(k+1/2+tau) in tau

    def _extend(self, upto):
        with precision(40):
            if not self.pieces:
                coeffs = [mpmath.mpf(1)] + [mpmath.mpf(0)] * (self.nterms - 1)
                self.pieces.append(coeffs)
            while len(self.pieces) < upto:
                k = len(self.pieces)
                b = self.pieces[k - 1]
                a = [mpmath.mpf(0)] * self.nterms
                centre = mpmath.mpf(k) + mpmath.mpf(1) / 2
                # (k + 1/2 + tau) rho' = -rho(u-1): a_{i+1} = -(b_i + i a_i)/(centre (i+1))
                for i in range(self.nterms - 1):
                    a[i + 1] = -(b[i] + i * a[i]) / (centre * (i + 1))
                # continuity at u = k: rho(k) from both sides
                half = mpmath.mpf(1) / 2
                a[0] = _eval_series(b, half) - _eval_series(a, -half)
                self.pieces.append(a)

    def eval(self, u):
        # piece k covers [k, k+1]; evaluate u in (k, k+1] on piece k
        k = int(mpmath.ceil(u)) - 1
        self._extend(k + 1)
        with precision(40):
            tau = mpmath.mpf(u) - k - mpmath.mpf(1) / 2
            return _eval_series(self.pieces[k], tau)


def _eval_series(coeffs, tau):
    acc = mpmath.mpf(0)
    for c in reversed(coeffs):
        acc = acc * tau + c
    return acc


_dickman_table = _DickmanTable()


def dickman_rho(u):
    """
    Dickman's rho function; rho(u) = 1 on [0, 1], delay DE above.

    >>> dickman_rho(1)
    mpf('1.0')
    >>> abs(dickman_rho(2) - (1 - mpmath.log(2))) < 1e-12
    True
    """
    u = mpmath.mpf(u)
    if u < 0:
        raise ValueError("dickman_rho needs u >= 0")
    if u <= 1:
        return mpmath.mpf(1)
    return _dickman_table.eval(u)
