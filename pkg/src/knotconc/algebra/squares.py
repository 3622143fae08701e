"""
Certified square testing in Q(zeta_d).

A "yes" answer carries an explicit root that has been squared exactly.  A
"no" answer carries a split prime q = 1 (mod d) and a primitive d-th root of
unity g mod q such that the image of the input under zeta -> g is a
quadratic non-residue; since ring maps send squares to squares this is a
proof.  Anything else is reported as indeterminate.

Roots are found q-adically: at a prime q that is inert in Q(zeta_d) the
residue ring is a field, so the root is unique up to sign there; it is
computed by Tonelli-Shanks and Hensel-lifted until the symmetric residues
square to the input.
"""

import os
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Optional, Tuple

from .cyclotomic import CyclotomicElement, cyclotomic_field, euler_phi

DEFAULT_PRIME_BUDGET = 25
BUDGET_ENV = "KNOTCONC_PRIME_BUDGET"


def prime_budget():
    raw = os.environ.get(BUDGET_ENV)
    if raw:
        try:
            value = int(raw)
        except ValueError:
            raise ValueError("%s must be an integer, got %r" % (BUDGET_ENV, raw))
        if value < 1:
            raise ValueError("%s must be positive" % BUDGET_ENV)
        return value
    return DEFAULT_PRIME_BUDGET


@dataclass(frozen=True)
class SquareCertificate:
    verdict: str                              # "yes" | "no" | "indeterminate"
    root: Optional[CyclotomicElement] = None
    witness: Optional[Tuple[int, int]] = None  # (prime q, image g of zeta)

    def to_json(self):
        out = {"verdict": self.verdict}
        if self.root is not None:
            out["root"] = [str(c) for c in self.root.coeffs]
        if self.witness is not None:
            out["witness"] = {"prime": self.witness[0], "zeta_image": self.witness[1]}
        return out


def is_prime(n):
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for p in small:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def split_primes(d, start=3):
    """Odd primes q = 1 (mod d), increasing."""
    q = max(start, 3)
    step = d if d % 2 == 0 else 2 * d
    if d <= 2:
        step = 2
        q |= 1
    else:
        q = q + ((1 - q) % step)
    while True:
        if is_prime(q):
            yield q
        q += step


def _prime_factors(n):
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def primitive_roots_of_unity(d, q):
    """All elements of exact order d in F_q^* (q = 1 mod d), sorted."""
    if (q - 1) % d:
        raise ValueError("%d does not split in Q(zeta_%d)" % (q, d))
    ps = _prime_factors(d)
    for h in range(2, q):
        g = pow(h, (q - 1) // d, q)
        if all(pow(g, d // p, q) != 1 for p in ps):
            break
    else:
        g = 1  # d == 1
    return sorted({pow(g, j, q) for j in range(1, d + 1) if gcd(j, d) == 1})


def is_quadratic_residue(v, q):
    v %= q
    return v == 0 or pow(v, (q - 1) // 2, q) == 1


def verify_witness(x, q, g):
    """Independent re-check of a non-residue witness (Horner on the coefficients)."""
    if not is_prime(q) or (q - 1) % x.d or pow(g, x.d, q) != 1:
        return False
    v = x.reduce_mod(q, g)
    if v is None or v == 0:
        return False
    return pow(v, (q - 1) // 2, q) == q - 1


def find_witnesses(x, budget=None, start=3):
    """Yield ``(q, g)`` non-residue witnesses among the first ``budget`` split primes."""
    budget = prime_budget() if budget is None else budget
    d = x.d
    primes = split_primes(d, start)
    for _ in range(budget):
        q = next(primes)
        for g in primitive_roots_of_unity(d, q) if d > 2 else [(-1) % q if d == 2 else 1]:
            v = x.reduce_mod(q, g)
            if v is None or v == 0:
                continue
            if pow(v, (q - 1) // 2, q) == q - 1:
                yield q, g
                break


# -- root reconstruction --------------------------------------------------


def _multiplicative_order(a, d):
    if gcd(a, d) != 1:
        return None
    k, x = 1, a % d
    while x != 1 % d:
        x = x * a % d
        k += 1
    return k


def _inert_primes(d):
    phi = euler_phi(d)
    q = 3
    while True:
        if is_prime(q) and d % q and _multiplicative_order(q, d) == phi:
            yield q
        q += 2


class _ResidueRing:
    """Z[x]/(q^k, Phi_d) with coefficient vectors of length phi(d)."""

    def __init__(self, d, modulus):
        self.field = cyclotomic_field(d)
        self.m = modulus
        self.phi = self.field.degree

    def red(self, v):
        m = self.m
        return tuple(c % m for c in self.field.reduce_ints(v))

    def mul(self, a, b):
        raw = [0] * (2 * self.phi - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        raw[i + j] += x * y
        return self.red(raw)

    def sub(self, a, b):
        return tuple((x - y) % self.m for x, y in zip(a, b))

    def scale(self, a, c):
        return tuple(x * c % self.m for x in a)

    def one(self):
        return (1,) + (0,) * (self.phi - 1)

    def pow(self, a, e):
        out, base = self.one(), a
        while e:
            if e & 1:
                out = self.mul(out, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return out


def _sqrt_in_finite_field(R, a, q):
    """Tonelli-Shanks in F_{q^phi}; returns None if ``a`` is a non-square."""
    order = q ** R.phi
    one = R.one()
    if R.pow(a, (order - 1) // 2) != one:
        return None
    s, m = 0, order - 1
    while m % 2 == 0:
        m //= 2
        s += 1
    # deterministic search for a non-residue
    z = None
    for c0 in range(2, 10 * q):
        cand = tuple(((c0 // q ** i) % q) for i in range(R.phi))
        cand = R.red(cand)
        if any(cand) and R.pow(cand, (order - 1) // 2) != one:
            z = cand
            break
    if z is None:
        return None
    c = R.pow(z, m)
    x = R.pow(a, (m + 1) // 2)
    b = R.pow(a, m)
    while b != one:
        i, bb = 0, b
        while bb != one:
            bb = R.mul(bb, bb)
            i += 1
        for _ in range(s - i - 1):
            c = R.mul(c, c)
        x = R.mul(x, c)
        c = R.mul(c, c)
        b = R.mul(b, c)
        s = i
    return x


def _sym(v, m):
    h = m // 2
    return tuple(c - m if c > h else c for c in v)


def _square_root_integral(A, d, max_bits):
    """Root of the integral element with numerators ``A`` in Z[zeta_d], or None."""
    field = cyclotomic_field(d)
    target = CyclotomicElement._make(field, tuple(A), 1)
    for q in _inert_primes(d):
        if all(c % q == 0 for c in A):
            continue
        R = _ResidueRing(d, q)
        r = _sqrt_in_finite_field(R, R.red(A), q)
        if r is None:
            return None  # non-square mod an inert prime: not a square
        w = R.pow(R.scale(r, 2), q ** R.phi - 2)
        P = q
        while True:
            cand = CyclotomicElement._make(field, _sym(r, P), 1)
            if cand * cand == target:
                return cand
            if P.bit_length() > max_bits:
                return None
            P2 = P * P
            R = _ResidueRing(d, P2)
            err = R.sub(R.mul(r, r), R.red(A))
            r = R.sub(r, R.mul(err, w))
            w = R.mul(w, R.sub(R.scale(R.one(), 2), R.mul(R.scale(r, 2), w)))
            P = P2


def is_square_cyclotomic(x, budget=None):
    """Decide whether ``x`` is a square in its cyclotomic field, with a certificate."""
    if not x:
        return SquareCertificate("yes", root=x)
    d = x.d
    field = x.field
    if d <= 2:
        v = x.rational_value()
        if v > 0:
            n, m = isqrt(v.numerator), isqrt(v.denominator)
            if n * n == v.numerator and m * m == v.denominator:
                return SquareCertificate("yes", root=field(Fraction(n, m)))
    else:
        num, den = x.integer_numerators()
        A = [c * den for c in num]
        unit_group_cyclic = _unit_group_cyclic(d)
        if unit_group_cyclic:
            max_bits = 4 * max(abs(c) for c in A).bit_length() + 8 * euler_phi(d) + 64
            root = _square_root_integral(A, d, max_bits)
            if root is not None:
                root = root / den
                assert root * root == x
                return SquareCertificate("yes", root=root)
    for q, g in find_witnesses(x, budget):
        return SquareCertificate("no", witness=(q, g))
    return SquareCertificate("indeterminate")


def _unit_group_cyclic(d):
    # (Z/d)^* is cyclic for d = 1, 2, 4, p^k, 2p^k
    if d in (1, 2, 4):
        return True
    n = d // 2 if d % 2 == 0 else d
    if n % 2 == 0:
        return False
    ps = _prime_factors(n)
    return len(ps) == 1
