"""
Exact arithmetic in cyclotomic fields Q(zeta_d).

Elements are stored in the power basis 1, zeta, ..., zeta^(phi(d)-1) modulo
the d-th cyclotomic polynomial, as a tuple of integer numerators over one
positive common denominator.  Keeping the numerators integral makes products
cheap (integer convolution plus reduction by a monic integer polynomial).
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd

from . import polytools


def _int_poly_divexact(p, q):
    # integer polynomial division by a monic divisor
    p = list(p)
    dq = len(q) - 1
    out = [0] * (len(p) - dq)
    for i in range(len(p) - 1, dq - 1, -1):
        c = p[i]
        if c:
            out[i - dq] = c
            for j in range(dq + 1):
                p[i - dq + j] -= c * q[j]
    assert not any(p[:dq]), "cyclotomic division was not exact"
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(d):
    """Integer coefficients (lowest first) of Phi_d, by dividing x^d - 1."""
    if d < 1:
        raise ValueError("cyclotomic modulus must be positive, got %r" % (d,))
    p = [-1] + [0] * (d - 1) + [1]
    for e in range(1, d):
        if d % e == 0:
            p = _int_poly_divexact(p, cyclotomic_polynomial(e))
    return tuple(p)


def euler_phi(d):
    return len(cyclotomic_polynomial(d)) - 1


def _normalize(num, den):
    g = den
    for c in num:
        if c:
            g = gcd(g, c)
            if g == 1:
                break
    if den < 0:
        g = -g
    if g != 1:
        num = tuple(c // g for c in num)
        den //= g
    if not any(num):
        den = 1
    return num, den


class CyclotomicField:
    """Q(zeta_d).  Use :func:`cyclotomic_field` to get the shared instance."""

    def __init__(self, d):
        if d < 1:
            raise ValueError("cyclotomic modulus must be positive, got %r" % (d,))
        self.d = d
        self.modulus = cyclotomic_polynomial(d)
        self.degree = len(self.modulus) - 1
        self._zero_num = (0,) * self.degree

    def __repr__(self):
        return "CyclotomicField(%d)" % self.d

    def __reduce__(self):
        return (cyclotomic_field, (self.d,))

    def reduce_ints(self, raw):
        """Reduce an integer vector indexed by powers of zeta to length phi(d)."""
        d, phi = self.d, self.degree
        if len(raw) > d:
            folded = [0] * d
            for i, c in enumerate(raw):
                if c:
                    folded[i % d] += c
            raw = folded
        else:
            raw = list(raw)
        if len(raw) <= phi:
            return tuple(raw) + (0,) * (phi - len(raw))
        mod = self.modulus
        for i in range(len(raw) - 1, phi - 1, -1):
            c = raw[i]
            if c:
                base = i - phi
                for j in range(phi):
                    if mod[j]:
                        raw[base + j] -= c * mod[j]
        return tuple(raw[:phi])

    def element(self, coeffs):
        """Element from rational coefficients of 1, zeta, zeta^2, ... (any length)."""
        coeffs = [Fraction(c) for c in coeffs]
        den = 1
        for c in coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        nums = [int(c * den) for c in coeffs]
        return CyclotomicElement._make(self, self.reduce_ints(nums), den)

    def __call__(self, value):
        if isinstance(value, CyclotomicElement):
            if value.field is not self:
                raise ValueError("element of %r is not in %r" % (value.field, self))
            return value
        value = Fraction(value)
        num = (value.numerator,) + (0,) * (self.degree - 1)
        return CyclotomicElement._make(self, num, value.denominator)

    def zero(self):
        return CyclotomicElement._make(self, self._zero_num, 1)

    def one(self):
        return self(1)

    def zeta_power(self, e):
        e %= self.d
        raw = [0] * (e + 1)
        raw[e] = 1
        return CyclotomicElement._make(self, self.reduce_ints(raw), 1)

    def zeta(self):
        return self.zeta_power(1)

    def from_prime_basis(self, coeffs):
        """
        Element sum_{i=1}^{d-1} coeffs[i-1] * zeta^i.

        For prime d the powers zeta^1..zeta^(d-1) form a basis without the
        constant term, which is the layout used for reference values.
        """
        if len(coeffs) != self.d - 1:
            raise ValueError("need %d coefficients" % (self.d - 1))
        return self.element([0] + list(coeffs))


@lru_cache(maxsize=None)
def cyclotomic_field(d):
    return CyclotomicField(d)


class CyclotomicElement:
    """
    Immutable element of Q(zeta_d).

    Supports ``+ - * /`` with other elements of the same field and with
    ints / Fractions, plus ``**`` with integer exponents.
    """

    __slots__ = ("field", "_num", "_den", "_hash")

    def __init__(self, d, coeffs):
        other = cyclotomic_field(d).element(coeffs)
        self.field, self._num, self._den = other.field, other._num, other._den
        self._hash = None

    @classmethod
    def _make(cls, field, num, den):
        num, den = _normalize(num, den)
        self = object.__new__(cls)
        self.field = field
        self._num = num
        self._den = den
        self._hash = None
        return self

    @property
    def d(self):
        return self.field.d

    @property
    def coeffs(self):
        """Rational coefficients of 1, zeta, ..., zeta^(phi(d)-1)."""
        return tuple(Fraction(c, self._den) for c in self._num)

    def __reduce__(self):
        return (_rebuild, (self.field.d, self._num, self._den))

    # -- predicates ------------------------------------------------------
    def __bool__(self):
        return any(self._num)

    def is_rational(self):
        return not any(self._num[1:])

    def rational_value(self):
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self._num[0], self._den)

    def __eq__(self, other):
        if isinstance(other, CyclotomicElement):
            return (self.field is other.field and self._num == other._num
                    and self._den == other._den)
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self._num[0], self._den) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self._num[0], self._den))
            else:
                self._hash = hash((self.field.d, self._num, self._den))
        return self._hash

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, CyclotomicElement):
            if other.field is not self.field:
                raise ValueError("mixing Q(zeta_%d) and Q(zeta_%d)"
                                 % (self.field.d, other.field.d))
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._den, other._den
        if a == b:
            num = tuple(x + y for x, y in zip(self._num, other._num))
            return CyclotomicElement._make(self.field, num, a)
        num = tuple(x * b + y * a for x, y in zip(self._num, other._num))
        return CyclotomicElement._make(self.field, num, a * b)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicElement._make(self.field, tuple(-x for x in self._num), self._den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return CyclotomicElement._make(
                self.field, tuple(x * other for x in self._num), self._den)
        if isinstance(other, Fraction):
            return CyclotomicElement._make(
                self.field, tuple(x * other.numerator for x in self._num),
                self._den * other.denominator)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._num, other._num
        raw = [0] * (2 * len(a) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        raw[i + j] += x * y
        return CyclotomicElement._make(
            self.field, self.field.reduce_ints(raw), self._den * other._den)

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(zeta_%d)" % self.field.d)
        if self.is_rational():
            return self.field(Fraction(self._den, self._num[0]))
        a = polytools.trim([Fraction(c) for c in self._num])
        mod = [Fraction(c) for c in self.field.modulus]
        g, s, _ = polytools.xgcd(a, mod)
        assert g == [1], "cyclotomic polynomial is irreducible"
        return self.field.element(s) * self._den

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result = self.field.one()
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- structure -------------------------------------------------------
    def galois(self, n):
        """Image under the automorphism zeta -> zeta^n (gcd(n, d) == 1)."""
        d = self.field.d
        if gcd(n, d) != 1:
            raise ValueError("Galois exponent %d is not coprime to %d" % (n, d))
        raw = [0] * d
        for i, c in enumerate(self._num):
            if c:
                raw[(i * n) % d] += c
        return CyclotomicElement._make(self.field, self.field.reduce_ints(raw), self._den)

    def conjugate(self):
        return self.galois(-1)

    def root_of_unity_exponent(self):
        """Return ``e`` with ``self == zeta^e``, or ``None``."""
        nonzero = [i for i, c in enumerate(self._num) if c]
        if len(nonzero) == 1 and self._num[nonzero[0]] == self._den:
            return nonzero[0]
        for e in range(self.field.degree, self.field.d):
            if self == self.field.zeta_power(e):
                return e
        return None

    def reduce_mod(self, q, g):
        """
        Image in F_q under zeta -> g, or ``None`` when q divides the
        denominator (bad reduction).
        """
        if self._den % q == 0:
            return None
        acc = 0
        for c in reversed(self._num):
            acc = (acc * g + c) % q
        return acc * pow(self._den, -1, q) % q

    def prime_basis_coeffs(self):
        """Coefficients of zeta^1..zeta^(d-1); defined for prime d."""
        d = self.field.d
        if euler_phi(d) != d - 1:
            raise ValueError("the constant-free basis needs a prime modulus")
        c = self.coeffs
        c0 = c[0]
        out = [ci - c0 for ci in c[1:]]
        out.append(-c0)
        return out

    def integer_numerators(self):
        """``(numerators, denominator)`` of the power-basis coefficients."""
        return self._num, self._den

    # -- printing --------------------------------------------------------
    def __repr__(self):
        return "CyclotomicElement(%d, %s)" % (self.field.d, self.to_str())

    def to_str(self, prime_basis=False, var="z"):
        if prime_basis and euler_phi(self.field.d) == self.field.d - 1 and self.field.d > 2:
            pairs = [(i + 1, c) for i, c in enumerate(self.prime_basis_coeffs())]
        else:
            pairs = list(enumerate(self.coeffs))
        terms = []
        for i, c in reversed(pairs):
            if not c:
                continue
            mono = "" if i == 0 else (var if i == 1 else "%s^%d" % (var, i))
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append("%s*%s" % (c, mono))
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")

    __str__ = to_str


def _rebuild(d, num, den):
    return CyclotomicElement._make(cyclotomic_field(d), num, den)


def cyclo_reduce(raw_coeffs, d):
    """Canonical element of Q(zeta_d) from coefficients of 1, zeta, ..., zeta^(d-1)."""
    if not isinstance(d, int) or d < 1:
        raise ValueError("cyclotomic modulus must be a positive integer, got %r" % (d,))
    return cyclotomic_field(d).element(raw_coeffs)


def cyclo_galois(x, n):
    return x.galois(n)
