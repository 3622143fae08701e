"""
Laurent polynomials in one variable ``t`` over Q or Q(zeta_d).
"""

from fractions import Fraction

from . import polytools
from .cyclotomic import CyclotomicElement, CyclotomicField, cyclotomic_field
from .polytools import NotDivisibleError


class RationalField:
    """The rationals, with the same small interface as CyclotomicField."""

    d = 1
    degree = 1

    def __call__(self, value):
        if isinstance(value, CyclotomicElement):
            return value.rational_value()
        return Fraction(value)

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def __repr__(self):
        return "QQ"

    def __reduce__(self):
        return (_qq, ())


QQ = RationalField()


def _qq():
    return QQ


def _field_of(c):
    if isinstance(c, CyclotomicElement):
        return c.field
    return QQ


class LaurentPolynomial:
    """
    Immutable finitely supported map exponent -> nonzero coefficient.

    ``field`` is ``QQ`` or a :class:`CyclotomicField`; all coefficients
    live in it.
    """

    __slots__ = ("field", "terms", "_hash")

    def __init__(self, terms=None, field=None):
        terms = dict(terms or {})
        if field is None:
            field = QQ
            for c in terms.values():
                if isinstance(c, CyclotomicElement):
                    field = c.field
                    break
        self.field = field
        self.terms = {e: field(c) for e, c in terms.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms, field):
        self = object.__new__(cls)
        self.field = field
        self.terms = terms
        self._hash = None
        return self

    @classmethod
    def from_coeffs(cls, coeffs, low=0, field=None):
        """Polynomial ``sum coeffs[i] * t^(low + i)``."""
        return cls({low + i: c for i, c in enumerate(coeffs)}, field)

    @classmethod
    def monomial(cls, coeff, exp, field=None):
        return cls({exp: coeff}, field)

    @classmethod
    def constant(cls, c, field=None):
        return cls({0: c}, field)

    @classmethod
    def t(cls, field=QQ):
        return cls({1: field.one()}, field)

    def __reduce__(self):
        return (LaurentPolynomial, (self.terms, self.field))

    # -- basic queries ---------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def min_exp(self):
        return min(self.terms)

    def max_exp(self):
        return max(self.terms)

    def span(self):
        """max exponent minus min exponent."""
        return self.max_exp() - self.min_exp() if self.terms else -1

    def coeff(self, e):
        return self.terms.get(e, self.field.zero())

    def to_dense(self):
        """``(coeffs, low)`` with dense coefficient list starting at ``t^low``."""
        if not self.terms:
            return [], 0
        lo, hi = self.min_exp(), self.max_exp()
        zero = self.field.zero()
        return [self.terms.get(e, zero) for e in range(lo, hi + 1)], lo

    def is_monomial(self):
        return len(self.terms) == 1

    def __eq__(self, other):
        if isinstance(other, LaurentPolynomial):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction, CyclotomicElement)):
            return self.terms == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, LaurentPolynomial):
            if other.field is self.field:
                return other
            if other.field is QQ:
                return LaurentPolynomial(other.terms, self.field)
            if self.field is QQ:
                return None
            raise ValueError("mixing coefficient fields %r and %r" % (self.field, other.field))
        if isinstance(other, (int, Fraction, CyclotomicElement)):
            return LaurentPolynomial({0: other}, self.field if not isinstance(
                other, CyclotomicElement) else other.field)
        return None

    def _promote(self, other):
        # returns (a, b) over a common field
        o = self._coerce(other)
        if o is None:
            if isinstance(other, LaurentPolynomial):
                return LaurentPolynomial(self.terms, other.field), other
            raise TypeError("cannot combine LaurentPolynomial with %r" % type(other))
        if o.field is not self.field:
            return LaurentPolynomial(self.terms, o.field), o
        return self, o

    def __add__(self, other):
        try:
            a, b = self._promote(other)
        except TypeError:
            return NotImplemented
        terms = dict(a.terms)
        for e, c in b.terms.items():
            s = terms.get(e)
            s = c if s is None else s + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return LaurentPolynomial._raw(terms, a.field)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial._raw({e: -c for e, c in self.terms.items()}, self.field)

    def __sub__(self, other):
        try:
            a, b = self._promote(other)
        except TypeError:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) or (
                isinstance(other, CyclotomicElement) and other.field is self.field):
            if not other:
                return LaurentPolynomial._raw({}, self.field)
            return LaurentPolynomial._raw(
                {e: c * other for e, c in self.terms.items()}, self.field)
        try:
            a, b = self._promote(other)
        except TypeError:
            return NotImplemented
        terms = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = e1 + e2
                s = terms.get(e)
                terms[e] = c1 * c2 if s is None else s + c1 * c2
        return LaurentPolynomial._raw({e: c for e, c in terms.items() if c}, a.field)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if not self.is_monomial():
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self.terms.items()
            return LaurentPolynomial._raw({e * n: (1 / c) ** (-n)}, self.field)
        out = LaurentPolynomial._raw({0: self.field.one()}, self.field)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def shift(self, k):
        """Multiply by ``t^k``."""
        return LaurentPolynomial._raw({e + k: c for e, c in self.terms.items()}, self.field)

    def map_coeffs(self, fn, field=None):
        return LaurentPolynomial({e: fn(c) for e, c in self.terms.items()}, field or self.field)

    def galois(self, s):
        if self.field is QQ:
            return self
        return LaurentPolynomial._raw({e: c.galois(s) for e, c in self.terms.items()}, self.field)

    def conjugate(self):
        return self.galois(-1)

    def substitute_inverse(self):
        """``p(t^-1)``."""
        return LaurentPolynomial._raw({-e: c for e, c in self.terms.items()}, self.field)

    def conjugate_reverse(self):
        """``conj(p)(t^-1)``: the involution used in norm factorisations."""
        return self.conjugate().substitute_inverse()

    def __call__(self, x):
        """Evaluate at a field element (negative exponents use its inverse)."""
        if not self.terms:
            return self.field.zero()
        lo = self.min_exp()
        coeffs, _ = self.to_dense()
        acc = polytools.evaluate(coeffs, x)
        if lo:
            acc = acc * (x ** lo)
        return acc

    def derivative(self):
        return LaurentPolynomial._raw(
            {e - 1: c * e for e, c in self.terms.items() if e}, self.field)

    # -- division & normal form ----------------------------------------
    def exact_div(self, other):
        return laurent_exact_div(self, other)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, CyclotomicElement)):
            return self * (1 / other if not isinstance(other, int) else Fraction(1, other))
        if isinstance(other, LaurentPolynomial):
            return laurent_exact_div(self, other)
        return NotImplemented

    def normalize(self):
        return laurent_normalize(self)

    def canonical(self):
        return laurent_normalize(self)[0]

    def unit_equivalent(self, other):
        return self.canonical() == other.canonical()

    # -- printing --------------------------------------------------------
    def __repr__(self):
        return "LaurentPolynomial(%s)" % self.to_str()

    def to_str(self, var="t", prime_basis=False):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            if isinstance(c, CyclotomicElement):
                cs = c.to_str(prime_basis=prime_basis)
                if c.is_rational():
                    cs = str(c.rational_value())
                elif len(cs.split()) > 1:
                    cs = "(" + cs + ")"
            else:
                cs = str(c)
            if e == 0:
                parts.append(cs)
                continue
            mono = var if e == 1 else "%s^%d" % (var, e)
            if cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append("%s*%s" % (cs, mono))
        return " + ".join(parts).replace("+ -", "- ")

    __str__ = to_str


def laurent_normalize(p):
    """
    Split ``p`` into ``(canonical, (scalar, k))`` with ``p == scalar * t^k *
    canonical`` where canonical has lowest exponent 0 and constant term 1.
    """
    if not p.terms:
        raise ValueError("the zero polynomial has no canonical unit form")
    lo = p.min_exp()
    c0 = p.terms[lo]
    inv = 1 / c0
    canon = LaurentPolynomial._raw({e - lo: c * inv for e, c in p.terms.items()}, p.field)
    return canon, (c0, lo)


def laurent_exact_div(p, q):
    """``r`` with ``q * r == p``; raises NotDivisibleError otherwise."""
    if not q.terms:
        raise ZeroDivisionError("Laurent division by zero")
    p, q = p._promote(q)
    if not p.terms:
        return LaurentPolynomial._raw({}, p.field)
    pc, plo = p.to_dense()
    qc, qlo = q.to_dense()
    quot, rem = polytools.divmod_poly(pc, qc)
    if rem:
        raise NotDivisibleError("%s is not divisible by %s" % (p, q))
    return LaurentPolynomial.from_coeffs(quot, plo - qlo, p.field)


def field_for(d):
    """Coefficient field Q(zeta_d), with Q itself for d == 1."""
    return QQ if d == 1 else cyclotomic_field(d)


__all__ = ["LaurentPolynomial", "QQ", "RationalField", "laurent_normalize",
           "laurent_exact_div", "NotDivisibleError", "CyclotomicField"]
