"""
Twisted Alexander polynomials of knots twisted by characters of the
homology of a branched cyclic cover, following the Kirk-Livingston
construction through a Reidemeister-Schreier presentation of the cover.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from .algebra.cyclotomic import cyclotomic_field
from .algebra.laurent import QQ, LaurentPolynomial, field_for
from .algebra.matrices import det_laurent
from .groups import evaluate_group_ring, fox_jacobian, fox_matrix_at
from .knots import Character, presentation_homology


@dataclass(frozen=True)
class TwistedPolynomial:
    """
    A twisted Alexander polynomial, stored in canonical unit form (lowest
    exponent 0, constant term 1) over Q(zeta_d).
    """
    value: LaurentPolynomial
    d: int
    n: int
    character: Optional[Character] = None
    deleted_column: Optional[int] = None

    def __post_init__(self):
        if not self.value:
            raise ValueError("a twisted polynomial is never zero")

    @property
    def trivial(self):
        return self.character is None or self.character.is_trivial()

    def t_minus_one_power(self):
        """Multiplicity of t = 1 as a root."""
        p, s = self.value, 0
        one = LaurentPolynomial.constant(1, p.field)
        t1 = LaurentPolynomial.t(p.field) - one
        while p and not p(p.field.one()):
            p = p.exact_div(t1)
            s += 1
        return s

    def strip_t_minus_one(self, s=None):
        """The polynomial with (t - 1)^s removed (default: all of it), canonical."""
        s = self.t_minus_one_power() if s is None else s
        p = self.value
        t1 = LaurentPolynomial.t(p.field) - LaurentPolynomial.constant(1, p.field)
        for _ in range(s):
            p = p.exact_div(t1)
        return p.canonical()

    def same_up_to_units(self, other):
        return self.value.canonical() == other.value.canonical()

    def to_str(self, prime_basis=True):
        return self.value.to_str(prime_basis=prime_basis)

    def to_json(self):
        out = {"n": self.n, "d": self.d, "value": serialize_poly(self.value)}
        if self.character is not None:
            out["character"] = self.character.to_json()
        if self.deleted_column is not None:
            out["deleted_column"] = self.deleted_column
        return out


def serialize_poly(p):
    """``{"d": d, "terms": {exp: [coeff strings in the power basis]}}``."""
    d = getattr(p.field, "d", 1)
    terms = {}
    for e, c in sorted(p.terms.items()):
        if d == 1:
            terms[str(e)] = [str(c)]
        else:
            terms[str(e)] = [str(x) for x in c.coeffs]
    return {"d": d, "terms": terms}


def deserialize_poly(obj):
    d = int(obj["d"])
    field = field_for(d)
    terms = {}
    for e, cs in obj["terms"].items():
        if d == 1:
            terms[int(e)] = Fraction(cs[0])
        else:
            terms[int(e)] = field.element([Fraction(c) for c in cs])
    return LaurentPolynomial(terms, field)


def character_exponents(cover_ab, chi):
    """Values of chi on each cover generator, through the abelian images."""
    if tuple(chi.orders) != tuple(cover_ab.orders):
        raise ValueError("character is defined on %r but the cover homology is %r"
                         % (chi.orders, cover_ab.orders))
    return [chi(img) for img in cover_ab.images]


def twisted_alexander(p, n, chi=None, column=None, d=None):
    """
    Twisted polynomial of the knot group ``p`` for the n-fold cover and a
    character ``chi`` of the branched cover homology (trivial if None).

    The Fox matrix of the cover presentation is evaluated at
    x -> zeta_d^chi(x) t^eta(x); column ``column`` (default: the first with
    nonzero eta) is deleted, the determinant is divided by
    zeta^chi(x_j) t^eta(x_j) - 1 and, for trivial chi, multiplied by t - 1.
    """
    G, cover, ab = presentation_homology(p, n)
    cp = cover.presentation
    if cp.deficiency != 1:
        raise ValueError("cover presentation must have deficiency one")
    if chi is None:
        chi = Character(d or 1, (0,) * G.rank, G.orders)
    d = chi.d
    rho = character_exponents(ab, chi)
    eta = cover.eta
    if column is None:
        column = next(j for j, v in enumerate(eta) if v)
    if not 0 <= column < cp.generator_count:
        raise ValueError("column %d out of range" % column)
    if not eta[column]:
        raise ValueError("column %d has eta == 0 and cannot be deleted" % column)
    J = fox_matrix_at(cp, rho, eta, d)
    M = [[e for j, e in enumerate(row) if j != column] for row in J]
    det = det_laurent(M)
    if not det:
        raise ValueError("twisted polynomial vanishes; the presentation or character is degenerate")
    field = det.field if d > 1 else QQ
    one = LaurentPolynomial.constant(1, field)
    zeta_part = field.zeta_power(rho[column]) if d > 1 else 1
    denom = LaurentPolynomial({eta[column]: field(zeta_part)}, field) - one
    if chi.is_trivial():
        det = det * (LaurentPolynomial.t(field) - one)
    det = det.exact_div(denom)
    return TwistedPolynomial(det.canonical(), d, n, chi, column)


def twisted_via_ring(p, n, chi=None):
    """Slow oracle: same quantity through group-ring Fox derivatives."""
    G, cover, ab = presentation_homology(p, n)
    cp = cover.presentation
    if chi is None:
        chi = Character(1, (0,) * G.rank, G.orders)
    d = chi.d
    field = cyclotomic_field(d) if d > 1 else cyclotomic_field(2)
    rho_exp = character_exponents(ab, chi)
    rho = [field.zeta_power(e) for e in rho_exp]
    eta = cover.eta
    column = next(j for j, v in enumerate(eta) if v)
    J = fox_jacobian(cp)
    M = [[evaluate_group_ring(e, rho, eta) for j, e in enumerate(row) if j != column]
         for row in J]
    det = det_laurent(M)
    one = LaurentPolynomial.constant(1, field)
    denom = LaurentPolynomial({eta[column]: field.zeta_power(rho_exp[column])}, field) - one
    if chi.is_trivial():
        det = det * (LaurentPolynomial.t(field) - one)
    det = det.exact_div(denom).canonical()
    if d == 1:
        det = LaurentPolynomial({e: c.rational_value() for e, c in det.terms.items()}, QQ)
    return det


def galois_twist(P, s):
    """Apply zeta -> zeta^s to the coefficients; matches the character s * chi."""
    if gcd(s, P.d) != 1:
        raise ValueError("Galois twist needs gcd(s, d) = 1 (s = %d, d = %d)" % (s, P.d))
    ch = P.character.scaled(s) if P.character is not None else None
    return TwistedPolynomial(P.value.galois(s).canonical(), P.d, P.n, ch, P.deleted_column)


def connected_sum_twisted(parts):
    """
    Polynomial of a connected sum for the direct-sum character: the product
    of the parts divided by (t - 1)^(count - 1).
    """
    parts = list(parts)
    if not parts:
        raise ValueError("connected sum of no knots")
    d, n = parts[0].d, parts[0].n
    if any(P.d != d or P.n != n for P in parts):
        raise ValueError("connected sum needs a common modulus and cover degree")
    value = parts[0].value
    for P in parts[1:]:
        value = value * P.value
    field = value.field
    t1 = LaurentPolynomial.t(field) - LaurentPolynomial.constant(1, field)
    for _ in range(len(parts) - 1):
        value = value.exact_div(t1)
    chars = [P.character for P in parts]
    ch = None
    if all(c is not None for c in chars):
        ch = Character(d, sum((c.values for c in chars), ()), sum((c.orders for c in chars), ()))
    return TwistedPolynomial(value.canonical(), d, n, ch, None)
