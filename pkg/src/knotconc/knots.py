"""
Knot records, classical Alexander polynomials, branched-cover homology,
linking forms and characters.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd, isqrt, lcm
from typing import Optional, Tuple

from .algebra.laurent import LaurentPolynomial
from .algebra.matrices import (det_int, det_laurent, inverse_rational,
                               smith_normal_form, transpose)
from .diagrams import (CrossingDiagram, schubert_presentation, twist_knot_fraction,
                       two_bridge_diagram, wirtinger_from_crossings)
from .groups import (Presentation, abelianization, branched_quotient,
                     cyclic_cover_presentation, fox_matrix_at, knot_group_eta0)


class KnotDataError(ValueError):
    """Inconsistent or malformed knot data."""


# -- finite abelian groups with linking forms ---------------------------


@dataclass(frozen=True)
class LinkedAbelianGroup:
    """
    Finite abelian group Z/orders[0] + ... on its invariant-factor basis,
    optionally with a Q/Z-valued linking form given by the matrix
    ``linking[i][j] = lambda(e_i, e_j)`` (entries reduced into [0, 1)).
    """
    orders: Tuple[int, ...]
    linking: Optional[Tuple[Tuple[Fraction, ...], ...]] = None

    def __post_init__(self):
        if any(d < 2 for d in self.orders):
            raise ValueError("invariant factors must be at least 2: %r" % (self.orders,))
        if self.linking is not None:
            lk = tuple(tuple(Fraction(x) % 1 for x in row) for row in self.linking)
            n = len(self.orders)
            if len(lk) != n or any(len(r) != n for r in lk):
                raise ValueError("linking matrix has the wrong shape")
            for i in range(n):
                for j in range(n):
                    if lk[i][j] != lk[j][i]:
                        raise ValueError("linking form is not symmetric")
                    if (self.orders[i] * lk[i][j]).denominator != 1:
                        raise ValueError("linking form incompatible with orders")
            object.__setattr__(self, "linking", lk)

    @property
    def rank(self):
        return len(self.orders)

    def order(self):
        n = 1
        for d in self.orders:
            n *= d
        return n

    def exponent(self):
        return lcm(*self.orders) if self.orders else 1

    def is_trivial(self):
        return not self.orders

    def elements(self):
        return product(*[range(d) for d in self.orders])

    def reduce(self, x):
        return tuple(a % d for a, d in zip(x, self.orders))

    def add(self, x, y):
        return self.reduce([a + b for a, b in zip(x, y)])

    def scale(self, x, k):
        return self.reduce([a * k for a in x])

    def pairing(self, x, y):
        if self.linking is None:
            raise ValueError("no linking form attached to this group")
        s = Fraction(0)
        for i, a in enumerate(x):
            if a:
                row = self.linking[i]
                for j, b in enumerate(y):
                    if b:
                        s += a * b * row[j]
        return s % 1

    def is_nonsingular(self):
        """lambda(x, .) == 0 only for x == 0 (exhaustive)."""
        basis = [tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)]
        for x in self.elements():
            if any(x) and all(self.pairing(x, e) == 0 for e in basis):
                return False
        return True

    def direct_sum(self, other):
        orders = self.orders + other.orders
        if self.linking is None or other.linking is None:
            return LinkedAbelianGroup(orders)
        n, m = self.rank, other.rank
        lk = [[Fraction(0)] * (n + m) for _ in range(n + m)]
        for i in range(n):
            for j in range(n):
                lk[i][j] = self.linking[i][j]
        for i in range(m):
            for j in range(m):
                lk[n + i][n + j] = other.linking[i][j]
        return LinkedAbelianGroup(orders, tuple(map(tuple, lk)))

    def to_json(self):
        out = {"orders": list(self.orders)}
        if self.linking is not None:
            out["linking"] = [[str(x) for x in row] for row in self.linking]
        return out


@dataclass(frozen=True)
class Character:
    """
    Homomorphism G -> Z/d given by its values on the invariant-factor
    generators of G (whose orders are recorded for validation).
    """
    d: int
    values: Tuple[int, ...]
    orders: Tuple[int, ...]

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("character modulus must be positive")
        if len(self.values) != len(self.orders):
            raise ValueError("character needs one value per invariant factor")
        vals = tuple(v % self.d for v in self.values)
        for v, o in zip(vals, self.orders):
            if (o * v) % self.d:
                raise ValueError("value %d is not killed by the generator order %d" % (v, o))
        object.__setattr__(self, "values", vals)

    def __call__(self, x):
        return sum(a * v for a, v in zip(x, self.values)) % self.d

    def is_trivial(self):
        return not any(self.values)

    def order(self):
        o = 1
        for v in self.values:
            o = lcm(o, self.d // gcd(self.d, v))
        return o

    def scaled(self, s):
        return Character(self.d, tuple(v * s for v in self.values), self.orders)

    def to_json(self):
        return {"d": self.d, "values": list(self.values), "orders": list(self.orders)}


def character_from_element(G, h, d):
    """chi(x) = d * lambda(x, h) mod d, the character given by linking with h."""
    if G.linking is None:
        raise ValueError("characters from elements need a linking form")
    h = G.reduce(h)
    values = []
    for i in range(G.rank):
        e = tuple(int(i == j) for j in range(G.rank))
        v = d * G.pairing(e, h)
        if v.denominator != 1:
            raise ValueError("d = %d is incompatible with the order of h" % d)
        values.append(int(v))
    return Character(d, tuple(values), G.orders)


# -- Seifert matrices ----------------------------------------------------


def _check_seifert(V):
    V = [list(map(int, r)) for r in V]
    n = len(V)
    if any(len(r) != n for r in V) or n % 2:
        raise KnotDataError("a Seifert matrix is square of even size")
    skew = [[V[i][j] - V[j][i] for j in range(n)] for i in range(n)]
    if det_int(skew) != 1:
        raise KnotDataError("det(V - V^T) must be 1 for a knot Seifert matrix")
    return V


def alexander_from_seifert(V):
    """det(V - t V^T) in canonical unit form."""
    V = _check_seifert(V)
    if not V:
        return LaurentPolynomial.constant(1)
    t = LaurentPolynomial.t()
    VT = transpose(V)
    M = [[LaurentPolynomial.constant(V[i][j]) - t * VT[i][j] for j in range(len(V))]
         for i in range(len(V))]
    return det_laurent(M).canonical()


def linking_form(V):
    """H_1 of the double branched cover presented by V + V^T, with its linking form."""
    V = _check_seifert(V)
    n = len(V)
    A = [[V[i][j] + V[j][i] for j in range(n)] for i in range(n)]
    if n and det_int(A) == 0:
        raise KnotDataError("V + V^T is singular")
    if not n:
        return LinkedAbelianGroup(())
    D, U, _ = smith_normal_form(A)
    Ainv = inverse_rational(A)
    Uinv = [[int(x) for x in r] for r in inverse_rational(U)]
    keep = [i for i in range(n) if D[i][i] != 1]
    gens = [[Uinv[r][i] for r in range(n)] for i in keep]
    lk = []
    for x in gens:
        Ax = [sum(Ainv[r][c] * x[c] for c in range(n)) for r in range(n)]
        lk.append(tuple(sum(y[r] * Ax[r] for r in range(n)) % 1 for y in gens))
    return LinkedAbelianGroup(tuple(D[i][i] for i in keep), tuple(lk))


def seifert_pairing(V, x, y):
    """lambda(x, y) = x^T (V + V^T)^-1 y mod 1 for integer vectors x, y."""
    n = len(V)
    A = [[V[i][j] + V[j][i] for j in range(n)] for i in range(n)]
    Ainv = inverse_rational(A)
    return sum(x[i] * Ainv[i][j] * y[j] for i in range(n) for j in range(n)) % 1


# -- Alexander polynomials from presentations ----------------------------


def alexander_from_presentation(p, column=None):
    """
    Alexander polynomial from the Fox matrix with x -> t^eta0(x), deleting
    one column j (default: first generator with eta0 != 0) and dividing by
    (t^eta0(x_j) - 1)/(t - 1).
    """
    if p.eta0 is None:
        raise ValueError("presentation has no map to Z (eta0 missing)")
    if p.deficiency != 1:
        raise ValueError("need a deficiency-one presentation, got %d" % p.deficiency)
    eta = p.eta0
    if column is None:
        column = next(j for j, v in enumerate(eta) if v)
    if not eta[column]:
        raise ValueError("cannot delete column %d: eta0 vanishes there" % column)
    J = fox_matrix_at(p, [0] * p.generator_count, eta)
    M = [[e for j, e in enumerate(row) if j != column] for row in J]
    det = det_laurent(M)
    if not det:
        raise ValueError("Fox minor vanishes; not a knot-group presentation")
    t = LaurentPolynomial.t()
    one = LaurentPolynomial.constant(1)
    det = (det * (t - one)).exact_div(t ** abs(eta[column]) - one)
    return det.canonical()


def integer_form(p):
    """Primitive integer multiple of ``p`` with lowest exponent 0 and positive top coefficient."""
    canon = p.canonical()
    den = lcm(*[c.denominator for c in canon.terms.values()])
    ints = {e: int(c * den) for e, c in canon.terms.items()}
    g = gcd(*ints.values())
    sign = 1 if ints[max(ints)] > 0 else -1
    return LaurentPolynomial({e: Fraction(sign * c // g) for e, c in ints.items()})


# -- knot records ---------------------------------------------------------


@dataclass(frozen=True)
class KnotRecord:
    name: str
    diagram: Optional[CrossingDiagram] = None
    presentation: Optional[Presentation] = None
    seifert: Optional[Tuple[Tuple[int, ...], ...]] = None

    def __post_init__(self):
        if self.diagram is None and self.presentation is None and self.seifert is None:
            raise KnotDataError("knot %s has no data" % self.name)
        if self.seifert is not None:
            object.__setattr__(self, "seifert", tuple(tuple(int(x) for x in r)
                                                      for r in self.seifert))
            _check_seifert(self.seifert)
        if self.presentation is not None and self.presentation.eta0 is None:
            object.__setattr__(self, "presentation", self.presentation.with_eta0(
                knot_group_eta0(self.presentation)))

    def group_presentation(self):
        """Explicit presentation if given (usually smaller), else Wirtinger."""
        if self.presentation is not None:
            return self.presentation
        if self.diagram is not None:
            return wirtinger_from_crossings(self.diagram)
        return None

    def alexander_polynomials(self):
        out = {}
        if self.diagram is not None:
            out["crossings"] = alexander_from_presentation(wirtinger_from_crossings(self.diagram))
        if self.presentation is not None:
            out["presentation"] = alexander_from_presentation(self.presentation)
        if self.seifert is not None:
            out["seifert"] = alexander_from_seifert(self.seifert)
        return out

    def alexander(self):
        polys = self.alexander_polynomials()
        return next(iter(polys.values()))

    def validate(self):
        """Cross-check Alexander polynomials of every representation carried."""
        polys = self.alexander_polynomials()
        values = list(polys.values())
        for name, p in polys.items():
            if p != values[0]:
                raise KnotDataError("%s: Alexander polynomials disagree (%s)"
                                    % (self.name, ", ".join("%s: %s" % kv for kv in polys.items())))
        return values[0]


def unknot():
    return KnotRecord("unknot", presentation=Presentation(1, (), (1,)))


def two_bridge_knot(name, p, q):
    return KnotRecord(name, diagram=two_bridge_diagram(p, q),
                      presentation=schubert_presentation(p, q))


def twist_seifert_matrix(k):
    return ((-1, 1), (0, k))


def algebraic_order_of_twist_knot(k):
    """Levine's classification of T_k in the algebraic concordance group."""
    m = 4 * k + 1
    r = isqrt(m)
    if r * r == m:
        return 1
    n, p = m, 2
    while p * p <= n:
        if n % p == 0:
            alpha = 0
            while n % p == 0:
                n //= p
                alpha += 1
            if p % 4 == 3 and alpha % 2:
                return 4
        p += 1
    if n > 1 and n % 4 == 3:
        return 4
    return 2


def twist_knot_model(k):
    """
    The k-twisted double of the unknot with Seifert matrix [[-1,1],[0,k]],
    a two-bridge diagram, and its algebraic concordance order.
    """
    if not isinstance(k, int) or k < 1:
        raise ValueError("twist parameter k must be a positive integer")
    p, q = twist_knot_fraction(k)
    rec = KnotRecord("T_%d" % k, diagram=two_bridge_diagram(p, q),
                     presentation=schubert_presentation(p, q),
                     seifert=twist_seifert_matrix(k))
    report = {"k": k, "determinant": p, "algebraic_order": algebraic_order_of_twist_knot(k)}
    return rec, report


# -- branched covers ------------------------------------------------------


def branched_cover_homology(knot, n, route=None):
    """
    H_1 of the n-fold branched cyclic cover.

    route "seifert" (n = 2 only) gives the group with its linking form;
    route "presentation" abelianizes the cover presentation with the lifted
    meridian killed and carries no linking form.  Default: seifert when
    available and n == 2, else presentation.
    """
    if n < 2:
        raise ValueError("branched covers need n >= 2")
    if route is None:
        route = "seifert" if (knot.seifert is not None and n == 2) else "presentation"
    if route == "seifert":
        if n != 2:
            raise ValueError("the Seifert route only computes the 2-fold cover")
        if knot.seifert is None:
            raise ValueError("knot %s has no Seifert matrix" % knot.name)
        return linking_form(knot.seifert)
    if route != "presentation":
        raise ValueError("unknown route %r" % route)
    p = knot.group_presentation()
    if p is None:
        raise ValueError("knot %s has no group presentation" % knot.name)
    return presentation_homology(p, n)[0]


def presentation_homology(p, n):
    """``(LinkedAbelianGroup without form, cover, abelian images)`` for the branched cover."""
    cover = cyclic_cover_presentation(p, n)
    ab = abelianization(branched_quotient(cover))
    if ab.rank:
        raise ValueError("branched cover has infinite H_1; n = %d is not allowed here" % n)
    return LinkedAbelianGroup(ab.orders), cover, ab
