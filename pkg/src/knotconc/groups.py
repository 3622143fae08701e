"""
Free-group words, finite presentations, Fox calculus, abelianization and
Reidemeister-Schreier presentations of cyclic covers.
"""

import re
from fractions import Fraction
from dataclasses import dataclass
from math import gcd
from typing import Optional, Tuple

from .algebra.cyclotomic import CyclotomicElement, cyclotomic_field
from .algebra.laurent import QQ, LaurentPolynomial
from .algebra.matrices import smith_normal_form


class Word:
    """
    Freely reduced word in generators 0, 1, 2, ...; letters are pairs
    ``(generator, +1 | -1)``.
    """

    __slots__ = ("letters",)

    def __init__(self, letters=()):
        out = []
        for g, e in letters:
            if e not in (1, -1):
                raise ValueError("letter exponents must be +1 or -1, got %r" % (e,))
            if g < 0:
                raise ValueError("negative generator index %r" % (g,))
            if out and out[-1][0] == g and out[-1][1] == -e:
                out.pop()
            else:
                out.append((g, e))
        self.letters = tuple(out)

    @classmethod
    def parse(cls, text):
        """Parse ``"x1 X2 x3"`` (1-based, capital letter = inverse)."""
        letters = []
        for tok in text.replace("*", " ").split():
            m = re.fullmatch(r"([xX])(\d+)(?:\^(-?\d+))?", tok)
            if not m or int(m.group(2)) < 1:
                raise ValueError("bad letter %r in word %r" % (tok, text))
            g = int(m.group(2)) - 1
            e = 1 if m.group(1) == "x" else -1
            power = int(m.group(3)) if m.group(3) else 1
            if power < 0:
                e, power = -e, -power
            letters.extend([(g, e)] * power)
        return cls(letters)

    @classmethod
    def power(cls, g, k):
        return cls([(g, 1 if k > 0 else -1)] * abs(k))

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(("x%d" if e == 1 else "X%d") % (g + 1) for g, e in self.letters)

    def __repr__(self):
        return "Word(%r)" % str(self)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __lt__(self, other):
        return self.letters < other.letters

    def __mul__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return Word(self.letters + other.letters)

    def inverse(self):
        return Word([(g, -e) for g, e in reversed(self.letters)])

    def exponent_sum(self, weights):
        return sum(weights[g] * e for g, e in self.letters)

    def generators(self):
        return {g for g, _ in self.letters}

    def max_generator(self):
        return max((g for g, _ in self.letters), default=-1)


class GroupRingElement:
    """Finite formal Z-linear combination of words."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for w, c in (terms or {}).items():
            if not isinstance(w, Word):
                w = Word(w)
            if c:
                clean[w] = clean.get(w, 0) + c
        self.terms = {w: c for w, c in clean.items() if c}

    @classmethod
    def one(cls):
        return cls({Word(): 1})

    @classmethod
    def of(cls, word, coeff=1):
        return cls({word: coeff})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = GroupRingElement({Word(): other})
        return isinstance(other, GroupRingElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if isinstance(other, int):
            other = GroupRingElement({Word(): other})
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, 0) + c
        return GroupRingElement(terms)

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = GroupRingElement({Word(): other})
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElement({w: c * other for w, c in self.terms.items()})
        if isinstance(other, Word):
            other = GroupRingElement.of(other)
        terms = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 * w2
                terms[w] = terms.get(w, 0) + c1 * c2
        return GroupRingElement(terms)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        if isinstance(other, Word):
            return GroupRingElement.of(other) * self
        return NotImplemented

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0])):
            parts.append(("%d*" % c if c != 1 else "") + str(w) if c != -1 else "-" + str(w))
        return " + ".join(parts).replace("+ -", "- ")


@dataclass(frozen=True)
class Presentation:
    generator_count: int
    relators: Tuple[Word, ...]
    eta0: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "relators", tuple(
            r if isinstance(r, Word) else Word(r) for r in self.relators))
        if self.generator_count < 1:
            raise ValueError("a presentation needs at least one generator")
        for r in self.relators:
            if r.max_generator() >= self.generator_count:
                raise ValueError("relator %s uses a generator out of range" % r)
        if self.eta0 is not None:
            eta0 = tuple(int(v) for v in self.eta0)
            if len(eta0) != self.generator_count:
                raise ValueError("eta0 has %d entries for %d generators"
                                 % (len(eta0), self.generator_count))
            for r in self.relators:
                if r.exponent_sum(eta0) != 0:
                    raise ValueError("eta0 does not kill relator %s" % r)
            object.__setattr__(self, "eta0", eta0)

    @classmethod
    def parse(cls, generator_count, relators, eta0=None):
        return cls(generator_count, tuple(Word.parse(r) for r in relators),
                   None if eta0 is None else tuple(eta0))

    @property
    def deficiency(self):
        return self.generator_count - len(self.relators)

    def with_eta0(self, eta0):
        return Presentation(self.generator_count, self.relators, tuple(eta0))

    def with_relators(self, extra):
        return Presentation(self.generator_count, self.relators + tuple(extra), None)

    def to_json(self):
        out = {"generators": self.generator_count,
               "relators": [str(r) for r in self.relators]}
        if self.eta0 is not None:
            out["eta0"] = list(self.eta0)
        return out


# -- Fox calculus ------------------------------------------------------


def fox_derivative(w, i, generator_count=None):
    """
    Fox derivative of ``w`` with respect to generator ``i``:
    d(x_i)/dx_i = 1, d(x_i^-1)/dx_i = -x_i^-1, d(uv) = du + u dv.
    """
    if i < 0 or (generator_count is not None and i >= generator_count):
        raise IndexError("generator index %d out of range" % i)
    terms = {}
    prefix = []
    for g, e in w:
        if g == i:
            if e == 1:
                key = Word(prefix)
                terms[key] = terms.get(key, 0) + 1
            else:
                key = Word(prefix + [(g, -1)])
                terms[key] = terms.get(key, 0) - 1
        prefix.append((g, e))
    return GroupRingElement(terms)


def fox_jacobian(p):
    """Matrix of d r_i / d x_j (rows: relators, columns: generators)."""
    return [[fox_derivative(r, j) for j in range(p.generator_count)] for r in p.relators]


# -- abelianization ----------------------------------------------------


@dataclass(frozen=True)
class AbelianGroup:
    """
    Finitely generated abelian group Z/orders[0] + Z/orders[1] + ... where an
    order of 0 means a free Z summand; orders are the nontrivial invariant
    factors (ascending torsion, then free).  ``images[j]`` are the
    coordinates of generator j.
    """
    orders: Tuple[int, ...]
    images: Tuple[Tuple[int, ...], ...]

    @property
    def rank(self):
        return sum(1 for d in self.orders if d == 0)

    @property
    def torsion(self):
        return tuple(d for d in self.orders if d)

    def order(self):
        """Cardinality, or 0 for an infinite group."""
        if self.rank:
            return 0
        n = 1
        for d in self.orders:
            n *= d
        return n

    def is_trivial(self):
        return not self.orders

    def is_infinite_cyclic(self):
        return self.orders == (0,)

    def image_of_word(self, w):
        coords = [0] * len(self.orders)
        for g, e in w:
            for k, v in enumerate(self.images[g]):
                coords[k] += e * v
        return self.reduce(coords)

    def reduce(self, coords):
        return tuple(c % d if d else c for c, d in zip(coords, self.orders))


def abelianization(p):
    """Invariant factors of the relator exponent matrix and generator images."""
    g = p.generator_count
    rows = []
    for r in p.relators:
        row = [0] * g
        for x, e in r:
            row[x] += e
        rows.append(row)
    if not rows:
        orders = [0] * g
        images = [tuple(1 if k == j else 0 for k in range(g)) for j in range(g)]
        return AbelianGroup(tuple(orders), tuple(images))
    D, U, V = smith_normal_form(rows)
    diag = [D[i][i] if i < len(D) else 0 for i in range(g)]
    keep = [i for i in range(g) if diag[i] != 1]
    orders = tuple(diag[i] for i in keep)
    images = tuple(tuple((V[j][i] % diag[i]) if diag[i] else V[j][i] for i in keep)
                   for j in range(g))
    return AbelianGroup(orders, images)


def knot_group_eta0(p):
    """
    The map to Z for a presentation with abelianization Z, signed so that
    the first generator with nonzero image maps positively.
    """
    ab = abelianization(p)
    if not ab.is_infinite_cyclic():
        raise ValueError("abelianization is %s, not Z" % (ab.orders,))
    eta0 = [img[0] for img in ab.images]
    first = next(v for v in eta0 if v)
    if first < 0:
        eta0 = [-v for v in eta0]
    return tuple(eta0)


# -- cyclic covers -----------------------------------------------------


@dataclass(frozen=True)
class CoverPresentation:
    base: Presentation
    n: int
    presentation: Presentation
    eta: Tuple[int, ...]
    lifted_meridian: Word
    labels: Tuple[Tuple[int, int], ...]   # (base generator, coset) per cover generator
    transversal_generator: int

    def meridian_index(self):
        return self.labels.index((self.transversal_generator, self.n - 1))


def cyclic_cover_presentation(p, n):
    """
    Reidemeister-Schreier presentation of the n-fold cyclic cover.

    The transversal is 1, x, ..., x^(n-1) for the first generator x with
    eta0(x) == 1; lifts of x except the last are trivial and eliminated.
    Cover generator (g, i) stands for x^i g x^-j, j the coset of x^i g.
    """
    if p.eta0 is None:
        raise ValueError("cyclic covers need eta0 (a surjection to Z)")
    if n < 1:
        raise ValueError("cover degree must be positive")
    eta0 = p.eta0
    if gcd(*eta0) != 1:
        raise ValueError("eta0 is not onto Z")
    try:
        x0 = eta0.index(1)
    except ValueError:
        raise ValueError("need a generator with eta0 == 1 for the transversal")
    m = p.generator_count
    labels = []
    index = {}
    for g in range(m):
        for i in range(n):
            if g == x0 and i < n - 1:
                continue
            index[(g, i)] = len(labels)
            labels.append((g, i))

    def rewrite(word, start):
        out = []
        c = start
        for g, e in word:
            if e == 1:
                lab = (g, c)
                c = (c + eta0[g]) % n
                if lab in index:
                    out.append((index[lab], 1))
            else:
                c = (c - eta0[g]) % n
                lab = (g, c)
                if lab in index:
                    out.append((index[lab], -1))
        if c != start:
            raise ValueError("relator %s does not close up in the cover" % word)
        return Word(out)

    relators = tuple(rewrite(r, c) for r in p.relators for c in range(n))
    eta = tuple((i + eta0[g]) // n for g, i in labels)
    cover = Presentation(len(labels), relators, eta)
    meridian = Word([(index[(x0, n - 1)], 1)])
    return CoverPresentation(p, n, cover, eta, meridian, tuple(labels), x0)


def branched_quotient(cover):
    """Cover presentation with the lifted meridian killed (branched cover group)."""
    return cover.presentation.with_relators([cover.lifted_meridian])


# -- evaluation --------------------------------------------------------


def word_monomial(word, rho_exp, eta):
    """``(zeta exponent, t exponent)`` of the image of a word under x -> zeta^rho t^eta."""
    z = t = 0
    for g, e in word:
        z += e * rho_exp[g]
        t += e * eta[g]
    return z, t


def evaluate_group_ring(e, rho, eta):
    """
    Image of a group-ring element under x -> rho(x) t^eta(x).

    ``rho`` maps generators to roots of unity (CyclotomicElement) and
    ``eta`` to integers; both may be dicts or sequences.
    """
    gens = set()
    for w in e.terms:
        gens |= w.generators()
    field = None
    rho_exp = {}
    for g in gens:
        try:
            value = rho[g]
            eta[g]
        except (KeyError, IndexError):
            raise KeyError("generator %d has no image assigned" % g)
        if not isinstance(value, CyclotomicElement):
            value = QQ(value)
            if value not in (1, -1):
                raise ValueError("rho(x%d) = %s is not a root of unity" % (g + 1, value))
            value = cyclotomic_field(2).zeta_power(0 if value == 1 else 1)
        if field is None:
            field = value.field
        elif value.field is not field:
            raise ValueError("rho values live in different cyclotomic fields")
        k = value.root_of_unity_exponent()
        if k is None:
            raise ValueError("rho(x%d) is not a root of unity" % (g + 1))
        rho_exp[g] = k
    if field is None:
        field = QQ
        if isinstance(rho, dict) and rho:
            v = next(iter(rho.values()))
            if isinstance(v, CyclotomicElement):
                field = v.field
    out = {}
    for w, c in e.terms.items():
        z, t = word_monomial(w, rho_exp, eta)
        coeff = field.zeta_power(z) * c if field is not QQ else QQ(c)
        out[t] = out.get(t, field.zero()) + coeff
    return LaurentPolynomial(out, field)


def fox_matrix_at(p, rho_exp, eta, d=1):
    """
    Fox Jacobian of ``p`` under x_g -> zeta_d^rho_exp[g] t^eta[g], computed
    letter by letter without building group-ring elements.  Returns a list
    of rows of LaurentPolynomials over Q (d == 1) or Q(zeta_d).
    """
    field = QQ if d == 1 else cyclotomic_field(d)
    m = p.generator_count
    rows = []
    for r in p.relators:
        acc = [dict() for _ in range(m)]   # column -> {(t, z): coeff}
        z = t = 0
        for g, e in r:
            if e == 1:
                key = (t, z % d)
                acc[g][key] = acc[g].get(key, 0) + 1
                z += rho_exp[g]
                t += eta[g]
            else:
                z -= rho_exp[g]
                t -= eta[g]
                key = (t, z % d)
                acc[g][key] = acc[g].get(key, 0) - 1
        row = []
        for col in acc:
            terms = {}
            for (te, ze), c in col.items():
                if not c:
                    continue
                if d == 1:
                    terms[te] = terms.get(te, 0) + c
                else:
                    terms.setdefault(te, [0] * d)[ze] += c
            if d == 1:
                row.append(LaurentPolynomial({k: Fraction(v) for k, v in terms.items()}, QQ))
            else:
                row.append(LaurentPolynomial({k: field.element(v) for k, v in terms.items()},
                                             field))
        rows.append(row)
    return rows
