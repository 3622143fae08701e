"""
Crossing diagrams, Wirtinger presentations, and generators for two-bridge
knot data (4-plat diagrams and Schubert presentations).
"""

from dataclasses import dataclass
from typing import Tuple

from .groups import Presentation, Word


@dataclass(frozen=True)
class Crossing:
    over: int
    under_in: int
    under_out: int
    sign: int

    def to_json(self):
        return {"over": self.over, "under_in": self.under_in,
                "under_out": self.under_out, "sign": self.sign}


@dataclass(frozen=True)
class CrossingDiagram:
    """
    Knot diagram as arcs 0..arc_count-1 and crossings; each arc ends at
    exactly one crossing (as ``under_in``) and starts at exactly one (as
    ``under_out``).
    """
    arc_count: int
    crossings: Tuple[Crossing, ...]

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(
            c if isinstance(c, Crossing) else Crossing(**c) for c in self.crossings))
        self.validate()

    def validate(self):
        n = self.arc_count
        if not self.crossings:
            raise ValueError("a crossing diagram needs at least one crossing; "
                             "use the presentation <x | > for the unknot")
        if n != len(self.crossings):
            raise ValueError("a knot diagram has as many arcs as crossings "
                             "(%d arcs, %d crossings)" % (n, len(self.crossings)))
        ins = sorted(c.under_in for c in self.crossings)
        outs = sorted(c.under_out for c in self.crossings)
        if ins != list(range(n)) or outs != list(range(n)):
            raise ValueError("every arc must appear once as under_in and once as under_out")
        for c in self.crossings:
            if c.sign not in (1, -1):
                raise ValueError("crossing sign must be +1 or -1")
            if not 0 <= c.over < n:
                raise ValueError("over arc %d out of range" % c.over)
        # the arcs must form a single component
        nxt = {c.under_in: c.under_out for c in self.crossings}
        seen, a = set(), 0
        while a not in seen:
            seen.add(a)
            a = nxt[a]
        if len(seen) != n:
            raise ValueError("diagram has more than one component")

    def writhe(self):
        return sum(c.sign for c in self.crossings)

    def to_json(self):
        return {"arc_count": self.arc_count,
                "crossings": [c.to_json() for c in self.crossings]}


def wirtinger_from_crossings(dgm):
    """
    Wirtinger presentation: one generator per arc and, per crossing, the
    relation under_out = over^s under_in over^-s; the last relation is
    redundant and dropped.
    """
    if not isinstance(dgm, CrossingDiagram):
        dgm = CrossingDiagram(**dgm)
    rels = []
    for c in dgm.crossings:
        s = c.sign
        rels.append(Word([(c.over, s), (c.under_in, 1), (c.over, -s), (c.under_out, -1)]))
    return Presentation(dgm.arc_count, tuple(rels[:-1]), (1,) * dgm.arc_count)


# -- planar diagrams ----------------------------------------------------

# slot geometry inside a braid crossing (x to the right, y up)
_SLOT_POS = {"NW": (-1, 1), "NE": (1, 1), "SW": (-1, -1), "SE": (1, -1)}
_THROUGH = {"NW": "SE", "SE": "NW", "NE": "SW", "SW": "NE"}


def four_plat(word):
    """
    Crossing diagram of the plat closure of a 4-strand braid.

    ``word`` is a sequence of nonzero ints: ``i`` for sigma_i, ``-i`` for its
    inverse (i in 1..3), read top to bottom; caps join strands 1-2 and 3-4
    at the top, cups at the bottom.  In sigma_i the strand travelling from
    position i to i+1 passes over.
    """
    seg = {}
    through = {}
    top = [("cap", p) for p in range(4)]
    through[("cap", 0)], through[("cap", 1)] = ("cap", 1), ("cap", 0)
    through[("cap", 2)], through[("cap", 3)] = ("cap", 3), ("cap", 2)
    over_pairs = {}
    open_end = list(top)
    for k, s in enumerate(word):
        i = abs(s)
        if not 1 <= i <= 3:
            raise ValueError("4-plat generators are 1..3, got %r" % s)
        a, b = i - 1, i
        node = ("x", k)
        for slot in _SLOT_POS:
            through[(node, slot)] = (node, _THROUGH[slot])
        seg[open_end[a]] = (node, "NW")
        seg[(node, "NW")] = open_end[a]
        seg[open_end[b]] = (node, "NE")
        seg[(node, "NE")] = open_end[b]
        open_end[a], open_end[b] = (node, "SW"), (node, "SE")
        over_pairs[k] = ("NW", "SE") if s > 0 else ("NE", "SW")
    for p, q in ((0, 1), (2, 3)):
        cup_p, cup_q = ("cup", p), ("cup", q)
        seg[open_end[p]], seg[cup_p] = cup_p, open_end[p]
        seg[open_end[q]], seg[cup_q] = cup_q, open_end[q]
        through[cup_p], through[cup_q] = cup_q, cup_p
    return _diagram_from_graph(seg, through, over_pairs, len(word))


def _diagram_from_graph(seg, through, over_pairs, n_crossings):
    if n_crossings == 0:
        raise ValueError("the closure has no crossings")
    # walk the knot, recording passages (crossing, in-slot, out-slot)
    start = (("x", 0), "NW")
    passages = []
    e = start
    while True:
        node, slot = e
        out = through[e]
        passages.append((node[1], slot, out[1]))
        f = seg[out]
        while f[0] in ("cap", "cup"):
            f = seg[through[f]]
        e = f
        if e == start:
            break
        if len(passages) > 2 * n_crossings:
            raise ValueError("walk did not close up")
    if len(passages) != 2 * n_crossings:
        raise ValueError("closure is a link with more than one component")

    def is_over(k, s_in, s_out):
        return {s_in, s_out} == set(over_pairs[k])

    def direction(s_in, s_out):
        (x0, y0), (x1, y1) = _SLOT_POS[s_in], _SLOT_POS[s_out]
        return x1 - x0, y1 - y0

    # rotate so the walk starts just after an under passage
    first_under = next(i for i, p in enumerate(passages) if not is_over(*p))
    passages = passages[first_under + 1:] + passages[:first_under + 1]
    arc = 0
    info = {}
    for k, s_in, s_out in passages:
        rec = info.setdefault(k, {})
        if is_over(k, s_in, s_out):
            rec["over"] = arc
            rec["over_dir"] = direction(s_in, s_out)
        else:
            rec["under_in"] = arc
            arc = (arc + 1) % n_crossings
            rec["under_out"] = arc
            rec["under_dir"] = direction(s_in, s_out)
    crossings = []
    for k in range(n_crossings):
        rec = info[k]
        (ox, oy), (ux, uy) = rec["over_dir"], rec["under_dir"]
        cross = ox * uy - oy * ux
        crossings.append(Crossing(rec["over"], rec["under_in"], rec["under_out"],
                                  1 if cross > 0 else -1))
    return CrossingDiagram(n_crossings, tuple(crossings))


def continued_fraction(p, q):
    """Regular continued fraction of p/q with positive partial quotients."""
    out = []
    while q:
        a, r = divmod(p, q)
        out.append(a)
        p, q = q, r
    return out


def odd_length_expansion(p, q):
    cf = continued_fraction(p, q)
    if len(cf) % 2 == 0:
        if cf[-1] > 1:
            cf = cf[:-1] + [cf[-1] - 1, 1]
        else:
            cf = cf[:-2] + [cf[-2] + 1]
    return cf


def two_bridge_diagram(p, q):
    """
    4-plat diagram of the two-bridge knot with fraction p/q, built from the
    odd-length continued fraction [a1, ..., an] as the plat closure of
    sigma_2^a1 sigma_1^-a2 sigma_2^a3 ... sigma_2^an.
    """
    if p % 2 == 0:
        raise ValueError("p must be odd for a knot (got %d)" % p)
    word = []
    for i, a in enumerate(odd_length_expansion(p, q)):
        word += [2] * a if i % 2 == 0 else [-1] * a
    return four_plat(word)


def schubert_presentation(p, q):
    """
    Two-generator one-relator presentation <a, b | w a w^-1 b^-1> of the
    two-bridge knot b(p, q), with w = a^e1 b^e2 ... b^e(p-1) and
    e_i = (-1)^floor(i q / p).  Requires p odd; q is replaced by an odd
    representative if necessary (same knot up to mirror image).
    """
    if p % 2 == 0 or p < 3:
        raise ValueError("p must be odd and at least 3")
    q %= p
    if q % 2 == 0:
        q = p - q
    letters = []
    for i in range(1, p):
        e = -1 if (i * q // p) % 2 else 1
        letters.append((0 if i % 2 else 1, e))
    w = Word(letters)
    rel = w * Word([(0, 1)]) * w.inverse() * Word([(1, -1)])
    return Presentation(2, (rel,), (1, 1))


def twist_knot_fraction(k):
    """Two-bridge fraction (4k+1)/(2k) of the k-twisted double of the unknot."""
    return 4 * k + 1, 2 * k
