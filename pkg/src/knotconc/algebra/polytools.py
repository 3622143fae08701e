"""
Dense univariate polynomial helpers over an exact field.

Polynomials are plain lists of coefficients, lowest degree first, with no
trailing zeros (the zero polynomial is the empty list).  Coefficients may be
anything supporting ``+ - * /`` exactly: ``Fraction`` or
:class:`~knotconc.algebra.cyclotomic.CyclotomicElement`.
"""

from fractions import Fraction


class NotDivisibleError(ArithmeticError):
    """Raised when an exact division leaves a nonzero remainder."""


def trim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def degree(p):
    return len(p) - 1


def add(p, q):
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] = out[i] + c
    return trim(out)


def sub(p, q):
    out = list(p) + [0] * max(0, len(q) - len(p))
    for i, c in enumerate(q):
        out[i] = out[i] - c
    return trim(out)


def scale(p, c):
    if not c:
        return []
    return trim([a * c for a in p])


def mul(p, q):
    if not p or not q:
        return []
    out = [None] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            if not b:
                continue
            term = a * b
            k = i + j
            out[k] = term if out[k] is None else out[k] + term
    zero = p[0] * 0
    return trim([zero if c is None else c for c in out])


def divmod_poly(p, q):
    """Quotient and remainder of ``p`` by nonzero ``q``."""
    q = trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    dq = len(q) - 1
    if len(r) - 1 < dq:
        return [], trim(r)
    lead_inv = 1 / q[-1]
    quot = [q[0] * 0] * (len(r) - dq)
    for i in range(len(r) - 1, dq - 1, -1):
        c = r[i]
        if not c:
            continue
        c = c * lead_inv
        quot[i - dq] = c
        for j in range(dq + 1):
            r[i - dq + j] = r[i - dq + j] - c * q[j]
    return trim(quot), trim(r[:dq])


def exact_div(p, q):
    quot, rem = divmod_poly(p, q)
    if rem:
        raise NotDivisibleError("polynomial division is not exact")
    return quot


def monic(p):
    if not p:
        return []
    inv = 1 / p[-1]
    return [c * inv for c in p]


def gcd(p, q):
    """Monic gcd; ``gcd(0, 0) == []``."""
    a, b = trim(p), trim(q)
    while b:
        a, b = b, divmod_poly(a, b)[1]
    return monic(a)


def xgcd(p, q):
    """Return ``(g, s, t)`` with ``s*p + t*q == g`` and ``g`` monic."""
    r0, r1 = trim(p), trim(q)
    one = Fraction(1)
    s0, s1 = [one], []
    t0, t1 = [], [one]
    while r1:
        quot, rem = divmod_poly(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, sub(s0, mul(quot, s1))
        t0, t1 = t1, sub(t0, mul(quot, t1))
    if not r0:
        return [], s0, t0
    inv = 1 / r0[-1]
    return monic(r0), scale(s0, inv), scale(t0, inv)


def derivative(p):
    return trim([c * i for i, c in enumerate(p)][1:])


def evaluate(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def reverse(p):
    """``t^deg * p(1/t)`` for a polynomial with nonzero constant term."""
    return trim(list(reversed(p)))


def squarefree_decomposition(p):
    """
    Yun's algorithm over a characteristic-zero field.

    Returns a list of ``(factor, multiplicity)`` with monic squarefree,
    pairwise coprime factors whose product (with multiplicities) is
    ``monic(p)``.
    """
    p = monic(trim(p))
    if len(p) <= 1:
        return []
    out = []
    dp = derivative(p)
    a = gcd(p, dp)
    b = exact_div(p, a)
    c = exact_div(dp, a)
    d = sub(c, derivative(b))
    i = 1
    while len(b) > 1:
        a = gcd(b, d)
        b = exact_div(b, a)
        c = exact_div(d, a)
        d = sub(c, derivative(b))
        if len(a) > 1:
            out.append((a, i))
        i += 1
    return out
