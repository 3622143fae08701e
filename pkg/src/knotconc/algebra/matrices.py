"""
Exact linear algebra: field determinants, Laurent-polynomial determinants by
evaluation and interpolation, and Smith normal form over the integers.

Matrices are plain lists of rows.
"""

from fractions import Fraction

from .laurent import QQ, LaurentPolynomial


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(A):
    return [list(r) for r in zip(*A)]


def matmul(A, B):
    Bt = list(zip(*B)) if B else []
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def det_field(rows):
    """Determinant over an exact field by Gaussian elimination (input untouched)."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    if any(len(r) != n for r in a):
        raise ValueError("determinant of a non-square matrix")
    det = None
    sign = 1
    for c in range(n):
        piv = None
        for r in range(c, n):
            if a[r][c]:
                piv = r
                break
        if piv is None:
            return a[0][0] * 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        p = a[c][c]
        det = p if det is None else det * p
        if c == n - 1:
            break
        pinv = 1 / p
        prow = a[c]
        nz = [j for j in range(c + 1, n) if prow[j]]
        for r in range(c + 1, n):
            x = a[r][c]
            if not x:
                continue
            f = x * pinv
            row = a[r]
            for j in nz:
                row[j] = row[j] - f * prow[j]
    return det if sign == 1 else -det


def det_cofactor(rows):
    """Laplace expansion along the first row; exponential, meant as an oracle."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = None
    for j in range(n):
        if not rows[0][j]:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * det_cofactor(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return rows[0][0] * 0
    return total


def _newton_interpolate(xs, ys, field):
    """Coefficients (lowest first) of the polynomial through (xs[i], ys[i])."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) * Fraction(1, xs[i] - xs[i - j])
    # expand the Newton form
    poly = [coef[-1]]
    for i in range(n - 2, -1, -1):
        # poly = poly * (t - xs[i]) + coef[i]
        new = [field.zero()] * (len(poly) + 1)
        for k, c in enumerate(poly):
            new[k + 1] = new[k + 1] + c
            new[k] = new[k] - c * xs[i]
        new[0] = new[0] + coef[i]
        poly = new
    return poly


def det_laurent(M, points=None):
    """
    Exact determinant of a square matrix of Laurent polynomials.

    Each row is shifted to nonnegative exponents, the determinant (a
    polynomial of degree at most the sum of the row degrees D) is evaluated
    at t = 1, 2, ..., D+1 by field elimination, interpolated, and shifted
    back.
    """
    n = len(M)
    if any(len(r) != n for r in M):
        raise ValueError("det_laurent needs a square matrix, got %dx%s"
                         % (n, sorted({len(r) for r in M})))
    M = [[e if isinstance(e, LaurentPolynomial) else LaurentPolynomial.constant(e)
          for e in r] for r in M]
    field = QQ
    for r in M:
        for e in r:
            if e and e.field is not QQ:
                field = e.field
                break
        if field is not QQ:
            break
    one = LaurentPolynomial.constant(1, field)
    if n == 0:
        return one
    total_shift = 0
    dense_rows = []
    D = 0
    for r in M:
        nonzero = [e for e in r if e]
        if not nonzero:
            return LaurentPolynomial({}, field)
        lo = min(e.min_exp() for e in nonzero)
        hi = max(e.max_exp() for e in nonzero)
        total_shift += lo
        D += hi - lo
        row = []
        for e in r:
            if not e:
                row.append(None)
            else:
                coeffs = [field.zero()] * (e.max_exp() - lo + 1)
                for k, c in e.terms.items():
                    coeffs[k - lo] = field(c)
                row.append(coeffs)
        dense_rows.append(row)
    if points is None:
        points = list(range(1, D + 2))
    elif len(points) < D + 1:
        raise ValueError("need at least %d evaluation points" % (D + 1))
    values = [det_field(_evaluate_rows(dense_rows, x, field)) for x in points[:D + 1]]
    values = [field(v) for v in values]
    coeffs = _newton_interpolate(points[:D + 1], values, field)
    return LaurentPolynomial.from_coeffs(coeffs, total_shift, field)


def _evaluate_rows(dense_rows, x, field):
    zero = field.zero()
    out = []
    for row in dense_rows:
        vals = []
        for coeffs in row:
            if coeffs is None:
                vals.append(zero)
                continue
            acc = zero
            for c in reversed(coeffs):
                acc = acc * x + c
            vals.append(acc)
        out.append(vals)
    return out


def det_laurent_cofactor(M):
    """Oracle: cofactor expansion in the Laurent ring itself."""
    if not M:
        return LaurentPolynomial.constant(1)
    return det_cofactor(M)


# -- integer matrices ---------------------------------------------------


def smith_normal_form(A):
    """
    Return ``(D, U, V)`` with ``U * A * V == D``, U and V unimodular and D
    diagonal with nonnegative entries d1 | d2 | ...
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(map(int, r)) for r in A]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in D:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for r in D:
            r[dst] += q * r[src]
        for r in V:
            r[dst] += q * r[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            p = D[t][t]
            moved = False
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    if D[i][t]:
                        swap_rows(t, i)
                        moved = True
                        break
            if moved:
                continue
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    if D[t][j]:
                        swap_cols(t, j)
                        moved = True
                        break
            if moved:
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if D[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
    return D, U, V


def det_int(A):
    """Integer determinant (Bareiss, fraction-free)."""
    a = [list(map(int, r)) for r in A]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def inverse_rational(A):
    """Inverse of a nonsingular integer/rational matrix over Q (Gauss-Jordan)."""
    n = len(A)
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
         for i, r in enumerate(A)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [r[n:] for r in a]
