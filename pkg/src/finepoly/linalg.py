"""Exact integer and rational linear algebra on small dense matrices.

All arithmetic is arbitrary precision: integers stay Python ints, ratios are
fractions.Fraction.  There is deliberately no floating point anywhere.
Matrices are tuples of row tuples; vectors are plain tuples.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

Rational = Fraction

#: Largest ambient dimension handled by the geometry layer (4-polytopes plus
#: the extra dilation coordinate).
MAX_DIM = 5


def norm_scalar(x):
    """Collapse integral Fractions to int so values have one canonical form."""
    if type(x) is int:
        return x
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return int(x)
        return x
    return x


def norm_vector(v):
    if all(type(x) is int for x in v):
        return tuple(v)
    return tuple(norm_scalar(x) for x in v)


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vneg(u):
    return tuple(-a for a in u)


def vscale(c, u):
    return tuple(c * a for a in u)


def vec_gcd(v):
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    return g


def primitive_vector(v):
    """Divide an integer vector by the gcd of its entries, keeping direction."""
    g = vec_gcd(v)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    if g == 1:
        return tuple(v)
    return tuple(x // g for x in v)


def clear_denominators(v):
    """Scale a rational vector to a primitive integer vector (same direction).

    Returns the integer vector; the scaling factor is positive.
    """
    mult = 1
    for x in v:
        if type(x) is not int and isinstance(x, Fraction):
            mult = lcm(mult, x.denominator)
    ints = tuple(int(x * mult) for x in v)
    return primitive_vector(ints)


def _int_rows(rows):
    """Rescale each row by a positive integer so all entries are ints.

    Row scaling preserves rank and solution sets; determinants pick up the
    product of the factors, which the callers track.
    """
    out = []
    factors = []
    for row in rows:
        mult = 1
        for x in row:
            if type(x) is not int and isinstance(x, Fraction):
                mult = lcm(mult, x.denominator)
        if mult == 1:
            out.append(list(row))
        else:
            out.append([int(x * mult) for x in row])
        factors.append(mult)
    return out, factors


def det(rows):
    """Exact determinant via fraction-free Bareiss elimination."""
    n = len(rows)
    if n == 0:
        return 1
    if any(len(r) != n for r in rows):
        raise ValueError("determinant requires a square matrix")
    if n == 1:
        return norm_scalar(rows[0][0])
    if n == 2:
        return norm_scalar(rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0])
    if n == 3:
        (a, b, c), (d, e, f), (g, h, i) = rows
        return norm_scalar(a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g))
    m, factors = _int_rows(rows)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if pivot is None:
                return 0
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    value = sign * m[n - 1][n - 1]
    denom = 1
    for f in factors:
        denom *= f
    return norm_scalar(Fraction(value, denom)) if denom != 1 else value


def rank(rows):
    """Rank of an exact matrix (fraction-free elimination)."""
    if not rows:
        return 0
    m, _ = _int_rows(rows)
    nrows, ncols = len(m), len(m[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        p = m[r][col]
        for i in range(r + 1, nrows):
            if m[i][col] != 0:
                a = m[i][col]
                m[i] = [p * x - a * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == nrows:
            break
    return r


def solve_square(rows, b):
    """Exact solution of a square linear system, or None when singular."""
    n = len(rows)
    if any(len(r) != n for r in rows) or len(b) != n:
        raise ValueError("solve_square requires a square system of matching size")
    aug = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(rows, b)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if aug[i][col] != 0), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col] / p
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    return tuple(norm_scalar(aug[i][n] / aug[i][i]) for i in range(n))


def identity_matrix(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a, b):
    cols = list(zip(*b))
    return tuple(tuple(dot(row, col) for col in cols) for row in a)


def mat_vec(a, v):
    return tuple(dot(row, v) for row in a)


def transpose(a):
    return tuple(zip(*a))


def hermite_normal_form(rows):
    """Row Hermite normal form H = U * A with U unimodular.

    Pivots are positive, entries below a pivot are zero and entries above it
    are reduced into [0, pivot).  Works for any integer matrix; the number of
    pivots is the rank.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    h = [list(r) for r in rows]
    u = [list(r) for r in identity_matrix(m)]

    def row_op(i, j, q):
        # row i -= q * row j
        if q:
            h[i] = [a - q * b for a, b in zip(h[i], h[j])]
            u[i] = [a - q * b for a, b in zip(u[i], u[j])]

    pivot_row = 0
    for col in range(n):
        while True:
            live = [i for i in range(pivot_row, m) if h[i][col] != 0]
            if len(live) <= 1:
                break
            live.sort(key=lambda i: abs(h[i][col]))
            base = live[0]
            for i in live[1:]:
                row_op(i, base, h[i][col] // h[base][col])
        live = [i for i in range(pivot_row, m) if h[i][col] != 0]
        if not live:
            continue
        i = live[0]
        if i != pivot_row:
            h[i], h[pivot_row] = h[pivot_row], h[i]
            u[i], u[pivot_row] = u[pivot_row], u[i]
        if h[pivot_row][col] < 0:
            h[pivot_row] = [-a for a in h[pivot_row]]
            u[pivot_row] = [-a for a in u[pivot_row]]
        p = h[pivot_row][col]
        for i in range(pivot_row):
            row_op(i, pivot_row, h[i][col] // p)
        pivot_row += 1
        if pivot_row == m:
            break
    return tuple(tuple(r) for r in h), tuple(tuple(r) for r in u)


def column_hermite_normal_form(rows):
    """Column-style HNF: H = A * V with V unimodular (transpose of the row form)."""
    ht, ut = hermite_normal_form(transpose(rows))
    return transpose(ht), transpose(ut)


def kernel_basis(rows):
    """Basis of the integer kernel lattice {x : A x = 0} of an integer matrix."""
    n = len(rows[0])
    h, v = column_hermite_normal_form(rows)
    basis = []
    for j in range(n):
        if all(h[i][j] == 0 for i in range(len(rows))):
            basis.append(tuple(v[i][j] for i in range(n)))
    return basis


def inverse_unimodular(rows):
    """Exact inverse of a unimodular integer matrix (again integral)."""
    n = len(rows)
    cols = []
    for j in range(n):
        e = tuple(1 if i == j else 0 for i in range(n))
        x = solve_square(rows, e)
        if x is None:
            raise ValueError("matrix is singular")
        cols.append(x)
    inv = transpose(cols)
    if any(not isinstance(x, int) for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return inv


def parse_rational(text):
    """Parse "p/q" or plain integer text into an exact scalar."""
    if isinstance(text, int):
        return text
    s = str(text).strip()
    if "/" in s:
        num, den = s.split("/", 1)
        return norm_scalar(Fraction(int(num), int(den)))
    return int(s)


def format_rational(x):
    x = norm_scalar(x)
    if isinstance(x, int):
        return str(x)
    return f"{x.numerator}/{x.denominator}"
