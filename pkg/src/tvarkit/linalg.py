"""Small exact linear algebra helpers over the integers and rationals.

Vectors are plain tuples.  Entries are ``int`` or ``Fraction``.
"""

from fractions import Fraction
from math import gcd, lcm


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def scale(c, a):
    return tuple(c * x for x in a)


def neg(a):
    return tuple(-x for x in a)


def as_fraction_vector(v):
    return tuple(Fraction(x) for x in v)


def denominator_lcm(v):
    d = 1
    for x in v:
        d = lcm(d, Fraction(x).denominator)
    return d


def primitive(v):
    """Positive multiple of ``v`` with coprime integer entries.

    The zero vector is returned unchanged (as integers).
    """
    if all(type(x) is int for x in v):
        w = v
    else:
        d = denominator_lcm(v)
        w = [int(Fraction(x) * d) for x in v]
    g = 0
    for x in w:
        g = gcd(g, x)
    if g <= 1:
        return tuple(w)
    return tuple(x // g for x in w)


def integral(v):
    """Return ``v`` as an int tuple, or None if some entry is not an integer."""
    out = []
    for x in v:
        x = Fraction(x)
        if x.denominator != 1:
            return None
        out.append(x.numerator)
    return tuple(out)


def rref(rows, ncols):
    """Reduced row echelon form over Q.  Returns (rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def rank(rows, ncols):
    return len(rref(rows, ncols)[1])


def subspace_basis(vectors, ncols):
    """Canonical basis of the span: primitive integer rows of the RREF."""
    rows, _ = rref(vectors, ncols)
    return tuple(primitive(r) for r in rows)


def nullspace(rows, ncols):
    """Basis of {x : r.x = 0 for all rows}, as primitive integer vectors."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(primitive(x))
    return basis


def solve(rows, rhs):
    """Solve the square nonsingular system ``rows x = rhs`` over Q."""
    n = len(rows)
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, n + 1)
    if len(pivots) != n or pivots[-1] == n:
        raise ValueError("singular system")
    return tuple(red[i][n] for i in range(n))


def project_out(v, basis):
    """Orthogonal projection of ``v`` onto the complement of span(basis)."""
    if not basis:
        return tuple(v)
    k = len(basis)
    gram = [[Fraction(dot(basis[i], basis[j])) for j in range(k)] for i in range(k)]
    rhs = [Fraction(dot(b, v)) for b in basis]
    c = solve(gram, rhs)
    out = [Fraction(x) for x in v]
    for ci, b in zip(c, basis):
        out = [x - ci * y for x, y in zip(out, b)]
    return tuple(out)


def integer_kernel(rows, n):
    """Lattice basis of {x in Z^n : r.x = 0 for every row}.

    Returns ``(kernel, transform)`` where ``transform`` is a unimodular matrix
    (list of column vectors) whose trailing columns are the kernel basis.
    Column operations only, so the kernel basis is saturated.
    """
    rows = [primitive(r) if any(r) else tuple(0 for _ in r) for r in rows]
    cols = [[r[j] for r in rows] for j in range(n)]
    U = [[int(i == j) for i in range(n)] for j in range(n)]
    piv = 0
    for i in range(len(rows)):
        if piv == n:
            break
        while True:
            nz = [j for j in range(piv, n) if cols[j][i] != 0]
            if not nz:
                break
            jm = min(nz, key=lambda j: (abs(cols[j][i]), j))
            cols[piv], cols[jm] = cols[jm], cols[piv]
            U[piv], U[jm] = U[jm], U[piv]
            clean = True
            for j in range(piv + 1, n):
                if cols[j][i]:
                    q = cols[j][i] // cols[piv][i]
                    cols[j] = [x - q * y for x, y in zip(cols[j], cols[piv])]
                    U[j] = [x - q * y for x, y in zip(U[j], U[piv])]
                    if cols[j][i]:
                        clean = False
            if clean:
                break
        if cols[piv][i] != 0:
            piv += 1
    return [tuple(u) for u in U[piv:]], [tuple(u) for u in U]


def inverse(matrix):
    """Inverse of a square rational matrix given as a list of rows."""
    n = len(matrix)
    aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(matrix)]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)):
        raise ValueError("singular matrix")
    return [tuple(row[n:]) for row in red]
