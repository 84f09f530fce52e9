"""Lattice points of cones and polyhedra: Hilbert bases, module generators,
normality of lattice polyhedra and sums of lattice points.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import linalg as la
from .errors import EmptyPolyhedron, NonIntegralVertices, NotPointed
from .polyhedral import Cone, SigmaPolyhedron, bounding_box, dilate, intersection

_CHUNK = 200_000


@dataclass(frozen=True)
class HilbertBasis:
    cone: Cone
    elements: tuple


@dataclass(frozen=True)
class ModuleGenerators:
    polyhedron: SigmaPolyhedron
    generators: tuple


@dataclass(frozen=True)
class NormalityVerdict:
    normal: bool
    witness: tuple = None  # (m, e): a lattice point of eP that is not a sum of e points of P
    hilbert_basis: tuple = ()

    def __bool__(self):
        return self.normal


def _integer_rows(constraints):
    """Scale rational constraints a.x >= b to integer data valid on lattice points."""
    rows, rhs = [], []
    for a, b in constraints:
        rows.append(tuple(a))
        rhs.append(math.ceil(Fraction(b)))
    return rows, rhs


def grid_points(lo, hi, rows=(), rhs=(), eq_rows=(), eq_rhs=()):
    """Integer points x in the box lo <= x <= hi with rows.x >= rhs and eq_rows.x == eq_rhs.

    ``rows`` must be integer.  Returns a list of int tuples in lexicographic order.
    """
    dim = len(lo)
    if any(a > b for a, b in zip(lo, hi)):
        return []
    if dim == 0:
        return [()]
    A = np.array(rows, dtype=np.int64).reshape(len(rows), dim)
    b = np.array(rhs, dtype=np.int64)
    E = np.array(eq_rows, dtype=np.int64).reshape(len(eq_rows), dim)
    f = np.array(eq_rhs, dtype=np.int64)
    sizes = [h - l + 1 for l, h in zip(lo, hi)]
    inner = int(np.prod(sizes[1:])) if dim > 1 else 1
    step = max(1, _CHUNK // max(inner, 1))
    out = []
    tail = None
    if dim > 1:
        axes = [np.arange(l, h + 1, dtype=np.int64) for l, h in zip(lo[1:], hi[1:])]
        tail = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, dim - 1)
    for start in range(lo[0], hi[0] + 1, step):
        firsts = np.arange(start, min(start + step, hi[0] + 1), dtype=np.int64)
        if tail is None:
            pts = firsts.reshape(-1, 1)
        else:
            pts = np.concatenate(
                [np.repeat(firsts, len(tail)).reshape(-1, 1), np.tile(tail, (len(firsts), 1))], axis=1
            )
        mask = np.ones(len(pts), dtype=bool)
        if len(A):
            mask &= np.all(pts @ A.T >= b, axis=1)
        if len(E):
            mask &= np.all(pts @ E.T == f, axis=1)
        out.extend(tuple(int(x) for x in row) for row in pts[mask])
    return out


def lattice_points(p, box=None):
    """Lattice points of ``p`` (inside ``box`` = (lo, hi) when p is unbounded)."""
    if box is None:
        if not p.is_bounded():
            raise ValueError("an unbounded polyhedron needs an explicit box")
        box = bounding_box(p.vertices)
    rows, rhs = _integer_rows(p.inequalities)
    eq_rows, eq_rhs = [], []
    for a, b in p.equations:
        if Fraction(b).denominator != 1:
            return []
        eq_rows.append(a)
        eq_rhs.append(int(b))
    return grid_points(box[0], box[1], rows, rhs, eq_rows, eq_rhs)


def _hilbert_full(rays, facets, dim, height=None, max_height=None):
    """Hilbert basis of a full-dimensional pointed cone in Z^dim.

    Every Hilbert basis element lies in a half-open parallelepiped spanned by
    linearly independent extreme rays, so candidates are the lattice points of
    the cone inside the zonotope box with grading below the sum of the ``dim``
    largest ray gradings.  Candidates are then reduced in order of grading.
    """
    if not rays:
        return []
    grading = tuple(sum(col) for col in zip(*facets))
    degs = sorted((la.dot(grading, r) for r in rays), reverse=True)
    top = sum(degs[:dim])
    lo = [sum(min(0, r[i]) for r in rays) for i in range(dim)]
    hi = [sum(max(0, r[i]) for r in rays) for i in range(dim)]
    # the polytope {x in cone : grading.x <= top} has vertices 0 and r * top / grading.r
    far = [tuple(Fraction(x * top, la.dot(grading, r)) for x in r) for r in rays]
    for i in range(dim):
        lo[i] = max(lo[i], min(0, min(math.floor(v[i]) for v in far)))
        hi[i] = min(hi[i], max(0, max(math.ceil(v[i]) for v in far)))
    rows = list(facets) + [la.neg(grading)]
    rhs = [0] * len(facets) + [-top]
    if height is not None and max_height is not None:
        rows.append(la.neg(height))
        rhs.append(-max_height)
    cands = [x for x in grid_points(lo, hi, rows, rhs) if any(x)]
    if not cands:
        return []
    pts = np.array(cands, dtype=np.int64)
    g = pts @ np.array(grading, dtype=np.int64)
    order = np.lexsort(tuple(pts[:, i] for i in range(dim - 1, -1, -1)) + (g,))
    pts, g = pts[order], g[order]
    F = np.array(facets, dtype=np.int64)
    basis = np.zeros((0, dim), dtype=np.int64)
    i = 0
    while i < len(pts):
        j = i
        while j < len(pts) and g[j] == g[i]:
            j += 1
        layer = pts[i:j]
        if len(basis):
            diffs = layer[:, None, :] - basis[None, :, :]
            inside = np.all(diffs @ F.T >= 0, axis=2)
            keep = ~np.any(inside, axis=1)
            layer = layer[keep]
        basis = np.concatenate([basis, layer])
        i = j
    return [tuple(int(x) for x in row) for row in basis]


def _sublattice_chart(equations, n):
    """Lattice basis of the saturated sublattice cut out by ``equations``.

    Returns (basis, to_coords) where to_coords maps a lattice vector in the
    subspace to its integer coordinates in ``basis``.
    """
    kernel, cols = la.integer_kernel(equations, n)
    piv = n - len(kernel)
    inv = la.inverse([tuple(cols[j][i] for j in range(n)) for i in range(n)])

    def to_coords(x):
        return tuple(int(la.dot(row, x)) for row in inv[piv:])

    return kernel, to_coords


def _hilbert_pointed(cone, height=None, max_height=None):
    if cone.is_zero():
        return []
    if cone.is_full_dimensional():
        return _hilbert_full(list(cone.rays), list(cone.facets), cone.dim, height, max_height)
    basis, to_coords = _sublattice_chart(list(cone.equations), cone.dim)
    sub = Cone.from_rays([to_coords(r) for r in cone.rays], dim=len(basis))
    h = None
    if height is not None:
        h = tuple(la.dot(height, b) for b in basis)
    found = _hilbert_full(list(sub.rays), list(sub.facets), sub.dim, h, max_height)
    out = []
    for y in found:
        x = tuple(0 for _ in range(cone.dim))
        for c, b in zip(y, basis):
            x = la.add(x, la.scale(c, b))
        out.append(x)
    return out


def hilbert_basis(cone):
    """Minimal generating set of the semigroup cone ∩ Z^n (cone must be pointed)."""
    if not cone.is_pointed():
        raise NotPointed("Hilbert basis requested for a cone with lineality")
    return HilbertBasis(cone, tuple(sorted(_hilbert_pointed(cone))))


def semigroup_generators(cone):
    """Generators of cone ∩ Z^n, also for cones with lineality.

    For a pointed cone this is the Hilbert basis.  Otherwise it is a lattice
    basis of the lineality lattice with both signs, together with lifts of the
    Hilbert basis of the (pointed) image in the quotient lattice.
    """
    if cone.is_pointed():
        return hilbert_basis(cone).elements
    n = cone.dim
    perp = la.nullspace(cone.lineality, n)
    kernel, cols = la.integer_kernel(perp, n)
    piv = n - len(kernel)
    inv = la.inverse([tuple(cols[j][i] for j in range(n)) for i in range(n)])

    def proj(x):
        return tuple(int(la.dot(row, x)) for row in inv[:piv])

    image = Cone.from_rays([proj(r) for r in cone.rays], dim=piv)
    gens = []
    for y in _hilbert_pointed(image):
        x = tuple(0 for _ in range(n))
        for c, u in zip(y, cols[:piv]):
            x = la.add(x, la.scale(c, u))
        gens.append(x)
    gens += list(kernel) + [la.neg(k) for k in kernel]
    return tuple(sorted(set(gens)))


def saturate_semigroup(points):
    """Cone generated by ``points`` and generators of its saturated semigroup."""
    cone = Cone.from_rays([tuple(p) for p in points], dim=len(points[0]) if points else None)
    return cone, semigroup_generators(cone)


def module_generators(p):
    """Minimal generators of p ∩ M as a module over rec(p) ∩ M.

    A lattice point m of p is a generator exactly when m - s leaves p for
    every nonzero Hilbert basis element s of the recession cone.  All
    generators lie in conv(vertices) plus the zonotope of the recession rays.
    """
    rec = p.recession
    if not rec.is_pointed():
        raise NotPointed("module generators need a pointed recession cone")
    shifts = hilbert_basis(rec).elements
    lo, hi = bounding_box(p.vertices)
    lo = tuple(l + sum(min(0, r[i]) for r in rec.rays) for i, l in enumerate(lo))
    hi = tuple(h + sum(max(0, r[i]) for r in rec.rays) for i, h in enumerate(hi))
    pts = lattice_points(p, (lo, hi))
    if not pts or not shifts:
        return ModuleGenerators(p, tuple(pts))
    rows, rhs = _integer_rows(p.halfspaces())
    A = np.array(rows, dtype=np.int64)
    b = np.array(rhs, dtype=np.int64)
    X = np.array(pts, dtype=np.int64)
    # <a, x - s> >= b  <=>  <a, x> - <a, s> >= b
    ax = X @ A.T
    a_s = np.array(shifts, dtype=np.int64) @ A.T
    keep = np.ones(len(pts), dtype=bool)
    step = max(1, _CHUNK // max(1, len(shifts)))
    for start in range(0, len(pts), step):
        block = ax[start:start + step]
        inside = np.all(block[:, None, :] - a_s[None, :, :] >= b, axis=2)
        keep[start:start + step] = ~np.any(inside, axis=1)
    return ModuleGenerators(p, tuple(pt for pt, k in zip(pts, keep) if k))


def is_normal_polyhedron(p, dim_bound=None):
    """Decide whether (eP) ∩ M is the set of sums of e lattice points of P for all e.

    Equivalent to every Hilbert basis element of the cone over P having height
    at most one.  Heights never exceed the ambient rank; ``dim_bound`` lowers
    the inspected heights further (valid in the positive orthant setting where
    heights up to the number of variables minus one suffice).
    """
    if not p.is_integral():
        raise NonIntegralVertices("normality is defined for lattice polyhedra")
    if not p.recession.is_pointed():
        raise NotPointed("normality check needs a pointed recession cone")
    homog = p.homogenization()
    height = tuple(0 for _ in range(p.dim)) + (1,)
    bound = p.dim if dim_bound is None else min(p.dim, dim_bound)
    elements = sorted(_hilbert_pointed(homog, height, max(bound, 1)))
    bad = [(x[:-1], x[-1]) for x in elements if x[-1] >= 2]
    if bad:
        return NormalityVerdict(False, min(bad), tuple(elements))
    return NormalityVerdict(True, None, tuple(elements))


def _reflect(p, m, k):
    """The polyhedron m - k*P."""
    q = dilate(p, k)
    verts = [la.sub(m, v) for v in q.vertices]
    rec = q.recession
    return SigmaPolyhedron.from_vertices(
        verts, Cone.from_rays([la.neg(r) for r in rec.rays], rec.lineality, dim=p.dim)
    )


def efold_decomposition(p, e, m):
    """Lattice points m_1..m_e of p summing to m, or None.  Exhaustive search."""
    if not p.recession.is_pointed():
        raise NotPointed("sums of lattice points need a pointed recession cone")
    m = tuple(m)

    @lru_cache(maxsize=None)
    def search(k, target):
        if k == 1:
            return (target,) if p.contains(target) else None
        if not p.contains(la.scale(Fraction(1, k), target)):
            return None
        try:
            region = intersection(p, _reflect(p, target, k - 1))
        except EmptyPolyhedron:
            return None
        for first in lattice_points(region):
            rest = search(k - 1, la.sub(target, first))
            if rest is not None:
                return (first,) + rest
        return None

    if e < 1:
        raise ValueError("e must be positive")
    return search(e, m)


def efold_sum_membership(p, e, m):
    """True iff m is a sum of e lattice points of p."""
    return efold_decomposition(p, e, m) is not None
