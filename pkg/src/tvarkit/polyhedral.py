"""Exact rational polyhedral geometry.

Cones are stored with both representations in canonical form: primitive
integer vectors, lexicographically sorted, lineality and equation bases in
reduced echelon form.  Rays are taken modulo the lineality space (projected
onto its orthogonal complement) and facet normals modulo the equations, so
two cones are equal exactly when their stored data agree.

A ``SigmaPolyhedron`` is conv(vertices) + recession cone.  It is handled
through its homogenization, the cone generated by (v, 1) for vertices and
(r, 0) for recession rays.
"""

import math
from fractions import Fraction
from itertools import product
from math import gcd

from . import linalg as la
from .errors import DimensionMismatch, EmptyPolyhedron, RecessionMismatch, Unbounded


def _double_description(inequalities, dim):
    """Extreme rays and lineality basis of {x : a.x >= 0}.

    Incremental double description method on integer vectors.  Rays are
    kept primitive; adjacency uses the combinatorial test on tight sets.
    """
    lin = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    rays = []  # list of (vector, frozenset of tight constraint indices)
    seen = set()
    for k, a in enumerate(inequalities):
        if not any(a):
            continue
        vals = [la.dot(a, l) for l in lin]
        j0 = next((j for j, v in enumerate(vals) if v), None)
        if j0 is not None:
            l0, s0 = lin[j0], vals[j0]
            if s0 < 0:
                l0, s0 = la.neg(l0), -s0
            new_lin = []
            for j, l in enumerate(lin):
                if j == j0:
                    continue
                v = vals[j]
                if v:
                    l = la.primitive(la.sub(la.scale(s0, l), la.scale(v, l0)))
                new_lin.append(l)
            new_rays = []
            for r, z in rays:
                v = la.dot(a, r)
                if v:
                    r = la.primitive(la.sub(la.scale(s0, r), la.scale(v, l0)))
                new_rays.append((r, z | {k}))
            new_rays.append((l0, frozenset(seen)))
            lin, rays = new_lin, new_rays
            seen.add(k)
            continue
        pos, zero, negs = [], [], []
        for r, z in rays:
            v = la.dot(a, r)
            if v > 0:
                pos.append((r, z, v))
            elif v < 0:
                negs.append((r, z, v))
            else:
                zero.append((r, z))
        new_rays = [(r, z) for r, z, _ in pos] + [(r, z | {k}) for r, z in zero]
        if negs and pos:
            need = dim - len(lin) - 2
            tight_sets = [z for _, z in rays]
            for p, zp, vp in pos:
                for q, zq, vq in negs:
                    common = zp & zq
                    if len(common) < need:
                        continue
                    adjacent = True
                    for z in tight_sets:
                        if z is zp or z is zq:
                            continue
                        if common <= z:
                            adjacent = False
                            break
                    if adjacent:
                        r = la.primitive(la.sub(la.scale(vp, q), la.scale(vq, p)))
                        new_rays.append((r, common | {k}))
        rays = new_rays
        seen.add(k)
    return lin, [r for r, _ in rays]


def _canonical_pair(lin, rays, dim):
    """Canonical lineality basis and rays projected modulo the lineality."""
    basis = la.subspace_basis(lin, dim) if lin else ()
    out = set()
    for r in rays:
        v = la.primitive(la.project_out(r, basis)) if basis else la.primitive(r)
        if any(v):
            out.add(v)
    return tuple(sorted(basis)), tuple(sorted(out))


def _check_dim(vectors, dim):
    for v in vectors:
        if len(v) != dim:
            raise DimensionMismatch(f"expected vectors of length {dim}, got {tuple(v)}")


class Cone:
    """Rational polyhedral cone in Q^dim.

    Attributes: ``rays`` and ``lineality`` (generators), ``facets`` and
    ``equations`` (inequalities a.x >= 0 and a.x = 0).
    """

    __slots__ = ("dim", "rays", "lineality", "facets", "equations")

    def __init__(self, dim, rays, lineality, facets, equations):
        self.dim = dim
        self.rays = rays
        self.lineality = lineality
        self.facets = facets
        self.equations = equations

    @classmethod
    def from_rays(cls, rays, lineality=(), dim=None):
        rays = [la.primitive(r) for r in rays]
        lineality = [la.primitive(l) for l in lineality]
        dim = _infer_dim(rays + lineality, dim)
        _check_dim(rays + lineality, dim)
        ineqs = sorted(set(rays)) + sorted(set(lineality)) + sorted(set(la.neg(l) for l in lineality))
        eq, fac = _double_description(ineqs, dim)
        equations, facets = _canonical_pair(eq, fac, dim)
        gens = list(facets) + list(equations) + [la.neg(e) for e in equations]
        lin, ray = _double_description(gens, dim)
        lineality, rays = _canonical_pair(lin, ray, dim)
        return cls(dim, rays, lineality, facets, equations)

    @classmethod
    def from_inequalities(cls, inequalities, equations=(), dim=None):
        inequalities = [la.primitive(a) for a in inequalities]
        equations = [la.primitive(a) for a in equations]
        dim = _infer_dim(inequalities + equations, dim)
        _check_dim(inequalities + equations, dim)
        ineqs = sorted(set(inequalities)) + sorted(set(equations)) + sorted(set(la.neg(e) for e in equations))
        lin, ray = _double_description(ineqs, dim)
        lineality, rays = _canonical_pair(lin, ray, dim)
        gens = list(rays) + list(lineality) + [la.neg(l) for l in lineality]
        eq, fac = _double_description(gens, dim)
        equations, facets = _canonical_pair(eq, fac, dim)
        return cls(dim, rays, lineality, facets, equations)

    @classmethod
    def zero(cls, dim):
        return cls.from_rays([], dim=dim)

    @classmethod
    def full(cls, dim):
        return cls.from_inequalities([], dim=dim)

    @classmethod
    def orthant(cls, dim):
        return cls.from_rays([tuple(int(i == j) for j in range(dim)) for i in range(dim)], dim=dim)

    def dual(self):
        return Cone(self.dim, self.facets, self.equations, self.rays, self.lineality)

    def is_pointed(self):
        return not self.lineality

    def is_full_dimensional(self):
        return not self.equations

    def is_zero(self):
        return not self.rays and not self.lineality

    def dimension(self):
        return self.dim - len(self.equations)

    def contains(self, x):
        return all(la.dot(a, x) >= 0 for a in self.facets) and all(la.dot(e, x) == 0 for e in self.equations)

    def relative_interior_contains(self, x):
        return all(la.dot(a, x) > 0 for a in self.facets) and all(la.dot(e, x) == 0 for e in self.equations)

    def contains_cone(self, other):
        return all(self.contains(r) for r in other.rays) and all(
            self.contains(l) and self.contains(la.neg(l)) for l in other.lineality
        )

    def generators(self):
        """Rays together with both signs of the lineality basis."""
        return list(self.rays) + list(self.lineality) + [la.neg(l) for l in self.lineality]

    def interior_point(self):
        """A lattice point in the relative interior (the zero vector for a linear space)."""
        x = tuple(0 for _ in range(self.dim))
        for r in self.rays:
            x = la.add(x, r)
        return x

    def _key(self):
        return (self.dim, self.rays, self.lineality)

    def __eq__(self, other):
        return isinstance(other, Cone) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.lineality:
            return f"Cone(rays={list(self.rays)}, lineality={list(self.lineality)})"
        return f"Cone(rays={list(self.rays)})"


def _infer_dim(vectors, dim):
    if dim is not None:
        return dim
    if not vectors:
        raise DimensionMismatch("cannot infer the ambient rank from empty input")
    return len(vectors[0])


def dd_convert(rays=None, inequalities=None, equations=(), lineality=(), dim=None):
    """Build a canonical cone from either representation."""
    if rays is not None and inequalities is not None:
        raise ValueError("give rays or inequalities, not both")
    if inequalities is not None:
        return Cone.from_inequalities(inequalities, equations, dim)
    return Cone.from_rays(rays or (), lineality, dim)


def dual_cone(c):
    return c.dual()


class SigmaPolyhedron:
    """Polyhedron conv(vertices) + recession.

    ``inequalities`` holds pairs (normal, bound) meaning normal.x >= bound,
    with primitive integer normals; ``equations`` likewise with equality.
    """

    __slots__ = ("dim", "vertices", "recession", "inequalities", "equations", "_homog")

    def __init__(self, homog):
        dim = homog.dim - 1
        vertices, rays = [], []
        for g in homog.rays:
            if g[-1] > 0:
                vertices.append(tuple(Fraction(x, g[-1]) for x in g[:-1]))
            else:
                rays.append(g[:-1])
        if not vertices:
            raise EmptyPolyhedron("the polyhedron is empty")
        lin = [l[:-1] for l in homog.lineality]
        self.dim = dim
        self._homog = homog
        self.vertices = tuple(sorted(vertices))
        self.recession = Cone.from_rays(rays, lin, dim=dim)
        ineqs = []
        for f in homog.facets:
            a, c = f[:-1], f[-1]
            if not any(a):
                continue
            ineqs.append(_scaled_halfspace(a, c))
        self.inequalities = tuple(sorted(ineqs))
        self.equations = tuple(sorted(_scaled_halfspace(e[:-1], e[-1]) for e in homog.equations if any(e[:-1])))

    @classmethod
    def from_vertices(cls, vertices, recession=None, dim=None):
        vertices = [la.as_fraction_vector(v) for v in vertices]
        if not vertices:
            raise EmptyPolyhedron("a polyhedron needs at least one vertex")
        dim = len(vertices[0]) if dim is None else dim
        _check_dim(vertices, dim)
        if recession is None:
            recession = Cone.zero(dim)
        if recession.dim != dim:
            raise DimensionMismatch("recession cone has the wrong rank")
        gens = [la.primitive(v + (1,)) for v in vertices]
        gens += [r + (0,) for r in recession.rays]
        lin = [l + (0,) for l in recession.lineality]
        return cls(Cone.from_rays(gens, lin, dim=dim + 1))

    @classmethod
    def from_inequalities(cls, inequalities, equations=(), dim=None):
        """Polyhedron {x : a.x >= b} from pairs (a, b); equations are pairs with a.x = b."""
        inequalities = [(tuple(a), Fraction(b)) for a, b in inequalities]
        equations = [(tuple(a), Fraction(b)) for a, b in equations]
        dim = _infer_dim([a for a, _ in inequalities + equations], dim)
        _check_dim([a for a, _ in inequalities + equations], dim)
        rows = sorted({la.primitive(tuple(a) + (-b,)) for a, b in inequalities})
        rows.append(tuple(0 for _ in range(dim)) + (1,))
        eqs = [la.primitive(tuple(a) + (-b,)) for a, b in equations]
        return cls(Cone.from_inequalities(rows, eqs, dim=dim + 1))

    @classmethod
    def from_cone(cls, c):
        return cls.from_vertices([tuple(0 for _ in range(c.dim))], c)

    def homogenization(self):
        """Cone over the polyhedron: generated by (v, 1) and (r, 0)."""
        return self._homog

    def is_bounded(self):
        return self.recession.is_zero()

    def is_integral(self):
        return all(la.integral(v) is not None for v in self.vertices)

    def contains(self, x):
        return all(la.dot(a, x) >= b for a, b in self.inequalities) and all(
            la.dot(a, x) == b for a, b in self.equations
        )

    def halfspaces(self):
        """All constraints as (a, b) pairs with a.x >= b, equations doubled."""
        out = list(self.inequalities)
        for a, b in self.equations:
            out.append((a, b))
            out.append((la.neg(a), -b))
        return out

    def translate(self, v):
        return SigmaPolyhedron.from_vertices([la.add(w, v) for w in self.vertices], self.recession)

    def _key(self):
        return (self.dim, self.vertices, self.recession.rays, self.recession.lineality)

    def __eq__(self, other):
        return isinstance(other, SigmaPolyhedron) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        verts = [tuple(str(x) for x in v) for v in self.vertices]
        return f"SigmaPolyhedron(vertices={verts}, recession={self.recession!r})"


def _scaled_halfspace(a, c):
    """Turn a.x + c >= 0 into (a', b) with a' primitive and a'.x >= b."""
    g = 0
    for x in a:
        g = gcd(g, x)
    return tuple(x // g for x in a), Fraction(-c, g)


def polyhedron_from_inequalities(inequalities, sigma, equations=()):
    """The polyhedron {v : m.v >= b}; its recession cone must equal ``sigma``."""
    p = SigmaPolyhedron.from_inequalities(inequalities, equations, dim=sigma.dim)
    if p.recession != sigma:
        raise RecessionMismatch(f"recession cone {p.recession!r} differs from {sigma!r}")
    return p


def minkowski_sum(p, q):
    if p.recession.dim != q.recession.dim:
        raise DimensionMismatch("summands live in different ranks")
    verts = {la.add(v, w) for v in p.vertices for w in q.vertices}
    rays = list(p.recession.rays) + list(q.recession.rays)
    lin = list(p.recession.lineality) + list(q.recession.lineality)
    return SigmaPolyhedron.from_vertices(sorted(verts), Cone.from_rays(rays, lin, dim=p.dim))


def support_function(p, m):
    """min over p of <m, v>; raises Unbounded when m is not in the dual of the recession cone."""
    if len(m) != p.dim:
        raise DimensionMismatch("weight has the wrong rank")
    if not p.recession.dual().contains(m):
        raise Unbounded(f"{tuple(m)} is not in the dual of the recession cone")
    return min(Fraction(la.dot(m, v)) for v in p.vertices)


def dilate(p, e):
    """e * p; for e = 0 this is the recession cone."""
    e = Fraction(e)
    if e < 0:
        raise ValueError("dilation factor must be nonnegative")
    if e == 0:
        return SigmaPolyhedron.from_cone(p.recession)
    return SigmaPolyhedron.from_vertices([la.scale(e, v) for v in p.vertices], p.recession)


def polyhedra_equal(p, q):
    return p == q


def intersection(p, q):
    if p.dim != q.dim:
        raise DimensionMismatch("polyhedra live in different ranks")
    return SigmaPolyhedron.from_inequalities(
        list(p.inequalities) + list(q.inequalities), list(p.equations) + list(q.equations), dim=p.dim
    )


def project_last(p):
    """Image of p under forgetting the last coordinate."""
    verts = [v[:-1] for v in p.vertices]
    rec = p.recession
    return SigmaPolyhedron.from_vertices(
        verts, Cone.from_rays([r[:-1] for r in rec.rays], [l[:-1] for l in rec.lineality], dim=p.dim - 1)
    )


def bounding_box(points):
    """Integer box [lo, hi] containing the given rational points."""
    dim = len(points[0])
    lo = tuple(math.floor(min(Fraction(pt[i]) for pt in points)) for i in range(dim))
    hi = tuple(math.ceil(max(Fraction(pt[i]) for pt in points)) for i in range(dim))
    return lo, hi


def box_points(lo, hi):
    return product(*[range(a, b + 1) for a, b in zip(lo, hi)])
