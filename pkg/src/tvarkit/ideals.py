"""Integral closure of homogeneous ideals through their Rees algebras.

For I = (f_1 chi^{m_1}, ..., f_r chi^{m_r}) in A[C, D] with Newton
polyhedron P = conv(m_i) + dual(sigma), the closure of every power I^e is
read off a polyhedral divisor D~ on the same curve with weights in M x Z:

    D~_z = {(v, p) : <m_i, v> + p >= -ord_z(f_i)} ∩ (D_z x Q),

whose tail cone is the dual of the cone over P.  The degree (m, e) piece
of the closure of I^e is the section space of floor(D~(m, e)).
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from . import linalg as la
from .curve import AFFINE, INF, PROJECTIVE, global_sections, point_key
from .divisor import HomogeneousElement, PolyhedralDivisor, contains_element, graded_piece
from .errors import GeneratorNotInAlgebra, NotAffine, WeightOutsideDilatedNewton
from .lattice import module_generators
from .normalization import VerificationReport, divisor_from_generators, section_generators
from .polyhedral import Cone, SigmaPolyhedron, dilate, polyhedron_from_inequalities, project_last
from .polyhedral import support_function


@dataclass(frozen=True)
class HomogeneousIdeal:
    ambient: object
    generators: tuple

    def __post_init__(self):
        gens = tuple(self.generators)
        if not gens:
            raise ValueError("an ideal needs at least one generator")
        for g in gens:
            if not contains_element(self.ambient, g):
                raise GeneratorNotInAlgebra(f"{g!r} is not in the ambient algebra")
        object.__setattr__(self, "generators", gens)


@dataclass(frozen=True)
class ReesData:
    newton: SigmaPolyhedron
    rees_divisor: PolyhedralDivisor
    rees_cone: Cone

    @property
    def curve(self):
        return self.rees_divisor.curve

    @property
    def rank(self):
        return self.newton.dim


def newton_polyhedron(ideal):
    dual = ideal.ambient.weight_cone()
    return SigmaPolyhedron.from_vertices([g.weight for g in ideal.generators], dual)


def rees_weight_cone(p):
    """cone((v, 1) for vertices v of P, (r, 0) for rays r of its recession cone)."""
    return p.homogenization()


def _lift(weight, e):
    return tuple(weight) + (e,)


def ideal_closure(ideal, method="formula"):
    """Rees data of the closure of I.

    ``method="formula"`` intersects the coefficients directly;
    ``method="rees"`` normalizes the Rees algebra presented by section
    generators of A in degree 0 and the generators of I in degree 1.
    Both must agree.
    """
    a = ideal.ambient
    d = a.divisor
    p = newton_polyhedron(ideal)
    omega = rees_weight_cone(p)
    tail = omega.dual()
    if method == "rees":
        gens = [HomogeneousElement(g.function, _lift(g.weight, 0)) for g in section_generators(a)]
        gens += [HomogeneousElement(g.function, _lift(g.weight, 1)) for g in ideal.generators]
        return ReesData(p, divisor_from_generators(a.curve, gens, tail), omega)
    if method != "formula":
        raise ValueError(f"unknown method {method!r}")
    pts = set(d.support())
    for g in ideal.generators:
        pts.update(g.function.support(a.curve))
    coeffs = {}
    for z in sorted(pts, key=point_key):
        ineqs = [(_lift(g.weight, 1), -g.function.order_at(z)) for g in ideal.generators]
        ineqs += [(_lift(n, 0), b) for n, b in d.coefficient(z).halfspaces()]
        coeffs[z] = polyhedron_from_inequalities(ineqs, tail)
    return ReesData(p, PolyhedralDivisor(a.curve, tail, coeffs), omega)


def closure_graded_piece(rees, m, e):
    """Degree m part of the closure of I^e."""
    m = tuple(m)
    if e < 0 or not dilate(rees.newton, e).contains(m):
        raise WeightOutsideDilatedNewton(f"{m} is not in {e} times the Newton polyhedron")
    return global_sections(rees.rees_divisor.evaluate(_lift(m, e)).floor())


def monomial_closure(exponents, sigma_dual):
    """Lattice generators of the closure of a monomial ideal: P ∩ M with P = conv(exponents) + cone."""
    return module_generators(SigmaPolyhedron.from_vertices([tuple(x) for x in exponents], sigma_dual))


def local_region(rees, z, e):
    """{(m, i) : m in eP, i >= -h_z(m, e)}, h_z the support function of D~_z.

    Its lattice points (m, i) are exactly the pairs for which (z - a)^i chi^m
    lies in the closure of I^e locally at the point a = z.
    """
    q = rees.rees_divisor.coefficient(z)
    pe = dilate(rees.newton, e)
    ineqs = [(n + (0,), b) for n, b in pe.halfspaces()]
    for vert in q.vertices:
        v, p = vert[:-1], vert[-1]
        ineqs.append((tuple(v) + (1,), -e * p))
    return SigmaPolyhedron.from_inequalities(ineqs, dim=rees.rank + 1)


def generic_point(rees):
    """A finite point outside the support of D~."""
    finite = [z for z in rees.rees_divisor.support() if z is not INF]
    return (max(finite) + 1) if finite else Fraction(0)


def closure_generators(rees):
    """Homogeneous generators of the closure of I (affine line).

    Locally at each point the closure is generated by the module generators
    of ``local_region``; one global section per such weight covers all of
    them at once.
    """
    if rees.curve != AFFINE:
        raise NotAffine("closure generators are computed on the affine line")
    weights = set(module_generators(rees.newton).generators)
    for z in rees.rees_divisor.support():
        for x in module_generators(local_region(rees, z, 1)).generators:
            weights.add(x[:-1])
    out = []
    for m in sorted(weights):
        out.append(HomogeneousElement(closure_graded_piece(rees, m, 1).generator, m))
    return tuple(out)


def _slice(cone, e):
    ineqs = [(f[:-1], -f[-1] * e) for f in cone.facets]
    eqs = [(f[:-1], -f[-1] * e) for f in cone.equations]
    return SigmaPolyhedron.from_inequalities(ineqs, eqs, dim=cone.dim - 1)


def _attaining_section(space, z, value):
    for f in space.basis:
        if f.order_at(z) == -value:
            return f
    return None


def verify_correspondence(rees, a, slice_degrees=(0, 1, 2, 3)):
    """Check the conditions characterizing Rees data of a closed ideal.

    newton: P has lattice vertices carrying nonzero pieces of A and tail dual(sigma);
    slice: the cone over P cut at height e is eP;
    projection: forgetting p maps D~_z onto D_z, with vertices in p <= 0;
    facets: every facet of D~_z not coming from D_z x Q reads <m, v> + p >= e
    with m a lattice point of P and e an integer (on the projective line also
    realized by an element of the closure).
    """
    report = VerificationReport()
    p = rees.newton
    d = a.divisor
    dual = a.weight_cone()
    ok = p.recession == dual and p.is_integral()
    bad = [v for v in p.vertices if p.is_integral() and graded_piece(a, la.integral(v)).is_zero()]
    report.add("newton", ok and not bad, "vertices integral with nonzero pieces" if ok and not bad else f"{bad}")

    omega = rees.rees_cone
    bad = [e for e in slice_degrees if _slice(omega, e) != dilate(p, e)]
    tail_ok = rees.rees_divisor.sigma == omega.dual()
    report.add("slice", not bad and tail_ok, f"heights {list(slice_degrees)}" if not bad else f"fails at {bad}")

    pts = sorted(set(d.support()) | set(rees.rees_divisor.support()), key=point_key)
    bad = []
    for z in pts:
        q = rees.rees_divisor.coefficient(z)
        if project_last(q) != d.coefficient(z) or any(v[-1] > 0 for v in q.vertices):
            bad.append(z)
    report.add("projection", not bad, f"{len(pts)} points" if not bad else f"fails at {bad}")

    bad = []
    for z in rees.rees_divisor.support():
        q = rees.rees_divisor.coefficient(z)
        for normal, b in q.inequalities:
            c = normal[-1]
            if c == 0:
                continue
            m = la.integral(la.scale(Fraction(1, c), normal[:-1]))
            e = Fraction(b) / c
            if c < 0 or m is None or e.denominator != 1 or not p.contains(m):
                bad.append((z, normal, b))
                continue
            if a.curve == PROJECTIVE:
                space = global_sections(rees.rees_divisor.evaluate(_lift(m, 1)).floor())
                if _attaining_section(space, z, e) is None:
                    bad.append((z, normal, b))
    report.add("facets", not bad, "all facets of the form <m,v> + p >= e" if not bad else f"fails at {bad[:3]}")
    return report


def _normal_cone_points(q):
    """One lattice point in the interior of the normal cone of each vertex of q."""
    dual = q.recession.dual()
    out = []
    for v in q.vertices:
        ineqs = list(dual.facets) + [la.primitive(la.sub(w, v)) for w in q.vertices if w != v]
        cone = Cone.from_inequalities(ineqs, dual.equations, dim=q.dim)
        x = cone.interior_point()
        if any(x):
            out.append(x)
    return out


def ideal_condition_weights(rees, a):
    """Weights (m, e) probing the ideal condition: interior points of the
    normal cones at all vertices of D~_z and D_z, scaled to make D~ integral."""
    pts = set(a.divisor.support()) | set(rees.rees_divisor.support())
    raw = set()
    for z in pts:
        raw.update(_normal_cone_points(rees.rees_divisor.coefficient(z)))
        raw.update(x + (0,) for x in _normal_cone_points(a.divisor.coefficient(z)))
    omega = rees.rees_cone
    out = []
    for w in sorted(raw):
        if not omega.contains(w):
            continue
        k = 1
        for _, q in rees.rees_divisor.coefficients:
            k = math.lcm(k, support_function(q, w).denominator)
        out.append(la.scale(k, w))
    return out


def _contained(s1, s2):
    if s1.is_zero():
        return True
    # spans of g z^j form intervals, so the two ends decide
    return s2.contains(s1.basis[0]) and s2.contains(s1.basis[-1])


def rees_ideal_condition(rees, a, weights):
    """At each (m, e): degree 0 pieces equal A_m, higher pieces lie inside A_m."""
    failures = []
    for w in weights:
        m, e = tuple(w[:-1]), w[-1]
        if not rees.rees_cone.contains(w):
            continue
        piece = global_sections(rees.rees_divisor.evaluate(w).floor())
        base = graded_piece(a, m)
        if e == 0:
            ok = piece.divisor == base.divisor
        else:
            ok = _contained(piece, base)
        if not ok:
            failures.append(w)
    return not failures, failures
