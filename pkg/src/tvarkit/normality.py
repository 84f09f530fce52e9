"""Normality of the closure of an ideal on the affine line.

Locally at a point z the closure of I^e is described by the lattice points
(m, i) with m in eP and i >= -h_z(m, e); (z - a)^i chi^m is then a local
section.  The polyhedron P~_z spanned by these points in degree one is a
lattice polyhedron, and the closure of I is normal when every P~_z (at the
support of the Rees divisor and at one generic point) is normal.

Powers are compared against closures exactly, point by point: both sides
are modules over the local monoid, so it is enough to test the module
generators of the closure's local region.
"""

import math
from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import comb

from . import linalg as la
from .curve import AFFINE, RationalFunction
from .divisor import graded_piece
from .errors import NotAffine, TupleCapExceeded, VerificationFailed, WrongAmbient
from .ideals import closure_graded_piece, generic_point, ideal_closure, local_region
from .lattice import is_normal_polyhedron, lattice_points, module_generators
from .polyhedral import Cone, SigmaPolyhedron, bounding_box, support_function

DEFAULT_TUPLE_CAP = 20_000


@dataclass(frozen=True)
class PTildePolyhedron:
    point: object
    polyhedron: SigmaPolyhedron
    generators: tuple


@dataclass(frozen=True)
class NormalityResult:
    """``status`` is "normal" (certified) or "unknown" (criterion inconclusive)."""

    status: str
    certificates: tuple  # (point, PTildePolyhedron, NormalityVerdict)
    failures: tuple = ()

    @property
    def normal(self):
        return self.status == "normal"


@dataclass(frozen=True)
class PowerComparison:
    equal: bool
    e: int
    witness: tuple = None  # (m, point, closure exponent, power exponent)

    def __bool__(self):
        return self.equal


def _require_affine(rees):
    if rees.curve != AFFINE:
        raise NotAffine("this criterion is stated for ideals on the affine line")


def p_tilde(rees, z, margin=2):
    """conv{(m, i) in (P ∩ M) x Z : h_z(m, 1) >= -i}.

    Computed as the integer hull of ``local_region(rees, z, 1)``: its
    vertices are among the module generators of the lattice points, and the
    recession cone is that of the region.  The result is re-checked on a
    window around the vertices: lattice points of the hull and of the region
    must agree there.
    """
    _require_affine(rees)
    region = local_region(rees, z, 1)
    gens = module_generators(region).generators
    if not gens:
        raise VerificationFailed("the local region has no lattice points")
    hull = SigmaPolyhedron.from_vertices(gens, region.recession)
    lo, hi = bounding_box(hull.vertices)
    pad = [margin * (1 + sum(abs(r[i]) for r in region.recession.rays)) for i in range(hull.dim)]
    box = (tuple(l - p for l, p in zip(lo, pad)), tuple(h + p for h, p in zip(hi, pad)))
    if lattice_points(hull, box) != lattice_points(region, box):
        raise VerificationFailed(f"integer hull at {z} disagrees with the local region")
    return PTildePolyhedron(z, hull, gens)


def _points_to_check(rees):
    pts = list(rees.rees_divisor.support())
    pts.append(generic_point(rees))
    return pts


def normality_certificate(ideal, dim_bound=None):
    """Certify normality of the closure of ``ideal`` (affine line).

    Returns status "normal" when every P~_z is normal; otherwise "unknown"
    with the failing points and their witnesses, since the criterion is only
    sufficient.  ``dim_bound`` is passed on to the lattice polyhedron check.
    """
    rees = ideal_closure(ideal)
    _require_affine(rees)
    certs, fails = [], []
    for z in _points_to_check(rees):
        pt = p_tilde(rees, z)
        verdict = is_normal_polyhedron(pt.polyhedron, dim_bound)
        certs.append((z, pt, verdict))
        if not verdict:
            fails.append((z, verdict.witness))
    return NormalityResult("unknown" if fails else "normal", tuple(certs), tuple(fails))


def _tuples(ideal, e, cap):
    r = len(ideal.generators)
    if comb(r + e - 1, e) > cap:
        raise TupleCapExceeded(f"{comb(r + e - 1, e)} products of {e} generators exceed the cap {cap}")
    return list(combinations_with_replacement(range(r), e))


def local_power_exponent(ideal, z, m, e, tuples=None):
    """Minimal order at z of elements of I^e in degree m (None if the piece is zero)."""
    a = ideal.ambient
    d = a.divisor
    dual = a.weight_cone()
    coeff = d.coefficient(z)
    best = None
    for t in tuples if tuples is not None else _tuples(ideal, e, DEFAULT_TUPLE_CAP):
        gens = [ideal.generators[i] for i in t]
        rest = tuple(m)
        order = 0
        for g in gens:
            rest = la.sub(rest, g.weight)
            order += g.function.order_at(z)
        if not dual.contains(rest):
            continue
        val = order - math.floor(support_function(coeff, rest))
        if best is None or val < best:
            best = val
    return best


def power_closure_equal(ideal, e, tuple_cap=DEFAULT_TUPLE_CAP):
    """Is I^e equal to its closure?  Exact on the affine line.

    Both are fractional ideals of k[z] in each degree, so equality is tested
    locally at every point of the Rees divisor's support and at a generic
    point.  Locally both are modules over the lattice points of the region's
    recession cone; the power contains the closure iff it contains the
    closure's local module generators.
    """
    rees = ideal_closure(ideal)
    _require_affine(rees)
    tuples = _tuples(ideal, e, tuple_cap)
    for z in _points_to_check(rees):
        for x in module_generators(local_region(rees, z, e)).generators:
            m, i = x[:-1], x[-1]
            have = local_power_exponent(ideal, z, m, e, tuples)
            if have is None or have > i:
                return PowerComparison(False, e, (m, z, i, have))
    return PowerComparison(True, e)


def power_piece_generator(ideal, m, e, tuple_cap=DEFAULT_TUPLE_CAP):
    """Generator of the degree m piece of I^e as a fractional ideal of k[z].

    The gcd (pointwise minimal exponents) of f_T * g_{m - m_T} over all
    products T of e generators, g_w generating A_w.  None if the piece is zero.
    """
    a = ideal.ambient
    if a.curve != AFFINE:
        raise NotAffine("fractional ideal generators live on the affine line")
    dual = a.weight_cone()
    found = []
    for t in _tuples(ideal, e, tuple_cap):
        f = RationalFunction(1)
        rest = tuple(m)
        for i in t:
            f = f * ideal.generators[i].function
            rest = la.sub(rest, ideal.generators[i].weight)
        if dual.contains(rest):
            found.append(f * graded_piece(a, rest).generator)
    if not found:
        return None
    pts = {z for f in found for z, _ in f.factors}
    return RationalFunction(1, {z: min(f.order_at(z) for f in found) for z in pts})


def closure_piece_generator(rees, m, e):
    _require_affine(rees)
    return closure_graded_piece(rees, m, e).generator


@dataclass(frozen=True)
class RRVResult:
    normal: bool
    checked: tuple  # exponents e compared
    witness: tuple = None  # (e, m, point, closure exponent, power exponent)

    def __bool__(self):
        return self.normal


def is_polynomial_ambient(a):
    n = a.rank
    return a.curve == AFFINE and not a.divisor.coefficients and a.sigma == Cone.orthant(n)


def rrv_check(ideal, tuple_cap=DEFAULT_TUPLE_CAP):
    """For k[x_0, ..., x_n] graded by the exponents of x_1..x_n: an integrally
    closed invariant ideal is normal iff I^e is closed for e = 1..n."""
    a = ideal.ambient
    if not is_polynomial_ambient(a):
        raise WrongAmbient("expected the polynomial ring: affine line, zero divisor, orthant tail cone")
    checked = []
    for e in range(1, a.rank + 1):
        res = power_closure_equal(ideal, e, tuple_cap)
        checked.append(e)
        if not res:
            return RRVResult(False, tuple(checked), (e,) + res.witness)
    return RRVResult(True, tuple(checked))
