"""From generators f_i chi^{m_i} to the polyhedral divisor of the normalization.

With sigma the dual of the weight cone, the coefficient at z is
{v in N_Q : <m_i, v> >= -ord_z(f_i) for all i}.
"""

import itertools
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg as la
from .curve import AFFINE, PROJECTIVE, QDivisor, RationalFunction, check_curve, point_key
from .divisor import HomogeneousElement, MultigradedAlgebra, PolyhedralDivisor
from .divisor import contains_element, graded_piece, is_proper
from .errors import DimensionMismatch, ImproperDivisor, MixedSignsInParabolicMode, RankDeficient
from .lattice import semigroup_generators
from .polyhedral import Cone, polyhedron_from_inequalities, support_function


@dataclass(frozen=True)
class AlgebraPresentation:
    curve: str
    generators: tuple

    def __post_init__(self):
        check_curve(self.curve)
        gens = tuple(self.generators)
        if not gens:
            raise ValueError("a presentation needs at least one generator")
        n = len(gens[0].weight)
        if any(len(g.weight) != n for g in gens):
            raise DimensionMismatch("generator weights have different ranks")
        object.__setattr__(self, "generators", gens)

    @property
    def rank(self):
        return len(self.generators[0].weight)


def weight_cone(pres):
    """cone(m_1, ..., m_r); must be full-dimensional so that its dual is pointed."""
    cone = Cone.from_rays([g.weight for g in pres.generators], dim=pres.rank)
    if not cone.is_full_dimensional():
        raise RankDeficient("the generator weights do not span the weight lattice")
    return cone


def _support_points(curve, gens):
    pts = set()
    for g in gens:
        pts.update(g.function.support(curve))
    return sorted(pts, key=point_key)


def divisor_from_generators(curve, gens, sigma):
    coeffs = {}
    for z in _support_points(curve, gens):
        ineqs = [(g.weight, -g.function.order_at(z)) for g in gens]
        coeffs[z] = polyhedron_from_inequalities(ineqs, sigma)
    return PolyhedralDivisor(curve, sigma, coeffs)


def normalize(pres):
    """Polyhedral divisor describing the normalization of k[C][f_1 chi^{m_1}, ...]."""
    sigma = weight_cone(pres).dual()
    if pres.curve == PROJECTIVE:
        funcs = [g.function.normalized() for g in pres.generators]
        if all(f == funcs[0] for f in funcs):
            warnings.warn("no quotient of generator functions is non-constant", stacklevel=2)
    d = divisor_from_generators(pres.curve, pres.generators, sigma)
    cert = is_proper(d)
    if not cert:
        raise ImproperDivisor(f"resulting divisor is not proper: {cert.reason}")
    return MultigradedAlgebra(d)


def dpd_presentation(pres):
    """Rank one presentations.

    All weights positive: the Q-divisor D with A = sum_k H^0(floor(kD)).
    Mixed signs on the affine line: the pair (D_minus, D_plus), the
    coefficients at weights -1 and 1.
    """
    if pres.rank != 1:
        raise DimensionMismatch("Dolgachev-Pinkham-Demazure presentations are rank one")
    signs = {1 if g.weight[0] > 0 else -1 if g.weight[0] < 0 else 0 for g in pres.generators}
    if 0 in signs:
        raise ValueError("weights must be nonzero")

    def bound(group):
        pts = _support_points(pres.curve, group)
        return QDivisor(
            pres.curve,
            {z: -min(Fraction(g.function.order_at(z), abs(g.weight[0])) for g in group) for z in pts},
        )

    if signs == {1}:
        return bound(pres.generators)
    if signs == {-1}:
        raise ValueError("all weights are negative; flip the grading")
    if pres.curve != AFFINE:
        raise MixedSignsInParabolicMode("weights of both signs need an affine curve")
    neg = [g for g in pres.generators if g.weight[0] < 0]
    pos = [g for g in pres.generators if g.weight[0] > 0]
    return bound(neg), bound(pos)


def _exact_multiple(d, w):
    """Smallest positive k with D(k w) integral at every point."""
    k = 1
    for _, p in d.coefficients:
        k = math.lcm(k, support_function(p, w).denominator)
    return tuple(k * x for x in w)


def section_generators(a):
    """Homogeneous elements of A whose normalization is A again.

    Weights are lattice generators of the dual cone, its rays and the facet
    normals of every coefficient, each scaled so that D is integral there.
    At such a weight the section space attains -ord_z = h_z(w) at every z,
    which recovers each facet exactly.  On the projective line the first
    and last basis elements g and g z^d already attain it at every point.
    """
    d = a.divisor
    dual = d.weight_cone()
    weights = set(semigroup_generators(dual)) | set(dual.rays)
    for _, p in d.coefficients:
        for normal, _ in p.inequalities:
            if dual.contains(normal):
                weights.add(normal)
    out = []
    for w in sorted(weights):
        w = _exact_multiple(d, w)
        piece = graded_piece(a, w)
        if piece.is_zero():
            continue
        ends = {piece.generator}
        if a.curve == PROJECTIVE:
            ends.add(piece.generator * RationalFunction.z() ** (piece.dimension() - 1))
        for f in sorted(ends, key=repr):
            out.append(HomogeneousElement(f, w))
    return tuple(out)


@dataclass
class VerificationReport:
    checks: dict = field(default_factory=dict)

    def add(self, name, ok, detail=""):
        self.checks[name] = (bool(ok), detail)

    @property
    def ok(self):
        return all(ok for ok, _ in self.checks.values())

    def lines(self):
        return [f"{'PASS' if ok else 'FAIL'} {name}: {detail}" for name, (ok, detail) in self.checks.items()]


def monomials_of_weight(gens, m, cap=10_000):
    """Exponent vectors a with sum a_i m_i = m (weights must span a pointed cone)."""
    cone = Cone.from_rays([g.weight for g in gens], dim=len(m))
    if not cone.is_pointed() or any(not any(g.weight) for g in gens):
        raise ValueError("monomial enumeration needs nonzero weights in a pointed cone")
    grading = tuple(sum(col) for col in zip(*cone.facets))
    out = []

    def rec(i, rest, acc):
        if i == len(gens):
            if not any(rest):
                out.append(tuple(acc))
                if len(out) > cap:
                    raise ValueError("too many monomials")
            return
        k, left = 0, rest
        while la.dot(grading, left) >= 0:
            rec(i + 1, left, acc + [k])
            k, left = k + 1, la.sub(left, gens[i].weight)

    rec(0, tuple(m), [])
    return out


def _monomial_function(gens, exps):
    f = RationalFunction(1)
    for g, k in zip(gens, exps):
        if k:
            f = f * g.function**k
    return f


def generated_piece_matches(a, gens, m):
    """Compare A_m with the degree-m part of the algebra generated by ``gens``.

    Affine line: the k[z]-module generated by the monomial functions has the
    pointwise-minimal exponents as generator.  Projective line: compare the
    dimension of the span of the monomial functions with dim A_m.
    """
    piece = graded_piece(a, m)
    monos = [_monomial_function(gens, e) for e in monomials_of_weight(gens, m)]
    if a.curve == AFFINE:
        if not monos:
            return False
        pts = {z for f in monos for z, _ in f.factors}
        gcd = {z: min(f.order_at(z) for f in monos) for z in pts}
        return RationalFunction(1, gcd) == piece.generator
    if piece.is_zero():
        return not monos
    if not monos:
        return False
    g = piece.generator
    deg = piece.dimension()
    rows = []
    for f in monos:
        c = (f / g).coefficients()
        rows.append(tuple(c) + (0,) * (deg - len(c)))
    return la.rank(rows, deg) == deg


def verify_normalization(pres, a, generation_box=None):
    """Check that ``a`` is the normalization of the presented algebra.

    (a) every generator lies in A, (b) the divisor is proper, (c) the
    divisor is recovered from section generators of A, and optionally (d)
    A_m agrees with the generated algebra for weights m in ``generation_box``.
    """
    report = VerificationReport()
    missing = [g for g in pres.generators if not contains_element(a, g)]
    report.add("generators-contained", not missing, f"{len(pres.generators) - len(missing)}/{len(pres.generators)}")
    report.add("proper", bool(is_proper(a.divisor)), is_proper(a.divisor).reason)
    again = divisor_from_generators(a.curve, section_generators(a), a.sigma)
    report.add("idempotent", again == a.divisor, "re-normalized divisor agrees" if again == a.divisor else repr(again))
    if generation_box is not None:
        lo, hi = generation_box
        dual = a.weight_cone()
        bad = []
        count = 0
        for m in itertools.product(*[range(x, y + 1) for x, y in zip(lo, hi)]):
            if not dual.contains(m):
                continue
            count += 1
            if not generated_piece_matches(a, pres.generators, m):
                bad.append(m)
        report.add("generation", not bad, f"{count} weights checked" + (f", mismatch at {bad[:3]}" if bad else ""))
    return report
