"""Polyhedral divisors on the line and their multigraded algebras.

A polyhedral divisor assigns a polyhedron with recession cone sigma to each
point of the curve; all but finitely many coefficients are sigma itself.
Evaluating at a weight m of the dual cone gives the Q-divisor
sum_z h_z(m) [z], and the algebra is the sum over weights m of the sections
of its round-down.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg as la
from .curve import AFFINE, INF, PROJECTIVE, QDivisor, RationalFunction, as_point, check_curve
from .curve import global_sections, point_key
from .errors import DimensionMismatch, GeneratorNotInAlgebra, ImproperDivisor
from .errors import PointNotOnCurve, RecessionMismatch, WeightOutsideCone
from .polyhedral import Cone, SigmaPolyhedron, minkowski_sum, support_function


class PolyhedralDivisor:
    __slots__ = ("curve", "sigma", "coefficients", "_dual")

    def __init__(self, curve, sigma, coefficients=None):
        check_curve(curve)
        if not sigma.is_pointed():
            raise RecessionMismatch("the tail cone of a polyhedral divisor must be pointed")
        coeffs = {}
        for z, p in dict(coefficients or {}).items():
            z = as_point(z)
            if z is INF and curve == AFFINE:
                raise PointNotOnCurve("the affine line has no point at infinity")
            if p.recession != sigma:
                raise RecessionMismatch(f"coefficient at {z} has recession cone {p.recession!r}")
            if z in coeffs:
                raise ValueError(f"duplicate coefficient at {z}")
            if p != SigmaPolyhedron.from_cone(sigma):
                coeffs[z] = p
        self.curve = curve
        self.sigma = sigma
        self.coefficients = tuple(sorted(coeffs.items(), key=lambda t: point_key(t[0])))
        self._dual = sigma.dual()

    @property
    def rank(self):
        return self.sigma.dim

    def support(self):
        return [z for z, _ in self.coefficients]

    def coefficient(self, z):
        z = as_point(z)
        for w, p in self.coefficients:
            if w == z:
                return p
        return SigmaPolyhedron.from_cone(self.sigma)

    def weight_cone(self):
        """The dual cone of sigma, where the algebra's weights live."""
        return self._dual

    def evaluate(self, m):
        m = tuple(m)
        if len(m) != self.rank:
            raise DimensionMismatch("weight has the wrong rank")
        if not self._dual.contains(m):
            raise WeightOutsideCone(f"{m} is not in the dual of the tail cone")
        return QDivisor(self.curve, {z: support_function(p, m) for z, p in self.coefficients})

    def degree_polyhedron(self):
        """Minkowski sum of all coefficients; its support function is deg D(m)."""
        total = SigmaPolyhedron.from_cone(self.sigma)
        for _, p in self.coefficients:
            total = minkowski_sum(total, p)
        return total

    def _key(self):
        return (self.curve, self.sigma, self.coefficients)

    def __eq__(self, other):
        return isinstance(other, PolyhedralDivisor) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        body = ", ".join(f"{z}: {p!r}" for z, p in self.coefficients)
        return f"PolyhedralDivisor({self.curve}, sigma={self.sigma!r}, {{{body}}})"


def evaluate(d, m):
    return d.evaluate(m)


@dataclass(frozen=True)
class ProperCertificate:
    """Outcome of the properness test.

    On the affine line every polyhedral divisor is proper.  On the projective
    line the degree map m -> deg D(m) is the support function of the
    Minkowski sum of the coefficients, linear on the cones of its normal fan
    inside the dual cone; it is checked on every ray of that fan and at one
    interior point.  The principal-multiple condition is automatic on the
    line since every degree zero divisor there is principal.
    """

    proper: bool
    curve: str
    ray_degrees: tuple = ()
    interior_point: tuple = None
    interior_degree: Fraction = None
    failing_weight: tuple = None
    reason: str = ""

    def __bool__(self):
        return self.proper


def _normal_fan_rays(total, dual):
    rays = set()
    for v in total.vertices:
        ineqs = list(dual.facets)
        for w in total.vertices:
            if w != v:
                ineqs.append(la.primitive(la.sub(w, v)))
        ineqs += [la.primitive(r) for r in total.recession.rays]
        cone = Cone.from_inequalities(ineqs, dual.equations, dim=dual.dim)
        rays.update(cone.generators())
    return sorted(rays)


def is_proper(d):
    if d.curve == AFFINE:
        return ProperCertificate(True, AFFINE, reason="every polyhedral divisor on an affine curve is proper")
    dual = d.weight_cone()
    total = d.degree_polyhedron()
    checked = []
    for m in _normal_fan_rays(total, dual):
        deg = support_function(total, m)
        checked.append((m, deg))
        if deg < 0:
            return ProperCertificate(
                False, PROJECTIVE, tuple(checked), failing_weight=m, reason="negative degree on a ray of the normal fan"
            )
    x = dual.interior_point()
    deg = support_function(total, x)
    if deg <= 0:
        return ProperCertificate(
            False,
            PROJECTIVE,
            tuple(checked),
            x,
            deg,
            failing_weight=x,
            reason="degree vanishes at an interior weight",
        )
    return ProperCertificate(
        True, PROJECTIVE, tuple(checked), x, deg, reason="degree zero divisors on the projective line are principal"
    )


@dataclass(frozen=True)
class HomogeneousElement:
    function: RationalFunction
    weight: tuple

    def __post_init__(self):
        object.__setattr__(self, "weight", tuple(int(x) for x in self.weight))

    def __mul__(self, other):
        return HomogeneousElement(self.function * other.function, la.add(self.weight, other.weight))

    def __repr__(self):
        return f"{self.function!r}*chi^{self.weight}"


@dataclass(frozen=True)
class MultigradedAlgebra:
    """The algebra of a proper polyhedral divisor."""

    divisor: PolyhedralDivisor
    certificate: ProperCertificate = field(default=None, compare=False)

    def __post_init__(self):
        cert = is_proper(self.divisor)
        if not cert:
            raise ImproperDivisor(cert.reason)
        if self.divisor.curve == PROJECTIVE and self.divisor.sigma.is_zero():
            raise ImproperDivisor("an elliptic algebra needs a nonzero tail cone")
        object.__setattr__(self, "certificate", cert)

    @property
    def curve(self):
        return self.divisor.curve

    @property
    def rank(self):
        return self.divisor.rank

    @property
    def sigma(self):
        return self.divisor.sigma

    def weight_cone(self):
        return self.divisor.weight_cone()


def graded_piece(a, m):
    """Sections of the round-down of D(m)."""
    return global_sections(a.divisor.evaluate(m).floor())


def contains_element(a, g):
    """True iff the homogeneous element lies in the algebra."""
    m = g.weight
    if len(m) != a.rank:
        raise DimensionMismatch("weight has the wrong rank")
    if not a.weight_cone().contains(m):
        return False
    return (g.function.divisor(a.curve) + a.divisor.evaluate(m)).is_effective()


def require_element(a, g):
    if not contains_element(a, g):
        raise GeneratorNotInAlgebra(f"{g!r} is not in the algebra")


def is_elliptic(a):
    return a.curve == PROJECTIVE
