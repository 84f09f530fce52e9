"""Rational functions, Q-divisors and global sections on the affine and
projective line over Q.

Functions are kept in factored form c * prod (z - a)^e, so valuations are
read off directly.  Points are rationals or the point at infinity ``INF``.
"""

from fractions import Fraction
from math import floor

from .errors import DegreeOnAffineCurve, NonIntegralDivisor, PointNotOnCurve

AFFINE = "affine-line"
PROJECTIVE = "projective-line"
CURVES = (AFFINE, PROJECTIVE)


class _Infinity:
    __slots__ = ()

    def __repr__(self):
        return "inf"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return "INF"


INF = _Infinity()


def as_point(z):
    if z is INF or z == "inf":
        return INF
    if isinstance(z, float):
        raise TypeError("points must be exact rationals, not floats")
    return Fraction(z)


def point_key(z):
    return (1, Fraction(0)) if z is INF else (0, z)


def point_str(z):
    return "inf" if z is INF else str(z)


def check_curve(curve):
    if curve not in CURVES:
        raise ValueError(f"unknown curve {curve!r}")
    return curve


class RationalFunction:
    """c * prod (z - a)^e with c a nonzero rational and integer exponents."""

    __slots__ = ("unit", "factors")

    def __init__(self, unit=1, factors=None):
        if isinstance(unit, float):
            raise TypeError("unit must be an exact rational")
        unit = Fraction(unit)
        if unit == 0:
            raise ValueError("the zero function has no divisor")
        merged = {}
        items = factors.items() if isinstance(factors, dict) else (factors or ())
        for a, e in items:
            a = as_point(a)
            if a is INF:
                raise ValueError("factors are attached to finite points")
            if int(e) != e:
                raise ValueError("exponents must be integers")
            merged[a] = merged.get(a, 0) + int(e)
        self.unit = unit
        self.factors = tuple(sorted((a, e) for a, e in merged.items() if e))

    @classmethod
    def z(cls):
        return cls(1, {0: 1})

    @classmethod
    def linear(cls, a, e=1):
        return cls(1, {a: e})

    def order_at(self, z):
        """Valuation at z; at INF this is minus the total degree."""
        if z is INF:
            return -sum(e for _, e in self.factors)
        z = Fraction(z)
        for a, e in self.factors:
            if a == z:
                return e
        return 0

    def degree(self):
        return sum(e for _, e in self.factors)

    def support(self, curve):
        pts = [a for a, _ in self.factors]
        if curve == PROJECTIVE and self.degree() != 0:
            pts.append(INF)
        return pts

    def divisor(self, curve):
        check_curve(curve)
        coeffs = dict(self.factors)
        if curve == PROJECTIVE:
            coeffs[INF] = -self.degree()
        return QDivisor(curve, coeffs)

    def is_polynomial(self):
        return all(e >= 0 for _, e in self.factors)

    def is_constant(self):
        return not self.factors

    def normalized(self):
        """Same factors with unit one."""
        return RationalFunction(1, self.factors)

    def __mul__(self, other):
        if not isinstance(other, RationalFunction):
            return RationalFunction(self.unit * Fraction(other), self.factors)
        f = dict(self.factors)
        for a, e in other.factors:
            f[a] = f.get(a, 0) + e
        return RationalFunction(self.unit * other.unit, f)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, RationalFunction):
            return RationalFunction(self.unit / Fraction(other), self.factors)
        return self * other.inverse()

    def inverse(self):
        return RationalFunction(1 / self.unit, {a: -e for a, e in self.factors})

    def __pow__(self, k):
        return RationalFunction(self.unit**k, {a: e * k for a, e in self.factors})

    def coefficients(self):
        """Polynomial coefficients (constant term first); only for polynomials."""
        if not self.is_polynomial():
            raise ValueError("not a polynomial")
        coeffs = [self.unit]
        for a, e in self.factors:
            for _ in range(e):
                nxt = [Fraction(0)] * (len(coeffs) + 1)
                for i, c in enumerate(coeffs):
                    nxt[i + 1] += c
                    nxt[i] -= a * c
                coeffs = nxt
        return coeffs

    def __call__(self, x):
        x = Fraction(x)
        val = self.unit
        for a, e in self.factors:
            val *= (x - a) ** e
        return val

    def _key(self):
        return (self.unit, self.factors)

    def __eq__(self, other):
        return isinstance(other, RationalFunction) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        parts = []
        for a, e in self.factors:
            base = "z" if a == 0 else (f"(z-{a})" if a > 0 else f"(z+{-a})")
            parts.append(base if e == 1 else f"{base}^{e}")
        if not parts:
            return str(self.unit)
        body = "*".join(parts)
        return body if self.unit == 1 else f"{self.unit}*{body}"


class QDivisor:
    """Finite formal sum of points with rational coefficients."""

    __slots__ = ("curve", "coeffs")

    def __init__(self, curve, coeffs=None):
        check_curve(curve)
        clean = {}
        for z, c in (coeffs or {}).items():
            z = as_point(z)
            if z is INF and curve == AFFINE:
                raise PointNotOnCurve("the affine line has no point at infinity")
            if isinstance(c, float):
                raise TypeError("coefficients must be exact rationals")
            c = Fraction(c)
            if c:
                clean[z] = clean.get(z, Fraction(0)) + c
        self.curve = curve
        self.coeffs = {z: c for z, c in sorted(clean.items(), key=lambda t: point_key(t[0])) if c}

    def coefficient(self, z):
        return self.coeffs.get(as_point(z), Fraction(0))

    def support(self):
        return list(self.coeffs)

    def degree(self):
        if self.curve != PROJECTIVE:
            raise DegreeOnAffineCurve("degree is only defined on the projective line")
        return sum(self.coeffs.values(), Fraction(0))

    def floor(self):
        return QDivisor(self.curve, {z: floor(c) for z, c in self.coeffs.items()})

    def is_integral(self):
        return all(c.denominator == 1 for c in self.coeffs.values())

    def is_effective(self):
        return all(c >= 0 for c in self.coeffs.values())

    def _combine(self, other, sign):
        if other.curve != self.curve:
            raise ValueError("divisors on different curves")
        out = dict(self.coeffs)
        for z, c in other.coeffs.items():
            out[z] = out.get(z, Fraction(0)) + sign * c
        return QDivisor(self.curve, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return QDivisor(self.curve, {z: -c for z, c in self.coeffs.items()})

    def __mul__(self, k):
        return QDivisor(self.curve, {z: Fraction(k) * c for z, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __le__(self, other):
        return (other - self).is_effective()

    def __ge__(self, other):
        return (self - other).is_effective()

    def __eq__(self, other):
        return isinstance(other, QDivisor) and self.curve == other.curve and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.curve, tuple(self.coeffs.items())))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*[{point_str(z)}]" for z, c in self.coeffs.items())


def pointwise_min(divisors):
    divisors = list(divisors)
    pts = {z for d in divisors for z in d.coeffs}
    return QDivisor(divisors[0].curve, {z: min(d.coefficient(z) for d in divisors) for z in pts})


class SectionSpace:
    """H^0(C, O(D)) for an integral divisor D.

    On the affine line this is the free k[z]-module generated by
    ``generator``.  On the projective line it is the vector space with basis
    ``basis`` = generator * z^j, j = 0..deg D.
    """

    __slots__ = ("divisor", "generator", "_basis")

    def __init__(self, divisor, generator, basis=None):
        self.divisor = divisor
        self.generator = generator
        self._basis = None if basis is None else tuple(basis)

    @property
    def basis(self):
        # built on demand: high degree pieces have long bases
        if self._basis is None:
            if self.generator is None:
                self._basis = ()
            elif self.curve == AFFINE:
                self._basis = (self.generator,)
            else:
                z = RationalFunction.z()
                self._basis = tuple(self.generator * z**j for j in range(int(self.divisor.degree()) + 1))
        return self._basis

    @property
    def curve(self):
        return self.divisor.curve

    def is_zero(self):
        return self.generator is None

    def dimension(self):
        """k-dimension on the projective line, None (infinite) on the affine line."""
        if self.curve == AFFINE:
            return None
        return 0 if self.generator is None else int(self.divisor.degree()) + 1

    def contains(self, f):
        """Membership read off the module/span structure."""
        if self.generator is None:
            return False
        q = f / self.generator
        if not q.is_polynomial():
            return False
        if self.curve == PROJECTIVE:
            return q.degree() <= self.divisor.degree()
        return True

    def __repr__(self):
        if self.curve == AFFINE:
            return f"SectionSpace(k[z] * {self.generator!r})"
        return f"SectionSpace(basis={list(self.basis)!r})"


def global_sections(d):
    """Sections f with div(f) + D >= 0 (f = 0 excluded)."""
    if not d.is_integral():
        raise NonIntegralDivisor("global sections need an integral divisor; take the floor first")
    g = RationalFunction(1, {z: -int(c) for z, c in d.coeffs.items() if z is not INF})
    if d.curve == PROJECTIVE and d.degree() < 0:
        return SectionSpace(d, None, ())
    return SectionSpace(d, g)
