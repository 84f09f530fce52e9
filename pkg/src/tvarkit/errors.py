"""Exception types raised by tvarkit.

Every error carries a short machine-readable ``code`` which the command line
front end copies into result files.
"""


class TvarkitError(Exception):
    code = "error"


class DimensionMismatch(TvarkitError):
    code = "dimension-mismatch"


class Unbounded(TvarkitError):
    code = "unbounded"


class EmptyPolyhedron(TvarkitError):
    code = "empty-polyhedron"


class RecessionMismatch(TvarkitError):
    code = "recession-mismatch"


class NotPointed(TvarkitError):
    code = "not-pointed"


class NonIntegralVertices(TvarkitError):
    code = "non-integral-vertices"


class NonIntegralDivisor(TvarkitError):
    code = "non-integral-divisor"


class DegreeOnAffineCurve(TvarkitError):
    code = "degree-on-affine-curve"


class PointNotOnCurve(TvarkitError):
    code = "point-not-on-curve"


class WeightOutsideCone(TvarkitError):
    code = "weight-outside-cone"


class ImproperDivisor(TvarkitError):
    code = "improper-divisor"


class RankDeficient(TvarkitError):
    code = "rank-deficient"


class MixedSignsInParabolicMode(TvarkitError):
    code = "mixed-signs"


class GeneratorNotInAlgebra(TvarkitError):
    code = "generator-not-in-algebra"


class WeightOutsideDilatedNewton(TvarkitError):
    code = "weight-outside-dilated-newton"


class NotAffine(TvarkitError):
    code = "not-affine"


class WrongAmbient(TvarkitError):
    code = "wrong-ambient"


class VerificationFailed(TvarkitError):
    code = "verification-failed"


class TupleCapExceeded(TvarkitError):
    code = "tuple-cap-exceeded"
