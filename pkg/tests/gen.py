"""Seeded random instances shared by the property tests."""

import random
from fractions import Fraction

from tvarkit.curve import AFFINE, PROJECTIVE, RationalFunction
from tvarkit.divisor import HomogeneousElement, MultigradedAlgebra, PolyhedralDivisor, graded_piece
from tvarkit.ideals import HomogeneousIdeal
from tvarkit.normalization import AlgebraPresentation
from tvarkit.polyhedral import Cone, SigmaPolyhedron


def rng_for(name, seed=0):
    return random.Random(f"{name}:{seed}")


def rand_vector(rng, dim, lo=-3, hi=3):
    return tuple(rng.randint(lo, hi) for _ in range(dim))


def rand_rational(rng, lo=-2, hi=2):
    den = rng.choice((1, 1, 2, 3))
    return Fraction(rng.randint(lo * den, hi * den), den)


def rand_cone(rng, dim, pointed=True, full=True):
    """A random cone with small integer rays."""
    while True:
        rays = [rand_vector(rng, dim, -2, 3) for _ in range(rng.randint(1, dim + 2))]
        c = Cone.from_rays(rays, dim=dim)
        if c.is_zero():
            continue
        if pointed and not c.is_pointed():
            continue
        if full and not c.is_full_dimensional():
            continue
        return c


def rand_polyhedron(rng, sigma, nverts=None):
    nverts = nverts or rng.randint(1, 3)
    verts = [tuple(rand_rational(rng) for _ in range(sigma.dim)) for _ in range(nverts)]
    return SigmaPolyhedron.from_vertices(verts, sigma)


def rand_function(rng, roots=(0, 1, 2), lo=-2, hi=2):
    return RationalFunction(rng.choice((1, 2, -1)), {a: rng.randint(lo, hi) for a in rng.sample(roots, rng.randint(0, len(roots)))})


def polynomial_ring(n):
    return MultigradedAlgebra(PolyhedralDivisor(AFFINE, Cone.orthant(n), {}))


def rand_affine_algebra(rng, rank, sigma=None):
    sigma = sigma or rand_cone(rng, rank)
    coeffs = {}
    for z in rng.sample((0, 1, 2), rng.randint(0, 2)):
        coeffs[z] = rand_polyhedron(rng, sigma)
    return MultigradedAlgebra(PolyhedralDivisor(AFFINE, sigma, coeffs))


def rand_presentation(rng, curve, rank):
    """Generators with weights spanning a full-dimensional cone.

    The weights span a pointed cone, so the degree zero part is the
    coordinate ring of the curve.  On the projective line two generators
    share a weight with a non-constant ratio, so that the invariant field
    is the function field of the line.
    """
    while True:
        weights = [rand_vector(rng, rank, -1, 3) for _ in range(rank + rng.randint(0, 2))]
        cone = Cone.from_rays(weights, dim=rank)
        if not cone.is_full_dimensional() or any(not any(w) for w in weights):
            continue
        if not cone.is_pointed():
            continue
        break
    gens = [HomogeneousElement(rand_function(rng), w) for w in weights]
    if curve == PROJECTIVE:
        g = gens[0]
        a = rng.choice((0, 1, 2))
        gens.append(HomogeneousElement(g.function * RationalFunction.linear(a), g.weight))
    return AlgebraPresentation(curve, gens)


def rand_elements(rng, a, count, box=3):
    """Homogeneous elements of ``a`` taken from its graded pieces."""
    dual = a.weight_cone()
    out = []
    while len(out) < count:
        m = rand_vector(rng, a.rank, -box, box)
        if not dual.contains(m):
            continue
        piece = graded_piece(a, m)
        if piece.is_zero():
            continue
        f = piece.generator if a.curve == AFFINE else rng.choice(piece.basis)
        extra = RationalFunction(1, {rng.choice((0, 1, 2)): rng.randint(0, 2)})
        out.append(HomogeneousElement(f * extra if a.curve == AFFINE else f, m))
    return out


def rand_ideal(rng, a, count=None):
    return HomogeneousIdeal(a, rand_elements(rng, a, count or rng.randint(1, 3)))
