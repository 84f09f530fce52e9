from fractions import Fraction as F

import pytest

from gen import polynomial_ring
from tvarkit.curve import AFFINE, INF, PROJECTIVE, RationalFunction
from tvarkit.divisor import HomogeneousElement, MultigradedAlgebra, PolyhedralDivisor, graded_piece
from tvarkit.errors import GeneratorNotInAlgebra, NotAffine, WeightOutsideDilatedNewton
from tvarkit.ideals import (
    HomogeneousIdeal,
    ReesData,
    closure_generators,
    closure_graded_piece,
    ideal_closure,
    ideal_condition_weights,
    monomial_closure,
    newton_polyhedron,
    rees_ideal_condition,
    rees_weight_cone,
    verify_correspondence,
)
from tvarkit.lattice import module_generators
from tvarkit.normalization import AlgebraPresentation, normalize
from tvarkit.polyhedral import Cone, SigmaPolyhedron, polyhedron_from_inequalities

Q2 = Cone.orthant(2)
Q3 = Cone.orthant(3)
z = RationalFunction.z()
one = RationalFunction(1)


def el(f, w):
    return HomogeneousElement(f, w)


def ex25():
    gens = [
        el(z / RationalFunction.linear(1), (2, 0)),
        el(one, (0, 1)),
        el(z, (2, 2)),
        el(z**2 / RationalFunction.linear(1), (3, 2)),
    ]
    return normalize(AlgebraPresentation(PROJECTIVE, gens)), gens


def test_newton_polyhedra():
    ring = polynomial_ring(2)
    i = HomogeneousIdeal(ring, [el(one, (3, 0)), el(one, (0, 3))])
    assert newton_polyhedron(i) == SigmaPolyhedron.from_vertices([(3, 0), (0, 3)], Q2)
    a, gens = ex25()
    assert newton_polyhedron(HomogeneousIdeal(a, gens[1:])) == SigmaPolyhedron.from_vertices([(0, 1)], Q2)
    assert newton_polyhedron(HomogeneousIdeal(a, gens[:1])) == SigmaPolyhedron.from_vertices([(2, 0)], Q2)


def test_rees_weight_cones():
    assert rees_weight_cone(SigmaPolyhedron.from_vertices([(0, 1)], Q2)) == Cone.from_rays(
        [(0, 1, 1), (1, 0, 0), (0, 1, 0)]
    )
    assert rees_weight_cone(SigmaPolyhedron.from_cone(Q2)) == Q3
    assert rees_weight_cone(SigmaPolyhedron.from_vertices([(3, 0), (0, 3)], Q2)) == Cone.from_rays(
        [(3, 0, 1), (0, 3, 1), (1, 0, 0), (0, 1, 0)]
    )


def test_example_rees_divisor_both_methods():
    a, gens = ex25()
    ideal = HomogeneousIdeal(a, gens[1:])
    rees = ideal_closure(ideal)
    tail = rees.rees_cone.dual()
    assert tail == Cone.from_rays([(0, 0, 1), (0, 1, -1), (1, 0, 0)])
    assert rees.rees_divisor.coefficient(INF) == SigmaPolyhedron.from_vertices(
        [(0, 1, -1), (F(1, 2), 0, 0), (0, F(1, 2), 0)], tail
    )
    assert ideal_closure(ideal, method="rees").rees_divisor == rees.rees_divisor
    rep = verify_correspondence(rees, a)
    assert rep.ok, rep.lines()
    with pytest.raises(ValueError):
        ideal_closure(ideal, method="other")


def test_unit_ideal():
    a, _ = ex25()
    rees = ideal_closure(HomogeneousIdeal(a, [el(one, (0, 0))]))
    for zz in (0, 1, INF):
        q = rees.rees_divisor.coefficient(zz)
        base = a.divisor.coefficient(zz)
        assert q == SigmaPolyhedron.from_vertices([v + (0,) for v in base.vertices], rees.rees_divisor.sigma)
    for m in [(1, 0), (2, 3)]:
        assert closure_graded_piece(rees, m, 1).divisor == graded_piece(a, m).divisor


def test_monomial_ideal_over_zero_divisor():
    ring = polynomial_ring(2)
    rees = ideal_closure(HomogeneousIdeal(ring, [el(one, (3, 0)), el(one, (0, 3))]))
    assert rees.rees_divisor.support() == []
    weights = {g.weight for g in closure_generators(rees)}
    assert weights == {(3, 0), (2, 1), (1, 2), (0, 3)}


def test_monomial_closure():
    assert set(monomial_closure([(3, 0), (0, 3)], Q2).generators) == {(3, 0), (2, 1), (1, 2), (0, 3)}
    assert monomial_closure([(1, 2)], Q2).generators == ((1, 2),)
    rem = monomial_closure([(2, 0, 0), (0, 3, 0), (0, 0, 7)], Q3)
    p = SigmaPolyhedron.from_vertices([(2, 0, 0), (0, 3, 0), (0, 0, 7)], Q3)
    assert rem.generators == module_generators(p).generators


def test_closure_piece_outside_newton():
    ring = polynomial_ring(2)
    rees = ideal_closure(HomogeneousIdeal(ring, [el(one, (3, 0)), el(one, (0, 3))]))
    with pytest.raises(WeightOutsideDilatedNewton):
        closure_graded_piece(rees, (1, 1), 1)
    assert closure_graded_piece(rees, (1, 2), 1).generator == one


def test_closure_of_a_power_of_x0():
    ring = polynomial_ring(1)
    rees = ideal_closure(HomogeneousIdeal(ring, [el(z**2, (0,)), el(one, (1,))]))
    assert closure_graded_piece(rees, (0,), 2).generator == z**4
    assert closure_graded_piece(rees, (1,), 2).generator == z**2
    assert closure_graded_piece(rees, (2,), 2).generator == one


def test_generator_must_lie_in_algebra():
    ring = polynomial_ring(1)
    with pytest.raises(GeneratorNotInAlgebra):
        HomogeneousIdeal(ring, [el(z**-1, (1,))])


def test_closure_generators_affine_only():
    a, gens = ex25()
    with pytest.raises(NotAffine):
        closure_generators(ideal_closure(HomogeneousIdeal(a, gens[1:])))


def _translated(rees):
    shift = (0,) * rees.rank + (1,)
    d = rees.rees_divisor
    coeffs = {zz: q.translate(shift) for zz, q in d.coefficients}
    return ReesData(rees.newton, PolyhedralDivisor(d.curve, d.sigma, coeffs), rees.rees_cone)


def test_translated_data_fails_projection_and_ideal_condition():
    a, gens = ex25()
    rees = ideal_closure(HomogeneousIdeal(a, gens[1:]))
    bad = _translated(rees)
    assert not verify_correspondence(bad, a).checks["projection"][0]
    assert rees_ideal_condition(rees, a, ideal_condition_weights(rees, a))[0]
    ok, failures = rees_ideal_condition(bad, a, ideal_condition_weights(bad, a))
    assert not ok and failures


def test_non_lattice_facet_fails():
    # the facet 3v + 2p >= 1 reads m = 3/2, not a lattice point of P
    ring = polynomial_ring(1)
    rees = ideal_closure(HomogeneousIdeal(ring, [el(one, (1,))]))
    tail = rees.rees_divisor.sigma
    q = polyhedron_from_inequalities([(f, 0) for f in tail.facets] + [((3, 2), 1)], tail)
    assert ((3, 2), 1) in q.inequalities
    odd = ReesData(rees.newton, PolyhedralDivisor(AFFINE, tail, {0: q}), rees.rees_cone)
    rep = verify_correspondence(odd, ring)
    assert not rep.checks["facets"][0]
