import warnings
from fractions import Fraction as F

import pytest

from gen import rand_presentation, rng_for
from tvarkit.curve import AFFINE, INF, PROJECTIVE, QDivisor, RationalFunction
from tvarkit.divisor import HomogeneousElement, PolyhedralDivisor
from tvarkit.errors import MixedSignsInParabolicMode, RankDeficient
from tvarkit.normalization import (
    AlgebraPresentation,
    dpd_presentation,
    generated_piece_matches,
    monomials_of_weight,
    normalize,
    section_generators,
    verify_normalization,
    weight_cone,
)
from tvarkit.polyhedral import Cone, SigmaPolyhedron

z = RationalFunction.z()
one = RationalFunction(1)


def el(f, w):
    return HomogeneousElement(f, w)


EX25 = AlgebraPresentation(
    PROJECTIVE,
    [
        el(z / RationalFunction.linear(1), (2, 0)),
        el(one, (0, 1)),
        el(z, (2, 2)),
        el(z**2 / RationalFunction.linear(1), (3, 2)),
    ],
)


def test_weight_cones():
    assert weight_cone(EX25) == Cone.orthant(2)
    std = AlgebraPresentation(AFFINE, [el(one, (1, 0, 0)), el(one, (0, 1, 0)), el(one, (0, 0, 1))])
    assert weight_cone(std) == Cone.orthant(3)
    ex26 = AlgebraPresentation(PROJECTIVE, [el(one, w) for w in [(0, 1), (6, -1), (2, 0), (3, 0)]])
    assert weight_cone(ex26) == Cone.from_rays([(0, 1), (6, -1)])
    assert weight_cone(ex26).dual() == Cone.from_rays([(1, 0), (1, 6)])


def test_rank_deficient():
    with pytest.raises(RankDeficient):
        weight_cone(AlgebraPresentation(AFFINE, [el(one, (1, 1)), el(z, (2, 2))]))


def test_monomial_presentation_gives_zero_divisor():
    pres = AlgebraPresentation(AFFINE, [el(one, (1, 0)), el(one, (0, 1))])
    a = normalize(pres)
    assert a.divisor == PolyhedralDivisor(AFFINE, Cone.orthant(2), {})
    assert verify_normalization(pres, a, generation_box=((0, 0), (3, 3))).ok


def test_example_coefficients_and_generation():
    a = normalize(EX25)
    q = Cone.orthant(2)
    assert a.divisor.coefficient(0) == SigmaPolyhedron.from_vertices([(F(-1, 2), 0)], q)
    assert a.divisor.coefficient(INF) == SigmaPolyhedron.from_vertices([(F(1, 2), 0), (0, F(1, 2))], q)
    rep = verify_normalization(EX25, a, generation_box=((0, 0), (6, 4)))
    assert rep.ok, rep.lines()


def test_dpd_presentations():
    assert dpd_presentation(AlgebraPresentation(AFFINE, [el(z, (1,))])) == QDivisor(AFFINE, {0: -1})
    assert dpd_presentation(AlgebraPresentation(AFFINE, [el(one, (1,))])) == QDivisor(AFFINE)
    assert dpd_presentation(AlgebraPresentation(AFFINE, [el(z, (1,)), el(one, (2,))])) == QDivisor(AFFINE)


def test_dpd_hyperbolic_pair():
    pres = AlgebraPresentation(AFFINE, [el(z, (1,)), el(z**-1, (-1,)), el(one, (1,))])
    minus, plus = dpd_presentation(pres)
    assert minus == QDivisor(AFFINE, {0: 1})
    assert plus == QDivisor(AFFINE)


def test_dpd_mixed_signs_on_projective_line():
    pres = AlgebraPresentation(PROJECTIVE, [el(z, (1,)), el(one, (-1,))])
    with pytest.raises(MixedSignsInParabolicMode):
        dpd_presentation(pres)


def test_projective_warning_when_functions_agree():
    pres = AlgebraPresentation(PROJECTIVE, [el(one, (1, 0)), el(one, (0, 1))])
    with pytest.warns(UserWarning):
        try:
            normalize(pres)
        except Exception:
            pass


def test_section_generators_recover_divisor():
    a = normalize(EX25)
    gens = section_generators(a)
    assert all(g.weight for g in gens)
    assert verify_normalization(AlgebraPresentation(PROJECTIVE, gens), a).ok


def test_monomials_of_weight():
    gens = [el(one, (1, 0)), el(one, (1, 1)), el(one, (0, 1))]
    assert sorted(monomials_of_weight(gens, (2, 1))) == [(1, 1, 0), (2, 0, 1)]


def test_two_generators_in_one_degree():
    # z^2 chi and z^3 chi generate the k[z]-module z^2 k[z] in degree one
    pres = AlgebraPresentation(AFFINE, [el(z**2, (1,)), el(z**3, (1,))])
    a = normalize(pres)
    assert a.divisor.coefficient(0) == SigmaPolyhedron.from_vertices([(-2,)], Cone.orthant(1))
    assert generated_piece_matches(a, pres.generators, (1,))


def test_random_presentations_verify():
    rng = rng_for("unit-normalization")
    for _ in range(40):
        pres = rand_presentation(rng, rng.choice((AFFINE, PROJECTIVE)), rng.randint(1, 2))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            a = normalize(pres)
        assert verify_normalization(pres, a).ok
