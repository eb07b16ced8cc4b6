"""The graded ring, checked against two classical embeddings.

A linear 4-space (degree 1) and the smooth quadric fourfold (degree 2)
both genuinely sit inside the ambient 8-space with hyperplane multiplier
1, so for them the normal-bundle Euler number must equal d^2 exactly.
They anchor every identity the enumeration relies on.
"""

import random
from fractions import Fraction

import pytest

from chern_gate.ring import (
    AMBIENT_BINOMIALS,
    ChernCase,
    Geometry,
    GradedClass,
    ambient_pullback,
    chern_from_case,
    graded,
    normal_c4_polynomial,
    top_pairing,
)


def test_ambient_pullback_binomials():
    assert ambient_pullback(1).coeffs == tuple(
        Fraction(b) for b in AMBIENT_BINOMIALS
    )
    assert ambient_pullback(2).coeffs == (1, 18, 144, 672, 2016)


def test_unit_and_multiplication():
    one = GradedClass.unit()
    u = graded(1, 3, Fraction(1, 2), -7, Fraction(2, 9))
    assert (one * u).coeffs == u.coeffs
    v = graded(1, -1, 4, Fraction(5, 3), 0)
    assert (u * v).coeffs == (v * u).coeffs


def test_inverse_round_trip_on_1000_random_classes():
    rng = random.Random(20260816)
    one = GradedClass.unit()
    for _ in range(1000):
        coeffs = [Fraction(1)] + [
            Fraction(rng.randint(-40, 40), rng.randint(1, 12)) for _ in range(4)
        ]
        u = graded(*coeffs)
        v = u.inverse()
        assert (u * v).coeffs == one.coeffs
        assert (v * u).coeffs == one.coeffs


def test_p4_linear_subspace_oracle():
    # c(X) = (1+g)^5 truncated, degree 1, m = 1
    c = graded(1, 5, 10, 10, 5)
    geom = Geometry.free(1)
    c_normal = ambient_pullback(1) * c.inverse()
    assert top_pairing(c_normal, geom) == 1  # d^2 m^8 with d = m = 1


def test_quadric_oracle_from_first_principles():
    # c(X) = (1+g)^6 * (1+2g)^(-1): six hyperplane directions over the
    # quadric relation. Expanded this is (1, 4, 7, 6, 3).
    sixth = graded(1, 6, 15, 20, 15)
    quadric_relation = graded(1, 2, 0, 0, 0)
    c = sixth * quadric_relation.inverse()
    assert c.coeffs == (1, 4, 7, 6, 3)
    geom = Geometry.free(2)
    c_normal = ambient_pullback(1) * c.inverse()
    assert c_normal.coeffs == (1, 5, 9, 7, 2)
    assert top_pairing(c_normal, geom) == 4  # d^2 m^8 with d = 2, m = 1


def test_chern_from_case_matches_quadric(quadric_case):
    assert chern_from_case(quadric_case).coeffs == (1, 4, 7, 6, 3)


def test_chern_from_case_matches_p4(p4_case):
    assert chern_from_case(p4_case).coeffs == (1, 5, 10, 10, 5)


def test_degree_225_class_pairings():
    # The one negative-index survivor of the rank-1 enumeration. All
    # five characteristic numbers must come back from the ring pairing.
    geom = Geometry.rank1(15)
    assert geom.degree == 225
    case = ChernCase(
        r=-1, k=Fraction(2, 3), c1c3=50, euler=5, geometry=geom
    )
    c = chern_from_case(case)
    assert c.coeffs == (1, -1, Fraction(2, 3), Fraction(-2, 9), Fraction(1, 45))
    d = geom.degree
    c1, c2, c3, c4 = c.coeffs[1:]
    assert c1**4 * d == 225
    assert c1 * c3 * d == 50
    assert c1**2 * c2 * d == 150
    assert c2**2 * d == 100
    assert c4 * d == 5


def test_normal_c4_polynomial_is_the_paired_c4(quadric_case, p4_case):
    for case in (quadric_case, p4_case):
        poly = normal_c4_polynomial(case)
        assert len(poly) == 5
        c = chern_from_case(case)
        for m in range(1, 21):
            c_normal = ambient_pullback(m) * c.inverse()
            paired = top_pairing(
                graded(0, 0, 0, 0, c_normal.coeffs[4]), case.geometry
            )
            assert sum(q * m**i for i, q in enumerate(poly)) == paired


def test_decomposition_identity_all_enumerated_cases(pipeline_runs):
    # c(X) * c(N) = pullback of the ambient class, for every case the
    # search produces and every hyperplane multiplier up to 20.
    from chern_gate import to_chern_case

    seen = 0
    for spec, inv, solutions in pipeline_runs.values():
        for sol in solutions:
            case = to_chern_case(sol, inv)
            c = chern_from_case(case)
            poly = normal_c4_polynomial(case)
            for m in range(1, 21):
                ambient = ambient_pullback(m)
                c_normal = ambient * c.inverse()
                assert (c * c_normal).coeffs == ambient.coeffs
                paired = top_pairing(
                    graded(0, 0, 0, 0, c_normal.coeffs[4]), case.geometry
                )
                assert sum(q * m**i for i, q in enumerate(poly)) == paired
            seen += 1
    assert seen == 26  # 1 + 10 + 10 + 5


def test_geometry_params():
    assert Geometry.rank1(15).params == {"e": 15}
    assert Geometry.rank2(3, 4).params == {"a": 3, "b": 4}
    assert Geometry.free(224).params == {"d": 224}
    assert Geometry.rank2(3, 4).degree == 25
    assert Geometry.rank1(4).degree == 16


def test_inverse_requires_nonzero_constant_term():
    with pytest.raises(ValueError):
        graded(0, 1, 0, 0, 0).inverse()
