from fractions import Fraction

from krich.algebra import Polynomial
from krich.curves import build_hyperelliptic
from krich.gaps import gaps_from_pole_orders
from krich.groebner import buchberger
from krich.instances import homogeneous_ideal, rng_for
from krich.krichever import subspace_from_curve
from krich.oracles import (
    all_positive_member,
    caratheodory_member,
    dense_rank,
    dense_solve_square,
    h0_by_span,
    homogeneous_codimensions,
    hyperelliptic_gaps,
    riemann_roch_expected,
)


def test_dense_linear_algebra():
    assert dense_rank([[1, 2], [2, 4]]) == 1
    assert dense_rank([]) == 0
    assert dense_solve_square([[2, 0], [0, 4]], [1, 1]) == [Fraction(1, 2), Fraction(1, 4)]
    assert dense_solve_square([[1, 1], [1, 1]], [1, 2]) is None


def test_codimensions_of_a_monomial_ideal():
    x1, x2 = Polynomial.var("x1"), Polynomial.var("x2")
    gens = [x1 * x1, x1 * x2]
    assert homogeneous_codimensions(gens, ["x1", "x2"], 3) == {0: 1, 1: 2, 2: 1, 3: 1}


def test_codimensions_match_groebner_counts():
    rng = rng_for(0, "oracle-test")
    for _ in range(3):
        gens, order = homogeneous_ideal(rng, 2)
        counts = {d: 0 for d in range(6)}
        for m in buchberger(gens, order).normal_monomials_upto(5):
            counts[m.total_degree()] += 1
        assert counts == homogeneous_codimensions(gens, list(order.var_order), 5)


def test_cone_oracles():
    gens = [(1, 0), (-2, 1)]
    assert caratheodory_member(gens, (0, 1)) and all_positive_member(gens, (0, 1))
    assert caratheodory_member(gens, (1, 0)) and not all_positive_member(gens, (1, 0))
    assert not caratheodory_member(gens, (0, -1))
    assert not all_positive_member([(1, 0)], (1, 0))


def test_span_h0_on_a_hyperelliptic_curve():
    W = subspace_from_curve(build_hyperelliptic(2, [1, 0, 2, 3]), 9)
    for D in range(3, 6):
        assert h0_by_span(W, (D,)) == riemann_roch_expected(2, (D,))
    assert [h0_by_span(W, (D,)) for D in range(6)] == [1, 1, 2, 2, 3, 4]
    assert hyperelliptic_gaps(3) == (1, 3, 5)
    assert gaps_from_pole_orders([2, 4, 5], 2) == hyperelliptic_gaps(2)
