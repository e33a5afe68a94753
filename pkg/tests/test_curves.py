from fractions import Fraction

import pytest

from krich.algebra import Monomial, Polynomial
from krich.curves import (
    build_cusp_chain,
    build_g1_n2,
    build_g1_n3,
    build_hyperelliptic,
    build_semigroup_curve,
    build_special_curve,
    check_marked_algebra,
    coefficient_weights,
    eliminate_generators,
    g1n2_template,
    g1n3_parameters,
    g1n3_template,
    h0_basis,
    hyperelliptic_template,
    semigroup_template,
    special_curve_template,
)
from krich.errors import UsageError
from krich.groebner import verify_shape
from krich.instances import g1n2_tuple, rank1_matrix, rank2_matrix, rational, rng_for
from krich.krichever import expand_generators, validate_expansions

V = Polynomial.var


def monic_set(polys, order):
    return {p.monic(order) for p in polys}


def test_semigroup_two_three():
    c = build_semigroup_curve([2, 3])
    assert c.genus == 1 and c.names == ("x1", "x2")
    assert monic_set(c.relations, c.order) == {(V("x2") ** 2 - V("x1") ** 3).monic(c.order)}


def test_semigroup_two_five_is_the_monomial_genus_two_curve():
    c = build_semigroup_curve([2, 5])
    assert c.genus == 2
    assert monic_set(c.relations, c.order) == {(V("x2") ** 2 - V("x1") ** 5).monic(c.order)}


def test_semigroup_three_four_five():
    c = build_semigroup_curve([3, 4, 5])
    assert len(c.generators) == 3 and c.genus == 2
    S = {0, 3, 4, 5} | set(range(6, 40))
    gb = c.groebner()
    deg = c.order.deg1
    counts = {}
    for m in gb.normal_monomials_upto(20):
        d = m.weighted_degree(deg)
        counts[d] = counts.get(d, 0) + 1
    assert all(counts.get(d, 0) == (1 if d in S else 0) for d in range(21))
    assert verify_shape(gb, semigroup_template(c)).passed


def test_cusp_relations():
    c = build_cusp_chain((1,))
    assert monic_set(c.relations, c.order) == {(V("h1.1") ** 2 - V("h1.0") ** 3).monic(c.order)}
    c2 = build_cusp_chain((1, 1))
    assert set(c2.names) == {"h1.0", "h1.1", "h2.0", "h2.1"}
    for u in ("h1.0", "h1.1"):
        for v in ("h2.0", "h2.1"):
            assert c2.groebner().contains(V(u) * V(v))
    assert verify_shape(c2.relations, special_curve_template(c2)).passed


def test_cusp_chain_is_a_marked_algebra():
    assert check_marked_algebra(build_cusp_chain((1, 1)), (1, 1)).passed
    assert check_marked_algebra(build_cusp_chain((2, 1, 0)), (2, 1, 0), bound=2).passed


def test_special_curves_reduce_to_cusps():
    a = (2, 1, 0)
    zero = build_special_curve(a, {3: {1: [0, 0], 2: [0]}})
    assert monic_set(zero.relations, zero.order) == monic_set(build_cusp_chain(a).relations, zero.order)


def test_tacnode():
    c = build_special_curve((1, 0), {2: {1: [1]}})
    names, rels = eliminate_generators(c)
    assert names == ("h1.0", "h2")
    h, y = V("h1.0"), V("h2")
    assert len(rels) == 1 and rels[0] == h * y * y - h * h


def test_elliptic_three_fold_point():
    c = build_special_curve((1, 0, 0), {2: {1: [1]}, 3: {1: [1]}})
    gb = c.groebner()
    assert gb.contains(V("h2") * V("h3") - V("h1.0"))
    assert gb.contains(V("h1.0") * V("h2") - V("h1.1"))
    assert gb.contains(V("h1.0") * V("h3") - V("h1.1"))
    assert verify_shape(c.relations, special_curve_template(c)).passed


def test_special_curve_rejects_bad_weights():
    with pytest.raises(UsageError):
        build_special_curve((0, 0))
    with pytest.raises(UsageError):
        build_special_curve((1, 0), {2: {1: [1, 2]}})


def test_g1n2_at_the_cusp_point():
    c = build_g1_n2(1, 0, 0, 0)
    F, H, G = V("f1"), V("h1"), V("h12")
    assert monic_set(c.relations, c.order) == monic_set([H * H - F ** 3, F * G - H, H * G - F * F], c.order)
    assert verify_shape(c.groebner(), g1n2_template(c.order)).passed


def test_g1n2_decouples_when_a_vanishes():
    b, e, pi = Fraction(2), Fraction(-1), Fraction(3)
    c = build_g1_n2(0, b, e, pi)
    F, G = V("f1"), V("h12")
    assert c.relations[1] == F * G - G.scale(b)


def test_g1n2_random_shape_and_expansions():
    rng = rng_for(3, "curves-g1n2")
    for _ in range(5):
        c = build_g1_n2(*g1n2_tuple(rng))
        assert verify_shape(c.relations, g1n2_template(c.order)).passed
        validate_expansions(c, expand_generators(c, 10))


def test_g1n3_parameters_for_zero_matrix():
    t = Fraction(5, 3)
    p = g1n3_parameters([[0] * 4, [0] * 4], t)
    assert p["a12"] == p["a13"] == p["c23"] == p["c32"] == 0
    assert p["b12"] == p["b13"] == t and p["e12"] == p["e13"]
    c = build_g1_n3([[0] * 4, [0] * 4], t)
    assert verify_shape(c.relations, g1n3_template(c.order)).passed


def test_g1n3_rank_condition():
    rng = rng_for(4, "curves-g1n3")
    for _ in range(5):
        c = build_g1_n3(rank1_matrix(rng), rational(rng))
        assert verify_shape(c.relations, g1n3_template(c.order)).passed
        validate_expansions(c, expand_generators(c, 8))
    M = rank2_matrix(rng)
    with pytest.raises(UsageError):
        build_g1_n3(M, 1)
    forced = build_g1_n3(M, 1, force=True)
    rep = verify_shape(forced.relations, g1n3_template(forced.order))
    assert any(v.kind == "s-pair" and v.witness["normal_form"] for v in rep.violations)


def test_hyperelliptic_family():
    c = build_hyperelliptic(2, [0, 0, 0, 0])
    assert c.relations == (V("y") ** 2 - V("x") ** 5,)
    for g in (1, 2, 3):
        c = build_hyperelliptic(g, [Fraction(k, 3) for k in range(1, 2 * g + 1)])
        assert coefficient_weights(c) == {f"a{i}": 2 * i + 2 for i in range(1, 2 * g + 1)}
        assert verify_shape(c.relations, hyperelliptic_template(c)).passed
    with pytest.raises(UsageError):
        build_hyperelliptic(2, [1, 2])


def test_expansions_of_monomial_curves_are_exact():
    e = build_cusp_chain((1,)).expand(1, 5)
    assert e["h1.0"].coeffs == {-2: 1} and e["h1.1"].coeffs == {-3: 1}
    y = build_hyperelliptic(2, [0, 0, 0, 0]).expand(1, 6)["y"]
    assert y.coeffs == {-5: 1}


def test_weierstrass_expansion_satisfies_the_relation():
    c = build_hyperelliptic(1, [Fraction(2), Fraction(-7, 3)])
    x, y = c.expand(1, 12)["x"], c.expand(1, 12)["y"]
    res = y * y - x ** 3 - x.scale(2) + Fraction(7, 3)
    assert res.hi >= 1 and all(res.coefficient(k) == 0 for k in range(res.lo, res.hi))


def test_sections():
    assert h0_basis(build_cusp_chain((1,)), (1,)) == [Polynomial.constant(1)]
    hy = h0_basis(build_hyperelliptic(2, [1, 2, 3, 4]), (4,))
    assert {p.leading_monomial(build_hyperelliptic(2, [1, 2, 3, 4]).order) for p in hy} == {
        Monomial.one(), Monomial.var("x"), Monomial.var("x", 2)}
    c = build_g1_n2(2, 3, -1, 5)
    secs = h0_basis(c, (1, 1))
    assert len(secs) == 2 and {p.leading_monomial(c.order) for p in secs} == {Monomial.one(), Monomial.var("h12")}


def test_marked_algebra_weights():
    c = build_g1_n2(2, 3, -1, 5)
    assert check_marked_algebra(c, (1, 0)).passed
    degenerate = build_g1_n2(0, 3, -1, 5)
    assert not check_marked_algebra(degenerate, (0, 1)).passed
