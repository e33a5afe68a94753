import random
from fractions import Fraction

import pytest

from krich.algebra import Monomial, OrderSpec, Polynomial
from krich.groebner import (
    GroebnerBasis,
    LeadingRule,
    ShapeTemplate,
    buchberger,
    normal_form,
    normal_monomials_upto,
    verify_shape,
)
from krich.instances import homogeneous_ideal, rng_for
from krich.oracles import homogeneous_codimensions

F, H = Polynomial.var("f"), Polynomial.var("h")
WEIER = OrderSpec({"f": 2, "h": 3}, {}, ("f", "h"))


def weierstrass(pi, s):
    return H * H - F ** 3 - F.scale(pi) - s


def test_single_relation_is_its_own_basis():
    rel = weierstrass(Fraction(2), Fraction(-3))
    gb = buchberger([rel], WEIER)
    assert gb.elements == (rel.monic(WEIER),)
    assert gb.is_groebner()


def test_normal_form_of_h_squared():
    pi, s = Fraction(5), Fraction(7, 2)
    gb = buchberger([weierstrass(pi, s)], WEIER)
    assert normal_form(H * H, gb) == F ** 3 + F.scale(pi) + s
    assert normal_form(F * H, gb) == F * H


def test_normal_monomials_of_a_plane_cubic():
    gb = buchberger([weierstrass(Fraction(1), Fraction(1))], WEIER)
    got = set(normal_monomials_upto(gb, 7))
    want = {Monomial.from_dict({"f": m}) for m in range(4)} | {Monomial.from_dict({"f": m, "h": 1}) for m in range(3)}
    assert got == want
    assert normal_monomials_upto(gb, 0) == [Monomial.one()]


def test_ideal_membership_by_reduction():
    rng = random.Random(3)
    order = OrderSpec.from_degrees({"x": 1, "y": 1, "z": 1})
    x, y, z = (Polynomial.var(v) for v in "xyz")
    gens = [x * y - z * z, x * x * z - y ** 3 + x]
    gb = buchberger(gens, order)
    for _ in range(10):
        p = Polynomial({Monomial.from_dict({v: rng.randint(0, 2) for v in "xyz"}): rng.randint(-5, 5)
                        for _ in range(3)})
        q = sum((g * p for g in gens), Polynomial.zero())
        assert not normal_form(q, gb)


def test_reduced_basis_is_unique():
    order = OrderSpec.from_degrees({"x": 1, "y": 1})
    x, y = Polynomial.var("x"), Polynomial.var("y")
    a = buchberger([x * x - y, x * y - 1], order)
    b = buchberger([x * y - 1, x * x - y, (x * x - y) * y], order)
    assert a == b


@pytest.mark.parametrize("k", range(6))
def test_counts_match_dense_rank(k):
    rng = rng_for(11, f"gb-{k}")
    gens, order = homogeneous_ideal(rng, 1 + k % 3, 3)
    gb = buchberger(gens, order)
    counts = {}
    for m in gb.normal_monomials_upto(6):
        counts[m.total_degree()] = counts.get(m.total_degree(), 0) + 1
    want = homogeneous_codimensions(gens, order.var_order, 6)
    assert all(counts.get(d, 0) == want[d] for d in range(7))


def test_shape_report_lists_violations():
    order = WEIER
    tmpl = ShapeTemplate("cubic", order, (LeadingRule(Monomial.var("h", 2), lambda m: m.exponent("h") == 0,
                                                       {Monomial.var("f", 3): Fraction(-1)}, "cubic"),))
    assert verify_shape([weierstrass(Fraction(1), Fraction(0))], tmpl).passed
    bad = verify_shape([H * H - F ** 3 - F * H], tmpl)
    assert not bad.passed and bad.violations[0].kind == "lower-term"
    missing = verify_shape([], tmpl)
    assert [v.kind for v in missing.violations] == ["missing-leading"]
    wrong_coeff = verify_shape([H * H - (F ** 3).scale(2)], tmpl)
    assert [v.kind for v in wrong_coeff.violations] == ["required-term"]


def test_monomial_algebra_passes():
    order = OrderSpec.from_degrees({"x": 2, "y": 3})
    x, y = Polynomial.var("x"), Polynomial.var("y")
    gb = buchberger([y * y - x ** 3], order)
    assert isinstance(gb, GroebnerBasis) and gb.leading_monomials == (Monomial.var("y", 2),)
