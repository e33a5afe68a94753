from fractions import Fraction

import pytest

from krich.errors import UsageError
from krich.git import (
    all_omegas,
    chi_pairing,
    coordinate_weight,
    cone_membership,
    cone_of_a,
    decomposition_vector,
    ell_weights,
    lp_feasible,
    pole_bound,
    psi_class,
    stability_test,
    z_chi_class,
    z_class,
)
from krich.oracles import all_positive_member, caratheodory_member


def test_coordinate_weights():
    assert coordinate_weight(1, 2, -2, -1, (1, 1)) == (2, -1)
    assert coordinate_weight(1, 1, -2, 2, (1, 1)) == (4, 0)
    with pytest.raises(UsageError):
        coordinate_weight(1, 2, -1, -1, (1, 1))


def test_cones():
    assert set(cone_of_a((2, 0)).generators) == {(1, 0), (-2, 1)}
    assert set(cone_of_a((1, 1)).generators) == {(2, -1), (-1, 2)}
    assert set(all_omegas((1, 1))) == {(2, -1), (-1, 2)}
    assert cone_membership(cone_of_a((2, 0)), (0, -1)) == "outside"
    assert cone_membership(cone_of_a((1, 1)), (1, 1)) == "interior"
    assert cone_membership(cone_of_a((1, 1)), (2, -1)) == "boundary"


@pytest.mark.parametrize("chi", [(1, 1), (2, -1), (0, -1), (-3, 3), (5, 1), (0, 0)])
def test_membership_agrees_with_oracles(chi):
    c = cone_of_a((2, 0))
    where = cone_membership(c, chi)
    assert (where != "outside") == caratheodory_member(c.generators, chi)
    assert (where == "interior") == all_positive_member(c.generators, chi)


def test_stability():
    assert stability_test([(1, 0), (0, 1)], (1, 1)) == "stable"
    assert stability_test([(2, -1)], (2, -1)) == "semistable"
    assert stability_test([], (1, 1), 2) == "unstable"


def test_lp():
    x = lp_feasible([[1, 1]], [2])
    assert x is not None and all(v >= 0 for v in x) and sum(x) == 2
    assert lp_feasible([[1, 1]], [-1]) is None


def test_chi_and_ell():
    assert chi_pairing((1, 1), (1, 1)) == (0, 0)
    assert chi_pairing((1, 1), (2, 0)) == (2, -1)
    with pytest.raises(UsageError):
        chi_pairing((1, 1), (1, 0))
    rep = ell_weights((1, 0))
    assert rep.weights == (1, 2) and rep.passed


def test_pole_bounds():
    assert pole_bound((1, 1), 1, 2, -2, -1) == 1
    assert pole_bound((1, 1), 1, 2, -3, 2) == 1 + (2 + 1) - (-3 + 1 + 1)
    assert pole_bound((2, 0), 2, 1, -1, -2, i0=1) == 1
    assert pole_bound((2, 0), 2, 1, -2, -2, i0=1) == 4
    with pytest.raises(UsageError):
        pole_bound((2, 0), 2, 1, -1, -2)


def test_divisor_classes():
    assert psi_class((1, 1)).as_dict() == {"psi1": 1, "psi2": 1}
    assert (z_class((1, 1)).expand() - psi_class((1, 1))).as_dict() == {"lambda": -1}
    dec = {(1, 2): 1, (2, 1): 1}
    assert decomposition_vector((1, 1), dec) == (1, 1)
    balanced = z_chi_class((1, 1), dec)
    assert balanced.as_dict() == {"Z(2,0)": 1, "Z(0,2)": 1}
    with pytest.raises(UsageError):
        z_chi_class((2, 0), {(1, 2): 1})
    with pytest.raises(UsageError):
        z_chi_class((1, 1), {(1, 2): Fraction(-1)})
