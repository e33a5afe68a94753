import random

import pytest

from krich.curves import build_g1_n2
from krich.errors import UsageError
from krich.krichever import krichever_point, random_wpoint
from krich.plucker import (
    PluckerIndex,
    alpha_index,
    alpha_plucker_sign,
    cell_index,
    level_one_transition,
    order_key,
    plucker_coordinate,
    transition_det,
)


def test_order_key_interleaves_branches_above_zero():
    cols = [(2, 1), (1, 0), (2, -1), (1, 1), (1, -2), (2, 0)]
    assert sorted(cols, key=order_key) == [(1, -2), (1, 0), (2, -1), (2, 0), (1, 1), (2, 1)]


def test_index_validation():
    with pytest.raises(UsageError):
        PluckerIndex((frozenset({0}),), 0)
    with pytest.raises(UsageError):
        cell_index((1, 1)).raise_level(1)
    with pytest.raises(UsageError):
        alpha_index((1, 1), 1, 1, -2, 0)
    S = cell_index((1, 1), 1)
    assert S.elements() == [(1, -1), (2, -1), (2, 0)]
    assert S.raise_level(3).size() == 7


@pytest.mark.parametrize("seed", range(3))
def test_alpha_from_plucker_coordinates(seed):
    a = (1, 1)
    w = random_wpoint(a, 6, random.Random(seed))
    sa = plucker_coordinate(w, cell_index(a))
    assert sa == 1
    for i, j, p, q in [(1, 2, -2, -1), (2, 1, -2, -1), (1, 1, -3, 1), (2, 1, -4, 2), (1, 2, -2, 0)]:
        S = alpha_index(a, i, j, p, q)
        assert w.alpha(i, j, p, q) == alpha_plucker_sign(a, i, j, p, q) * plucker_coordinate(w, S, i) / sa


def test_transition_to_a_neighbouring_cell():
    w = random_wpoint((1, 1), 6, random.Random(4))
    _, d = transition_det(w, (2, 0))
    assert d == plucker_coordinate(w, cell_index((2, 0))) / plucker_coordinate(w, cell_index((1, 1)))
    s1, eps = level_one_transition(w, (2, 0))
    assert d == eps * s1


def test_curve_point_coordinates():
    a = (1, 0)
    w = krichever_point(build_g1_n2(2, 3, -1, 5), 6, a)
    sa = plucker_coordinate(w, cell_index(a))
    for (i, j, p, q), v in [((2, 1, -1, -1), 2), ((1, 2, -2, 0), 3), ((1, 2, -3, 0), -1)]:
        S = alpha_index(a, i, j, p, q)
        assert alpha_plucker_sign(a, i, j, p, q) * plucker_coordinate(w, S, i) / sa == v
