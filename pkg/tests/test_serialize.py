import json
from fractions import Fraction

import pytest

from krich.algebra import OrderSpec, Polynomial
from krich.curves import build_g1_n2
from krich.errors import UsageError
from krich.krichever import alpha_table, krichever_point
from krich.laurent import TruncatedSeries
from krich.serialize import (
    alpha_table_from_json,
    alpha_table_to_json,
    curve_to_json,
    dumps,
    order_from_json,
    order_to_json,
    polynomial_from_json,
    polynomial_to_json,
    rational_from_json,
    rational_to_json,
    series_from_json,
    series_to_json,
)


def test_rationals():
    assert rational_to_json(Fraction(-3, 6)) == "-1/2"
    assert rational_from_json("-1/2") == Fraction(-1, 2)
    assert rational_from_json(rational_to_json(Fraction(7))) == 7


def test_polynomial_and_order_round_trip():
    order = OrderSpec.from_degrees({"x": 2, "y": 3}, {"x": 0, "y": 0})
    x, y = Polynomial.var("x"), Polynomial.var("y")
    p = y * y - x ** 3 - x * Fraction(1, 2)
    assert polynomial_from_json(polynomial_to_json(p, order)) == p
    assert order_to_json(order_from_json(order_to_json(order))) == order_to_json(order)
    with pytest.raises(UsageError):
        polynomial_from_json([["1", 3]])
    with pytest.raises(UsageError):
        order_from_json({})


def test_series_round_trip():
    s = TruncatedSeries({-2: Fraction(1), 0: Fraction(-3, 4)}, hi=3, branch=2)
    back = series_from_json(json.loads(json.dumps(series_to_json(s))))
    assert back.coeffs == s.coeffs and (back.lo, back.hi, back.branch) == (s.lo, s.hi, s.branch)


def test_alpha_table_round_trip():
    c = build_g1_n2(2, 3, -1, 5)
    T = alpha_table(krichever_point(c, 6))
    back = alpha_table_from_json(json.loads(dumps(alpha_table_to_json(T))))
    assert back.entries == T.entries and back.convention == T.convention
    data = curve_to_json(c)
    assert data["genus"] == 1 and data["n"] == 2 and data["relations"]
