import random
from fractions import Fraction

import pytest

from krich.errors import PrecisionError, UsageError
from krich.laurent import (
    HVector,
    ParamChange,
    TruncatedSeries,
    apply_param_change,
    compose_changes,
    invert_change,
    series_invert,
)


def rq(rng):
    return Fraction(rng.randint(-9, 9), rng.randint(1, 9))


def random_series(rng, lo, hi, branch=1):
    return TruncatedSeries({e: rq(rng) for e in range(lo, hi)}, hi=hi, lo=lo, branch=branch)


def brute_substitute(s, row, hi):
    """sum_e c_e phi(t)^e with phi^(-1) from series inversion."""
    phi = TruncatedSeries({1: 1, **{k + 2: c for k, c in enumerate(row)}}, hi=hi + 8, lo=1)
    inv = series_invert(phi)
    out = TruncatedSeries.zero(hi)
    for e in range(s.lo, s.hi):
        c = s.coefficient(e)
        if c:
            base = phi if e > 0 else inv
            term = TruncatedSeries.constant(1, hi + 8)
            for _ in range(abs(e)):
                term = term * base
            out = out + term.truncate(hi).scale(c)
    return out


def test_invert_basics():
    one = TruncatedSeries.constant(1, 6)
    assert series_invert(one).agrees(one)
    inv = series_invert(TruncatedSeries({0: 1, 1: 1}, hi=6))
    assert [inv.coefficient(e) for e in range(6)] == [1, -1, 1, -1, 1, -1]
    with pytest.raises(PrecisionError):
        series_invert(TruncatedSeries.zero(4))


def test_inverse_times_series_is_one():
    rng = random.Random(2)
    for _ in range(10):
        s = random_series(rng, -2, 6)
        if not s.coefficient(-2):
            continue
        prod = s * series_invert(s)
        assert prod.lo <= 0
        assert all(prod.coefficient(e) == (1 if e == 0 else 0) for e in range(prod.lo, prod.hi))


def test_first_order_shift_of_a_pole():
    c = Fraction(3, 5)
    g = ParamChange.single(1, 1, 2, c, order=4)
    out = apply_param_change(TruncatedSeries.monomial(-2, 3), g)
    assert out.coefficient(-2) == 1 and out.coefficient(-1) == -2 * c


def test_identity_change_is_identity():
    rng = random.Random(4)
    s = random_series(rng, -3, 5)
    assert apply_param_change(s, ParamChange.identity(1, 5)) == s


def test_substitution_matches_brute_force():
    rng = random.Random(8)
    for _ in range(8):
        s = random_series(rng, -3, 5)
        row = tuple(rq(rng) for _ in range(4))
        got = apply_param_change(s, ParamChange((row,)))
        want = brute_substitute(s, row, s.hi)
        assert all(got.coefficient(e) == want.coefficient(e) for e in range(got.lo, got.hi))


def test_group_laws():
    rng = random.Random(9)
    g = ParamChange(tuple(tuple(rq(rng) for _ in range(5)) for _ in range(2)))
    h = ParamChange(tuple(tuple(rq(rng) for _ in range(5)) for _ in range(2)))
    ident = ParamChange.identity(2, 5)
    assert compose_changes(ident, g) == g
    assert compose_changes(g, invert_change(g)).is_identity()
    assert invert_change(ident).is_identity()
    assert invert_change(invert_change(g)) == g
    gh = compose_changes(g, h)
    v = HVector([random_series(rng, -3, 4, 1), random_series(rng, -2, 4, 2)])
    lhs = apply_param_change(v, gh)
    rhs = apply_param_change(apply_param_change(v, h), g)
    # the composite is known modulo t^(K+2), K = 5: it fixes coefficients below lo + K + 1
    for b in (1, 2):
        s1, s2 = lhs[b], rhs[b]
        assert all(s1.coefficient(e) == s2.coefficient(e) for e in range(s1.lo, min(s1.hi, s2.hi, s1.lo + 6)))


def test_inverse_of_a_quadratic_change():
    c = Fraction(2, 3)
    inv = invert_change(ParamChange.single(1, 1, 2, c, order=3))
    assert inv.coefficients[0][:2] == (-c, 2 * c * c)


def test_window_bookkeeping():
    a = TruncatedSeries({-2: 1, 0: 3}, hi=4)
    b = TruncatedSeries({1: 2}, hi=6)
    prod = a * b
    assert prod.hi == 4 and prod.coefficient(-1) == 2 and prod.coefficient(1) == 6
    with pytest.raises(PrecisionError):
        prod.coefficient(4)
    with pytest.raises(UsageError):
        a + TruncatedSeries({0: 1}, hi=3, branch=2)


def test_sqrt():
    s = TruncatedSeries({0: 1, 2: 3}, hi=8)
    r = s.sqrt()
    assert (r * r).agrees(s)
