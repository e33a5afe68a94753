import random
from fractions import Fraction

import pytest

from krich.curves import build_cusp_chain, build_g1_n2, build_g1_n3, build_hyperelliptic
from krich.errors import NotInCellError, PrecisionError, UsageError
from krich.instances import g1n2_tuple, param_change, rng_for
from krich.krichever import (
    WPoint,
    alpha_table,
    bn_locus_check,
    check_subalgebra,
    forget_last_point,
    g1n2_coordinates,
    h0_h1_of_divisor,
    krichever_point,
    plane_model_coefficients,
    random_wpoint,
    rescale_parameter,
    sigma_conditions,
    sigma_normalize,
    subspace_from_curve,
)
from krich.laurent import invert_change
from krich.oracles import h0_by_span


def test_cusp_point_is_the_origin():
    w = krichever_point(build_cusp_chain((1,)), 6)
    assert w.f(1, -2)[1].coeffs == {-2: 1}
    assert w.f(1, -3)[1].coeffs == {-3: 1}
    T = alpha_table(w)
    assert T.entries and not T.nonzero()


def test_g1n2_coordinates_recover_the_parameters():
    rng = rng_for(1, "kr-g1n2")
    for _ in range(5):
        a, b, e, pi = g1n2_tuple(rng)
        w = krichever_point(build_g1_n2(a, b, e, pi), 7)
        T = alpha_table(w)
        assert (T[(2, 1, -1, -1)], T[(1, 2, -2, 0)], T[(1, 2, -3, 0)]) == (a, b, e)
        co = g1n2_coordinates(w)
        assert (co["a"], co["b"], co["e"], co["pi"]) == (a, b, e, pi)
        assert co["s"] == e * e - b * (pi + b * b)


def test_basis_shape_of_a_g1n2_point():
    w = krichever_point(build_g1_n2(2, 3, -1, 5), 6)
    # pivots: t1^p for p <= -2 and t2^p for p <= -1
    assert sorted(w.basis) == sorted([(1, p) for p in range(-6, -1)] + [(2, p) for p in range(-6, 0)])
    assert h0_h1_of_divisor(w, (1, 0)) == (1, 0)


def test_outside_the_cell():
    degenerate = build_g1_n2(0, 3, -1, 5)
    with pytest.raises(NotInCellError):
        krichever_point(degenerate, 6, (0, 1))
    with pytest.raises(UsageError):
        krichever_point(degenerate, 6, (1, 1))


def test_conventions_differ_only_at_q_zero():
    w = krichever_point(build_g1_n2(2, 3, -1, 5), 6)
    A, B = alpha_table(w), alpha_table(w, "alpha_j0_zero", j0=2)
    changed = {k for k in A.common(B) if A[k] != B[k]}
    assert changed and all(k[3] == 0 for k in changed)
    with pytest.raises(UsageError):
        alpha_table(w, "nope")


def test_subalgebra_check():
    w = krichever_point(build_g1_n3([[1, 2, 0, 1], [2, 4, 0, 2]], 1), 6)
    assert check_subalgebra(w).status == "pass"
    perturbed = random_wpoint((1, 0, 0), 6, random.Random(0))
    rep = check_subalgebra(perturbed)
    assert rep.status == "fail" and rep.failures
    tiny = random_wpoint((1,), 1, random.Random(0))
    assert check_subalgebra(tiny).status == "undecidable"


def test_single_step_normalisation():
    lam = Fraction(3)
    w = WPoint.from_alpha((1,), 6, {(1, 1, -2, -1): lam})
    g, wn = sigma_normalize(w)
    assert g.coefficients[0][0] == lam / 2
    assert not any(sigma_conditions(wn, 1).values())


def test_normalised_point_is_fixed():
    w = random_wpoint((1, 1), 6, random.Random(3))
    _, wn = sigma_normalize(w, 1, trim=False)
    g, again = sigma_normalize(wn, 1)
    assert g.is_identity()


@pytest.mark.parametrize("a", [(1, 1), (1, 0), (2, 1, 0)])
def test_normalisation_undoes_a_parameter_change(a):
    rng = rng_for(2, f"kr-sigma-{a}")
    w = random_wpoint(a, 6, rng)
    _, wn = sigma_normalize(w, 1, trim=False)
    h = param_change(rng, len(a), 6)
    g, back = sigma_normalize(wn.apply_change(h), 1)
    hinv = invert_change(h)
    for b, ab in enumerate(a):
        K = 6 - ab if ab > 0 else 6
        assert g.coefficients[b][:K] == hinv.coefficients[b][:K]
    T1, T2 = alpha_table(back), alpha_table(sigma_normalize(w, 1)[1])
    common = T1.common(T2)
    assert common and all(T1[k] == T2[k] for k in common)


def test_euler_characteristics():
    w = krichever_point(build_g1_n2(2, 3, -1, 5), 6)
    assert h0_h1_of_divisor(w, (0, 0)) == (1, 1)
    assert h0_h1_of_divisor(krichever_point(build_cusp_chain((1,)), 6), (1,)) == (1, 0)
    W = subspace_from_curve(build_hyperelliptic(2, [1, 0, 2, 3]), 8)
    assert h0_h1_of_divisor(W, (3,)) == (2, 0)
    assert h0_h1_of_divisor(W, (0,)) == (1, 2)
    with pytest.raises(PrecisionError):
        h0_h1_of_divisor(w, (7, 0))
    with pytest.raises(UsageError):
        h0_h1_of_divisor(w, (1,))


def test_riemann_roch_on_curve_points():
    rng = random.Random(6)
    c = build_g1_n3([[1, 2, 0, 1], [2, 4, 0, 2]], 1)
    w = krichever_point(c, 7)
    W = subspace_from_curve(c, 7)
    for _ in range(5):
        D = [rng.randint(0, 5) for _ in range(3)]
        h0, h1 = h0_h1_of_divisor(w, D)
        assert h0 - h1 == 1 - 1 + sum(D)
        assert h0 == h0_by_span(W, D)


def test_brill_noether_cases():
    cusp = krichever_point(build_cusp_chain((1, 1)), 6)
    for (m, mp) in ((1, 1), (2, 1), (3, 1)):
        assert bn_locus_check(cusp, 2, 1, m, mp) == (True, True)
    generic = krichever_point(build_g1_n2(2, 3, -1, 5), 6)
    assert bn_locus_check(generic, 2, 1, 1, 1) == (False, False)
    W = subspace_from_curve(build_g1_n2(2, 3, -1, 5), 6)
    assert h0_by_span(W, (0, 1)) == 1
    with pytest.raises(UsageError):
        bn_locus_check(generic, 1, 2, 1, 1)


def test_prescribed_vanishing_block():
    rng = random.Random(12)
    entries = {}
    for i in (1, 2):
        for p in range(-6, -(1 if i == 1 else 0)):
            for j in (1, 2):
                for q in range(-(1 if j == 1 else 0), 6):
                    if not (i == j and q == 0):
                        entries[(i, j, p, q)] = Fraction(rng.randint(1, 9), rng.randint(1, 9))
    entries[(2, 1, -1, -1)] = 0
    w = WPoint.from_alpha((1, 0), 6, entries)
    assert bn_locus_check(w, 2, 1, 1, 1) == (True, True)
    assert h0_by_span(w, (0, 1)) == 2
    assert bn_locus_check(w, 2, 1, 2, 1) == (False, False)


def test_forgetting_points():
    a, b, e, pi = Fraction(2), Fraction(3), Fraction(-1), Fraction(5)
    w = krichever_point(build_g1_n2(a, b, e, pi), 7)
    w1 = forget_last_point(w)
    assert w1.a == (1,)
    assert plane_model_coefficients(w1) == [pi, e * e - b * (pi + b * b)]
    for k in range(0, 5):
        assert h0_h1_of_divisor(w, (k, 0)) == h0_h1_of_divisor(w1, (k,))
    cusp = forget_last_point(krichever_point(build_cusp_chain((1, 0)), 6))
    assert cusp.a == (1,) and not alpha_table(cusp).nonzero()
    with pytest.raises(UsageError):
        forget_last_point(krichever_point(build_cusp_chain((1,)), 6))


def test_plane_model_under_rescaling():
    cs = [Fraction(1, 2), Fraction(-3), Fraction(2, 7), Fraction(5)]
    W = subspace_from_curve(build_hyperelliptic(2, cs), 11)
    assert plane_model_coefficients(W) == cs
    lam = Fraction(-2, 3)
    assert plane_model_coefficients(rescale_parameter(W, lam)) == [c * lam ** (2 * i + 2) for i, c in enumerate(cs, 1)]
    with pytest.raises(PrecisionError):
        plane_model_coefficients(subspace_from_curve(build_hyperelliptic(2, cs), 8))
