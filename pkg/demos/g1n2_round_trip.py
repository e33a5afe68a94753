"""Genus one with two marked points: from a plane model to coordinates and back.

Run with ``python demos/g1n2_round_trip.py``.
"""

from fractions import Fraction

from krich.curves import build_g1_n2
from krich.krichever import (
    alpha_table,
    forget_last_point,
    g1n2_coordinates,
    h0_h1_of_divisor,
    krichever_point,
    plane_model_coefficients,
)

a, b, e, pi = Fraction(2), Fraction(3), Fraction(-1), Fraction(5)
curve = build_g1_n2(a, b, e, pi)
print("relations of the marked curve:")
for r in curve.relations:
    print("   ", r.to_str(curve.order))

# The curve's point in the Sato Grassmannian, expanded to radius 7.
w = krichever_point(curve, 7)
table = alpha_table(w)
print("\ncell", w.a, "with", len(table.nonzero()), "non-zero coordinates in the window")
print("alpha_21[-1,-1] =", table[(2, 1, -1, -1)])
print("alpha_12[-2, 0] =", table[(1, 2, -2, 0)])
print("alpha_12[-3, 0] =", table[(1, 2, -3, 0)])

co = g1n2_coordinates(w)
print("\nrecovered parameters:", {k: str(v) for k, v in co.items()})

# Dropping the second point leaves a Weierstrass model y^2 = x^3 + pi x + s.
w1 = forget_last_point(w)
print("\nafter forgetting p2: cell", w1.a, "plane model", [str(c) for c in plane_model_coefficients(w1)])

print("\nh0/h1 of k p1 before and after forgetting:")
for k in range(4):
    print(f"  k={k}:", h0_h1_of_divisor(w, (k, 0)), h0_h1_of_divisor(w1, (k,)))
