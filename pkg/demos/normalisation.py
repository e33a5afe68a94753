"""Changes of local parameter and the normalisation that undoes them.

Run with ``python demos/normalisation.py``.
"""

import random

from krich.instances import param_change
from krich.krichever import alpha_table, random_wpoint, sigma_conditions, sigma_normalize
from krich.laurent import invert_change

rng = random.Random(7)
a = (1, 1)
w = random_wpoint(a, 6, rng)
_, w0 = sigma_normalize(w, 1, trim=False)
print("a normalised point in the cell", a)

h = param_change(rng, len(a), 6)
print("reparametrise every branch by t -> t + h(t), h =", [[str(c) for c in row[:3]] for row in h.coefficients], "...")
moved = w0.apply_change(h)
print("normalisation conditions after the change:",
      sum(1 for v in sigma_conditions(moved, 1).values() if v), "non-zero")

g, back = sigma_normalize(moved, 1)
hinv = invert_change(h)
print("recovered change equals the inverse of h on its known terms:",
      all(g.coefficients[k][:5] == hinv.coefficients[k][:5] for k in range(len(a))))

T0, T1 = alpha_table(sigma_normalize(w, 1)[1]), alpha_table(back)
common = T0.common(T1)
print("coordinates agree on", len(common), "common entries:", all(T0[k] == T1[k] for k in common))
