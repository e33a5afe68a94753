"""Weight cones of the cells, stability, and gap sequences of one-point chains.

Run with ``python demos/cones_and_gaps.py``.
"""

from krich.gaps import chain_from_gaps, enumerate_gap_sequences, genus_of_chain, h1_profile, is_symmetric
from krich.git import chi_pairing, cone_membership, cone_of_a, stability_test, z_chi_class

for a in [(2, 0), (1, 1), (2, 1, 0)]:
    print(f"C{a} generated by", [tuple(str(x) for x in g) for g in cone_of_a(a).generators])

a, a2 = (1, 1), (2, 0)
chi = chi_pairing(a, a2)
print(f"\nchi between {a} and {a2}:", chi, "->", cone_membership(cone_of_a(a), chi))
print("stability of (1,1) against {e1, e2}:", stability_test([(1, 0), (0, 1)], (1, 1)))
print("Z(chi) for chi = omega_12 + omega_21:", z_chi_class((1, 1), {(1, 2): 1, (2, 1): 1}))

print("\ngap sequences by genus:")
for g in range(1, 5):
    seqs = enumerate_gap_sequences(g)
    sym = sum(is_symmetric(s) for s in seqs)
    print(f"  g={g}: {len(seqs)} sequences, {sym} symmetric")

chain = chain_from_gaps((1, 2, 4))
print("\nchain of the gaps (1, 2, 4): genus", genus_of_chain(chain))
for q, lo, hi in h1_profile(chain):
    print(f"  q={q}: h1(D-) = {lo}, h1(D+) = {hi}")
