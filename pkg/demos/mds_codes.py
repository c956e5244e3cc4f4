"""
From arcs to MDS codes
======================

An n-arc in P^3(F_q) spans a [n, 4] MDS code; scaling coordinates and
dividing by the projective group turns arc counts into code counts.
"""

from arccount import mds_count
from arccount.reduction import kaipa_check, mds_quasipolynomial

print("M_5,4 =", mds_quasipolynomial(5))

for n in range(4, 8):
    print(f"n={n}:", [mds_count(n, 4, q) for q in (2, 3, 4, 5, 7, 8)])

# the top coefficients of C_n,4 / |PGL_4| are fixed by n alone
for n in (6, 7):
    print(f"n={n} leading-term check:", "pass" if kaipa_check(n).passed else "fail")
