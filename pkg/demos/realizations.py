"""
Realizing configurations over small fields
==========================================

A strong realization places labeled points in P^3(F_q) so that exactly the
prescribed collinearities and coplanarities hold.  We compare a direct
search with the closed forms for the seven-point hyperfigurations.
"""

from arccount import closed_form, count_strong
from arccount.library import NAMED
from arccount.realize import alternative_h6_form

for name in sorted(NAMED):
    space = NAMED[name]()
    form = closed_form(name)
    row = [f"{count_strong(space, q)}/{form(q)}" for q in (2, 3, 4, 5)]
    print(f"{name}: " + "  ".join(row))

# the Fano plane lives in every plane of P^3 when q is even
h6 = NAMED["h6"]()
for q in (2, 4):
    print(f"h6 q={q}: search={count_strong(h6, q)} alternative form={alternative_h6_form()(q)}")
