"""
Planar spaces on a handful of points
====================================

A planar space records which points of a configuration are collinear and
which are coplanar.  Here we list the isomorphism classes for small n and
look at the ones that no point can be removed from.
"""

from arccount import enumerate_hyperfigurations, enumerate_planar_spaces

# class counts grow quickly; n = 8 takes a few seconds
for n in range(2, 8):
    cat = enumerate_planar_spaces(n)
    print(f"n={n}: {len(cat)} classes, {len(cat.hyperfigurations)} hyperfigurations")

# each class is stored by its canonical encoding: lines, then planes
for entry in enumerate_planar_spaces(5):
    print(entry.encoding)

# the seven-point hyperfigurations; the last one is the Fano plane
for entry in enumerate_hyperfigurations(7):
    s = entry.space
    print(f"{entry.encoding}  lines={len(s.lines)} planes={len(s.planes)}")
