"""Canonical labeling of planar spaces by individualization and refinement.

Points are partitioned by an equivariant refinement (each point is
described by the colour profile of the full lines and planes through it),
then cells are individualized one point at a time.  Each leaf of the
search tree is a labeling; the lexicographically least relabeled
``(lines, planes)`` pair is the canonical form.  Leaves that coincide
yield automorphisms, which prune sibling branches and generate the
automorphism group, whose order comes from a Schreier-Sims chain.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import permutations
from typing import Sequence

from .spaces import PlanarSpace

Perm = tuple[int, ...]


# -- permutation groups ------------------------------------------------------

def _compose(a: Perm, b: Perm) -> Perm:
    """``a after b``."""
    return tuple(a[x] for x in b)


def _inverse(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


class _Level:
    __slots__ = ("base", "gens", "transversal")

    def __init__(self, base: int, n: int):
        self.base = base
        self.gens: list[Perm] = []
        self.transversal: dict[int, Perm] = {base: tuple(range(n))}


def group_order(generators: Sequence[Perm], n: int) -> int:
    """Order of the permutation group on ``range(n)`` generated by ``generators``."""
    ident = tuple(range(n))
    levels: list[_Level] = []

    def sift(g: Perm, start: int) -> tuple[Perm, int]:
        for i in range(start, len(levels)):
            lv = levels[i]
            x = g[lv.base]
            t = lv.transversal.get(x)
            if t is None:
                return g, i
            g = _compose(_inverse(t), g)
        return g, len(levels)

    def strong(i: int) -> list[Perm]:
        return [s for lv in levels[i:] for s in lv.gens]

    def rebuild(i: int) -> None:
        lv = levels[i]
        gens = strong(i)
        trans = {lv.base: ident}
        queue = [lv.base]
        while queue:
            y = queue.pop()
            for s in gens:
                z = s[y]
                if z not in trans:
                    trans[z] = _compose(s, trans[y])
                    queue.append(z)
        lv.transversal = trans
        # every Schreier generator must sift through the levels below
        for y, ty in list(trans.items()):
            for s in gens:
                sg = _compose(_inverse(lv.transversal[s[y]]), _compose(s, ty))
                if sg == ident:
                    continue
                h, j = sift(sg, i + 1)
                if h != ident:
                    add(h, j)
                    return rebuild(i)

    def add(g: Perm, j: int) -> None:
        if j == len(levels):
            levels.append(_Level(next(x for x in range(n) if g[x] != x), n))
        levels[j].gens.append(g)
        for i in range(j, -1, -1):
            rebuild(i)

    for g in generators:
        g = tuple(g)
        if g == ident:
            continue
        h, j = sift(g, 0)
        if h != ident:
            add(h, j)
    order = 1
    for lv in levels:
        order *= len(lv.transversal)
    return order


def _orbits(gens: Sequence[Perm], n: int) -> list[int]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for x in range(n):
            a, b = find(x), find(g[x])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(x) for x in range(n)]


# -- refinement and search ---------------------------------------------------

def _refine(cells: list[list[int]], blocks: Sequence[tuple[int, frozenset[int]]],
            by_point: Sequence[Sequence[int]]) -> list[list[int]]:
    n = len(by_point)
    while True:
        color = [0] * n
        for ci, cell in enumerate(cells):
            for p in cell:
                color[p] = ci
        profile = [(kind, tuple(sorted(color[x] for x in b))) for kind, b in blocks]
        new: list[list[int]] = []
        for cell in cells:
            if len(cell) == 1:
                new.append(cell)
                continue
            groups: dict[tuple, list[int]] = {}
            for p in cell:
                sig = tuple(sorted(profile[b] for b in by_point[p]))
                groups.setdefault(sig, []).append(p)
            for sig in sorted(groups):
                new.append(groups[sig])
        if len(new) == len(cells):
            return new
        cells = new


@dataclass(frozen=True)
class CanonicalForm:
    """``perm[p]`` is the canonical label of input point ``p``."""

    perm: Perm
    space: PlanarSpace
    generators: tuple[Perm, ...] = ()

    @cached_property
    def aut_order(self) -> int:
        return group_order(self.generators, len(self.perm))

    @property
    def encoding(self) -> str:
        return self.space.encoding


def _key(ps: PlanarSpace, lab: Sequence[int]):
    lines = tuple(sorted(tuple(sorted(lab[x] for x in b)) for b in ps.lines))
    planes = tuple(sorted(tuple(sorted(lab[x] for x in b)) for b in ps.planes))
    return lines, planes


def canonical_form(ps: PlanarSpace, colors: Sequence[int] | None = None) -> CanonicalForm:
    """Canonical relabeling, encoding and automorphism group order.

    With ``colors`` only colour-preserving relabelings are considered, and
    points receive canonical labels in increasing colour order.
    """
    n = ps.n
    if n == 0:
        return CanonicalForm((), ps)
    blocks = [(0, frozenset(b)) for b in ps.lines] + [(1, frozenset(b)) for b in ps.planes]
    by_point: list[list[int]] = [[] for _ in range(n)]
    for bi, (_, b) in enumerate(blocks):
        for x in b:
            by_point[x].append(bi)

    if colors is None:
        cells = [list(range(n))]
    else:
        cells = [[p for p in range(n) if colors[p] == c] for c in sorted(set(colors))]

    gens: list[Perm] = []
    first: list = []  # [labeling, key, path]
    best: list = []

    def leaf(cells, path):
        lab = [0] * n
        for i, cell in enumerate(cells):
            lab[cell[0]] = i
        lab = tuple(lab)
        key = _key(ps, lab)
        if not first:
            first[:] = [lab, key, path]
            best[:] = [lab, key]
            return None
        if key == first[1]:
            gens.append(_compose(_inverse(first[0]), lab))
            c = 0
            while c < len(path) and path[c] == first[2][c]:
                c += 1
            return c
        if key == best[1]:
            gens.append(_compose(_inverse(best[0]), lab))
        elif key < best[1]:
            best[:] = [lab, key]
        return None

    def search(cells, path):
        cells = _refine(cells, blocks, by_point)
        if len(cells) == n:
            return leaf(cells, path)
        ti = next(i for i, c in enumerate(cells) if len(c) > 1)
        target = cells[ti]
        depth = len(path)
        tried: list[int] = []
        for v in sorted(target):
            if tried:
                fix = [g for g in gens if all(g[x] == x for x in path)]
                orb = _orbits(fix, n)
                if any(orb[v] == orb[u] for u in tried):
                    continue
            tried.append(v)
            child = cells[:ti] + [[v], [x for x in target if x != v]] + cells[ti + 1:]
            jump = search(child, path + (v,))
            if jump is not None and jump < depth:
                return jump
        return None

    search(cells, ())
    lab = best[0]
    return CanonicalForm(lab, ps.relabel(lab), tuple(gens))


def canonical_encoding(ps: PlanarSpace) -> str:
    return canonical_form(ps).encoding


def is_isomorphic(a: PlanarSpace, b: PlanarSpace) -> bool:
    return a.n == b.n and canonical_encoding(a) == canonical_encoding(b)


# -- brute-force oracles -----------------------------------------------------

def automorphisms_bruteforce(ps: PlanarSpace) -> list[Perm]:
    target = _key(ps, range(ps.n))
    return [p for p in permutations(range(ps.n)) if _key(ps, p) == target]


def canonical_key_bruteforce(ps: PlanarSpace):
    """Least relabeled ``(lines, planes)`` over all permutations; an isomorphism invariant."""
    return min(_key(ps, p) for p in permutations(range(ps.n)))
