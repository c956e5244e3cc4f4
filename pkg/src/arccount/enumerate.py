"""Isomorph-free enumeration of planar spaces and their labeled expansions.

Spaces on ``n`` points are grown from the classes on ``n - 1`` points.  A
new point is attached through a modular cut of the parent's lattice of
flats (the set of flats whose closure picks up the new point); every cut
yields exactly one single-point extension, and extensions are then
deduplicated by canonical form.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from pathlib import Path

from .canonical import canonical_form
from .spaces import PlanarSpace, is_hyperfiguration, leq_bits, validate

MAX_POINTS = 9
CATALOG_VERSION = "1"


class ResourceLimit(RuntimeError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    space: PlanarSpace
    aut_order: int

    @property
    def encoding(self) -> str:
        return self.space.encoding

    @property
    def hyperfiguration(self) -> bool:
        return is_hyperfiguration(self.space)


@dataclass(frozen=True)
class SpaceCatalog:
    n: int
    classes: tuple[CatalogEntry, ...]

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    @property
    def hyperfigurations(self) -> tuple[CatalogEntry, ...]:
        return tuple(e for e in self.classes if e.hyperfiguration)

    def labeled_count(self) -> int:
        fact = 1
        for i in range(2, self.n + 1):
            fact *= i
        return sum(fact // e.aut_order for e in self.classes)

    def sidecar(self) -> dict:
        return {
            "n": self.n,
            "class_count": len(self.classes),
            "hyperfiguration_count": len(self.hyperfigurations),
            "automorphism_orders": [e.aut_order for e in self.classes],
        }


# -- flats and modular cuts ---------------------------------------------------

def flats(ps: PlanarSpace) -> list[tuple[frozenset[int], int]]:
    """All flats of rank >= 2, highest rank first."""
    n = ps.n
    top = ps.rank(range(n))
    out: list[tuple[frozenset[int], int]] = []
    if top == 4:
        out.append((frozenset(range(n)), 4))
    planes = [frozenset(H) for H in ps.planes]
    for t in combinations(range(n), 3):
        if ps.line_containing(t) is None and ps.plane_containing(t) is None:
            planes.append(frozenset(t))
    out.extend((H, 3) for H in sorted(planes, key=sorted))
    lines = [frozenset(L) for L in ps.lines]
    for pair in combinations(range(n), 2):
        if ps.line_containing(pair) is None:
            lines.append(frozenset(pair))
    out.extend((L, 2) for L in sorted(lines, key=sorted))
    return out


def modular_cuts(ps: PlanarSpace):
    """Yield every modular cut (as a set of flat positions) giving a simple extension of rank <= 4."""
    fl = flats(ps)
    m = len(fl)
    if m == 0:
        yield fl, frozenset()
        return
    sets = [f for f, _ in fl]
    ranks = [r for _, r in fl]
    covers = [[j for j in range(i) if ranks[j] == ranks[i] + 1 and sets[i] < sets[j]] for i in range(m)]
    above = [[j for j in range(m) if sets[i] <= sets[j]] for i in range(m)]
    where = {s: i for i, s in enumerate(sets)}
    # partners[b]: (a, meet) with a < b; meet None marks a pair that may not both be in the cut
    partners: list[list[tuple[int, int | None]]] = [[] for _ in range(m)]
    for a, b in combinations(range(m), 2):
        meet = sets[a] & sets[b]
        if meet in (sets[a], sets[b]):
            continue
        rmeet = len(meet) if len(meet) <= 1 else ps.rank(meet)
        if ranks[a] + ranks[b] != ps.rank(sets[a] | sets[b]) + rmeet:
            continue
        partners[b].append((a, None if rmeet <= 1 else where[meet]))
    inC = [False] * m
    must = [0] * m
    if ranks[0] == 4:
        must[0] = 1

    def add(i) -> list[int] | None:
        """Put flat i in the cut; return the flats whose must-count was raised, or None on conflict."""
        raised: list[int] = []
        ok = True
        for a, meet in partners[i]:
            if not inC[a]:
                continue
            if meet is None or any(x < i and not inC[x] for x in above[meet]):
                ok = False
                break
            for x in above[meet]:
                must[x] += 1
                raised.append(x)
        if ok:
            return raised
        for x in raised:
            must[x] -= 1
        return None

    def rec(i):
        if i == m:
            yield fl, frozenset(j for j in range(m) if inC[j])
            return
        can_in = all(inC[j] for j in covers[i]) and (i == 0 or inC[0])
        if must[i] and not can_in:
            return
        if can_in:
            inC[i] = True
            raised = add(i)
            if raised is not None:
                yield from rec(i + 1)
                for x in raised:
                    must[x] -= 1
            inC[i] = False
        if not must[i]:
            yield from rec(i + 1)

    yield from rec(0)


def extend(ps: PlanarSpace, fl, cut: frozenset[int]) -> PlanarSpace:
    """The single-point extension of ``ps`` by the modular cut ``cut``."""
    p = ps.n
    lines, planes = [], []
    in_cut_planes = [fl[i][0] for i in cut if fl[i][1] == 3]
    for i, (F, r) in enumerate(fl):
        if r == 2:
            if i in cut:
                lines.append(F | {p})
            else:
                if len(F) >= 3:
                    lines.append(F)
                    if not any(F < H for H in in_cut_planes):
                        planes.append(F | {p})
        elif r == 3:
            if i in cut:
                planes.append(F | {p})
            elif len(F) >= 4:
                planes.append(F)
    return PlanarSpace(p + 1, lines, planes)


def extensions(ps: PlanarSpace) -> list[PlanarSpace]:
    return [extend(ps, fl, cut) for fl, cut in modular_cuts(ps)]


# -- catalogs -----------------------------------------------------------------

def _check_points(n: int) -> None:
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > MAX_POINTS:
        raise ResourceLimit(f"n={n} exceeds the enumeration ceiling {MAX_POINTS}")


def _cache_dir() -> Path | None:
    d = os.environ.get("ARCCOUNT_CACHE")
    return Path(d) if d else None


def write_catalog(cat: SpaceCatalog, directory: Path) -> Path:
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / f"planar-v{CATALOG_VERSION}-n{cat.n}.txt"
    path.write_text("".join(e.encoding + "\n" for e in cat.classes))
    side = path.with_suffix(".json")
    side.write_text(json.dumps(cat.sidecar(), indent=1) + "\n")
    return path


def read_catalog(n: int, directory: Path) -> SpaceCatalog | None:
    """Load a cached catalog; None when absent or inconsistent with its sidecar."""
    path = directory / f"planar-v{CATALOG_VERSION}-n{n}.txt"
    side = path.with_suffix(".json")
    if not path.exists() or not side.exists():
        return None
    try:
        meta = json.loads(side.read_text())
        spaces = [PlanarSpace.from_encoding(s) for s in path.read_text().split()]
    except (ValueError, KeyError):
        return None
    auts = meta.get("automorphism_orders", [])
    if meta.get("n") != n or meta.get("class_count") != len(spaces) or len(auts) != len(spaces):
        return None
    cat = SpaceCatalog(n, tuple(CatalogEntry(s, a) for s, a in zip(spaces, auts)))
    if len(cat.hyperfigurations) != meta.get("hyperfiguration_count"):
        return None
    return cat


def _grow(parents: SpaceCatalog) -> SpaceCatalog:
    found: dict[str, CatalogEntry] = {}
    for entry in parents:
        for child in extensions(entry.space):
            cf = canonical_form(child)
            if cf.encoding not in found:
                found[cf.encoding] = CatalogEntry(cf.space, cf.aut_order)
    return SpaceCatalog(parents.n + 1, tuple(found[k] for k in sorted(found)))


@lru_cache(maxsize=None)
def _catalog(n: int) -> SpaceCatalog:
    if n == 0:
        return SpaceCatalog(0, (CatalogEntry(PlanarSpace(0), 1),))
    cache = _cache_dir()
    if cache is not None:
        hit = read_catalog(n, cache)
        if hit is not None:
            return hit
    cat = _grow(_catalog(n - 1))
    if cache is not None:
        write_catalog(cat, cache)
    return cat


def enumerate_planar_spaces(n: int) -> SpaceCatalog:
    """All planar spaces on ``n`` points up to isomorphism, sorted by canonical encoding."""
    _check_points(n)
    return _catalog(n)


def enumerate_hyperfigurations(n: int) -> SpaceCatalog:
    cat = enumerate_planar_spaces(n)
    return SpaceCatalog(n, cat.hyperfigurations)


# -- labeled spaces -------------------------------------------------------------

def labelings(entry: CatalogEntry) -> list[PlanarSpace]:
    """The n!/|Aut| distinct labeled copies of a class."""
    seen: dict[str, PlanarSpace] = {}
    for perm in permutations(range(entry.space.n)):
        s = entry.space.relabel(perm)
        seen.setdefault(s.encoding, s)
    return [seen[k] for k in sorted(seen)]


@lru_cache(maxsize=None)
def labeled_spaces(n: int) -> tuple[tuple[PlanarSpace, str], ...]:
    """Every labeled planar space on ``n`` points, paired with its class encoding."""
    _check_points(n)
    out = []
    for entry in enumerate_planar_spaces(n):
        out.extend((s, entry.encoding) for s in labelings(entry))
    return tuple(out)


def labeled_refinements(f: PlanarSpace) -> list[PlanarSpace]:
    """Every labeled valid space ``g`` on the same points with ``f <= g`` (``f`` included)."""
    return [g for g, _ in labeled_spaces(f.n) if leq_bits(f, g)]


# -- independent oracle -------------------------------------------------------

def _line_families(n: int):
    cands = [frozenset(c) for k in range(3, n + 1) for c in combinations(range(n), k)]

    def rec(i, chosen):
        if i == len(cands):
            yield list(chosen)
            return
        yield from rec(i + 1, chosen)
        c = cands[i]
        if all(len(c & L) <= 1 for L in chosen):
            chosen.append(c)
            yield from rec(i + 1, chosen)
            chosen.pop()

    yield from rec(0, [])


def filter_all_labeled(n: int) -> list[PlanarSpace]:
    """All labeled planar spaces on ``n <= 6`` points by exhaustive search over line and plane families."""
    if n > 6:
        raise ResourceLimit("the exhaustive oracle is limited to n <= 6")
    out = []
    for lines in _line_families(n):
        cands = [frozenset(c) for k in range(4, n + 1) for c in combinations(range(n), k)
                 if not any(set(c) <= L for L in lines)]

        def compatible(a, b):
            common = a & b
            return len(common) <= 2 or any(common <= L for L in lines)

        def rec(i, chosen):
            if i == len(cands):
                ps = PlanarSpace(n, lines, chosen)
                if validate(ps) is None:
                    out.append(ps)
                return
            rec(i + 1, chosen)
            c = cands[i]
            if all(compatible(c, H) for H in chosen):
                chosen.append(c)
                rec(i + 1, chosen)
                chosen.pop()

        rec(0, [])
    return out
