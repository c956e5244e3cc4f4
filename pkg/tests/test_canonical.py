import random

import pytest
from hypothesis import given, strategies as st

from arccount.canonical import (automorphisms_bruteforce, canonical_form, canonical_key_bruteforce,
                                group_order, is_isomorphic)
from arccount.enumerate import enumerate_planar_spaces
from arccount.library import HYPERFIGURATIONS_7, h6, skew_lines_space
from arccount.spaces import PlanarSpace


def shuffled(ps, seed):
    perm = list(range(ps.n))
    random.Random(seed).shuffle(perm)
    return ps.relabel(perm)


@pytest.mark.parametrize("n", range(1, 8))
def test_invariant_under_relabeling(n):
    for entry in enumerate_planar_spaces(n):
        enc = entry.encoding
        for seed in range(100 if n <= 6 else 10):
            assert canonical_form(shuffled(entry.space, seed)).encoding == enc


def test_automorphism_orders_examples():
    assert canonical_form(skew_lines_space()).aut_order == 72
    assert canonical_form(h6()).aut_order == 168
    assert len(automorphisms_bruteforce(skew_lines_space())) == 72
    assert len(automorphisms_bruteforce(h6())) == 168


@pytest.mark.parametrize("n", range(1, 7))
def test_aut_order_matches_bruteforce(n):
    for entry in enumerate_planar_spaces(n):
        assert entry.aut_order == len(automorphisms_bruteforce(entry.space))


@pytest.mark.parametrize("n", range(1, 7))
def test_encodings_separate_like_bruteforce_keys(n):
    """Canonical encodings and brute-force minimal keys induce the same partition."""
    cat = enumerate_planar_spaces(n)
    keys = {canonical_key_bruteforce(e.space) for e in cat}
    assert len(keys) == len(cat)


def test_canonical_perm_maps_to_canonical_space():
    ps = shuffled(HYPERFIGURATIONS_7["h3"](), 7)
    cf = canonical_form(ps)
    assert ps.relabel(cf.perm) == cf.space


def test_non_isomorphic_pairs():
    assert not is_isomorphic(PlanarSpace(4), PlanarSpace(4, [], [(0, 1, 2, 3)]))
    assert not is_isomorphic(PlanarSpace(4), PlanarSpace(5))


def test_colors_restrict_relabelings():
    ps = PlanarSpace(4, [], [(0, 1, 2, 3)])
    cf = canonical_form(ps, colors=[1, 0, 0, 0])
    assert cf.perm[0] == 3
    assert cf.aut_order == 6


@pytest.mark.parametrize("gens,n,order", [
    ([], 3, 1),
    ([(1, 0, 2, 3)], 4, 2),
    ([(1, 2, 3, 0)], 4, 4),
    ([(1, 0, 2, 3), (1, 2, 3, 0)], 4, 24),
    ([(1, 2, 0, 3, 4), (0, 1, 3, 4, 2)], 5, 60),
    ([(1, 0, 2, 3, 4, 5), (0, 1, 2, 4, 5, 3)], 6, 6),
])
def test_group_order(gens, n, order):
    assert group_order(gens, n) == order


@given(st.integers(2, 6).flatmap(lambda n: st.lists(st.permutations(range(n)), max_size=3)))
def test_group_order_by_closure(gens):
    if not gens:
        return
    n = len(gens[0])
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = tuple(g[i] for i in x)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    assert group_order([tuple(g) for g in gens], n) == len(seen)
