import json
from itertools import combinations, permutations

import pytest
from hypothesis import given, settings, strategies as st

from arccount.enumerate import enumerate_planar_spaces, labeled_spaces
from arccount.field import build_field
from arccount.geometry import enumerate_points, pgl_order, rank
from arccount.library import NAMED, h1, h2, h3, h4, skew_lines_space
from arccount.realize import (FramePreconditionFailed, UnknownId, UnsupportedMethod, alternative_h6_form,
                              closed_form, count_arcs, count_strong, count_weak, frame_layout,
                              frame_reduced_strong_count, ordered_independent_count, realization_row)
from arccount.spaces import PlanarSpace, leq_bits


def brute_force(f, q, strong=True):
    """Injective maps checked on every 3- and 4-subset; no symmetry, no pruning."""
    F = build_field(q)
    pts = enumerate_points(4, q)
    total = 0
    for image in permutations(range(len(pts)), f.n):
        ok = True
        for t in combinations(range(f.n), 3):
            real = rank([pts[image[i]] for i in t], F) <= 2
            want = f.line_containing(t) is not None
            if (real != want) if strong else (want and not real):
                ok = False
                break
        if ok:
            for s in combinations(range(f.n), 4):
                real = rank([pts[image[i]] for i in s], F) <= 3
                want = f.dependent(s)
                if (real != want) if strong else (want and not real):
                    ok = False
                    break
        total += ok
    return total


SMALL = [PlanarSpace(3), PlanarSpace(3, [(0, 1, 2)]), PlanarSpace(4), PlanarSpace(4, [], [(0, 1, 2, 3)]),
         PlanarSpace(4, [(0, 1, 2)], [(0, 1, 2, 3)]), PlanarSpace(4, [(0, 1, 2, 3)])]


@pytest.mark.parametrize("f", SMALL, ids=lambda f: f.encoding)
def test_counts_match_unpruned_bruteforce(f):
    for strong, fn in ((True, count_strong), (False, count_weak)):
        assert fn(f, 2) == brute_force(f, 2, strong)


@pytest.mark.parametrize("n", range(1, 6))
def test_symmetry_reductions_agree(n):
    for entry in enumerate_planar_spaces(n):
        f = entry.space
        s = count_strong(f, 2, "none")
        assert count_strong(f, 2, "basis") == count_strong(f, 2, "torus") == s
        assert count_weak(f, 2, "none") == count_weak(f, 2)
        assert s <= count_weak(f, 2)


def test_strong_examples():
    assert count_strong(skew_lines_space(), 2) == 20160 == 7 * 5 * 9 * 64
    assert count_strong(h1(), 2) == 0
    assert count_strong(h2(), 2) == 20160


def test_weak_examples():
    for q in (2, 3):
        N = q ** 3 + q ** 2 + q + 1
        assert count_weak(PlanarSpace(2), q) == N * (N - 1)
    four_on_a_line = PlanarSpace(4, [(0, 1, 2, 3)])
    assert count_weak(four_on_a_line, 2) == 0  # lines of P^3(F_2) have three points
    assert count_weak(four_on_a_line, 3) == count_strong(four_on_a_line, 3) == 130 * 24
    assert count_strong(PlanarSpace(3, [(0, 1, 2)]), 2) == 35 * 6


@pytest.mark.parametrize("n", range(1, 6))
@pytest.mark.parametrize("q", [2, 3])
def test_weak_is_sum_over_refinements(n, q):
    labeled = labeled_spaces(n)
    for entry in enumerate_planar_spaces(n):
        f = entry.space
        total = sum(count_strong(g, q) for g, _ in labeled if leq_bits(f, g))
        assert count_weak(f, q) == total


@settings(max_examples=15)
@given(st.sampled_from([e.space for n in range(3, 7) for e in enumerate_planar_spaces(n)]),
       st.randoms(use_true_random=False))
def test_relabeling_preserves_counts(f, rnd):
    perm = list(range(f.n))
    rnd.shuffle(perm)
    g = f.relabel(perm)
    assert count_strong(g, 3) == count_strong(f, 3)
    assert count_weak(g, 2) == count_weak(f, 2)


def test_general_position_counts_divisible_by_pgl():
    for entry in enumerate_planar_spaces(6):
        f = entry.space
        if any(not f.dependent(s) and not any(f.collinear(t) for t in combinations(s, 3))
               and f.rank(s) == 4 for s in combinations(range(6), 4)):
            has_frame = any(
                all(not f.dependent(s) for s in combinations(five, 4))
                for five in combinations(range(6), 5))
            if has_frame:
                for q in (2, 3):
                    assert count_strong(f, q) % pgl_order(4, q) == 0


def test_arc_examples():
    assert count_arcs(5, 2, "naive") == 20160
    assert count_arcs(6, 4, "naive") == 0
    assert count_arcs(7, 7, "frame") == 120 * pgl_order(4, 7)


@pytest.mark.parametrize("n", [5, 6, 7])
@pytest.mark.parametrize("q", [2, 3])
def test_arc_methods_agree(n, q):
    assert count_arcs(n, q, "naive") == count_arcs(n, q, "frame")


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_arc_exhaustive(n):
    assert count_arcs(n, 2, "exhaustive") == count_arcs(n, 2, "naive")


def test_arc_errors():
    with pytest.raises(UnsupportedMethod):
        count_arcs(4, 2, "frame")
    with pytest.raises(UnsupportedMethod):
        count_arcs(5, 2, "magic")
    with pytest.raises(UnsupportedMethod):
        count_strong(PlanarSpace(5), 2, "magic")


def test_ordered_independent_count():
    assert ordered_independent_count(4, 2) == pgl_order(4, 2) // 1
    assert ordered_independent_count(1, 3) == 40


@pytest.mark.parametrize("name,q", [("h2", 2), ("A6", 2), ("h5", 3), ("h6", 2)])
def test_frame_precondition_failures(name, q):
    with pytest.raises(FramePreconditionFailed):
        frame_reduced_strong_count(NAMED[name](), q)


def test_frame_layout_shape():
    lay = frame_layout(h3())
    assert len(set(lay.frame)) == 5 and lay.plane_point not in lay.frame
    assert set(lay.frame) | {lay.plane_point} | set(lay.others) == set(range(7))


@pytest.mark.parametrize("h", [h1, h3, h4], ids=["h1", "h3", "h4"])
@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_frame_reduction_matches_search(h, q):
    assert frame_reduced_strong_count(h(), q) == count_strong(h(), q)


def test_frame_examples():
    assert frame_reduced_strong_count(h3(), 3) == pgl_order(4, 3)
    assert frame_reduced_strong_count(h1(), 3) == pgl_order(4, 3)


def test_closed_form_examples():
    assert closed_form("A6")(3) == 13 * 10 * 16 * 4 * 729 == 6065280
    assert closed_form("h5")(2) == 0
    assert alternative_h6_form()(2) == 0
    assert closed_form("h6")(2) == 15 * 168
    with pytest.raises(UnknownId):
        closed_form("h7")


@pytest.mark.parametrize("name", sorted(NAMED))
@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_closed_forms_match_search(name, q):
    assert closed_form(name)(q) == count_strong(NAMED[name](), q)


def test_alternative_h6_form_disagrees_at_even_q():
    for q in (2, 4, 8):
        assert alternative_h6_form()(q) != count_strong(NAMED["h6"](), q)
    for q in (3, 5, 7):
        assert alternative_h6_form()(q) == count_strong(NAMED["h6"](), q) == 0


def test_realization_row_json():
    row = realization_row(skew_lines_space(), 2)
    data = json.loads(row.to_json())
    assert data["strong"] == "20160" and data["method"] == "bruteforce"
    assert set(data) == {"space", "q", "strong", "weak", "method", "elapsed_ms"}
    assert int(data["weak"]) >= int(data["strong"])
    assert realization_row(h3(), 2, weak=False, method="frame").strong == 0
