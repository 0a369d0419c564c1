"""Decoding observations back to exact lattice positions."""

import itertools

import pytest

from latticeobs.colorer import assign_color, color_walk, make_scheme, palette_size
from latticeobs.decoder import (
    AMBIGUOUS,
    INVALID,
    OK,
    AmbiguousObservation,
    ObservationError,
    WalkObservation,
    array_entry_diff,
    decode,
    decode2d,
    decode_directed,
    decode_undirected,
    recover_coef_diffs,
    recover_signs,
)
from latticeobs.gfpoly import FieldPrime, index_to_coeffs
from latticeobs.lattice import Edge, LatticeSpec, Walk, walk_dimension, walk_nodes
from latticeobs.oarray import OASpec, oa_entry
from latticeobs.verifier import fault_inject

P5 = FieldPrime(5)


def spec(dims, directed, t):
    return LatticeSpec(tuple(dims), directed, t)


def observe(w, params):
    return WalkObservation(color_walk(w, params), params)


def all_walks(s, max_len):
    "Every in-bounds walk of 1..max_len steps, with its node sequence."
    if s.directed:
        menu = list(range(1, 2 * s.d + 1))
    else:
        menu = [st for a in range(1, s.d + 1) for st in (a, -a)]
    for start in itertools.product(*(range(n) for n in s.dims)):
        for ln in range(1, max_len + 1):
            for steps in itertools.product(menu, repeat=ln):
                w = Walk(start, steps)
                try:
                    nodes = walk_nodes(w, s)
                except ValueError:
                    continue
                yield w, nodes


def distinct_edges(w, s):
    from latticeobs.lattice import walk_edges

    return len({e for e, _ in walk_edges(w, s)})


def test_observation_rejects_empty():
    params = make_scheme(spec((3, 3), True, 2), "colord")
    with pytest.raises(ValueError):
        WalkObservation((), params)


def test_recover_coef_diffs_frozen():
    assert recover_coef_diffs(1, (1, 1), (1, 0), 2, P5) == (0, 1)
    assert recover_coef_diffs(1, (1, 0), (0, 0), 2, P5) == (1, -4)
    assert recover_coef_diffs(0, (1, 1), (1, 1), 2, P5) == (0, 0)
    assert recover_coef_diffs(24, (0, 0), (0, 0), 2, P5) == (4, 4)
    # digits reconstruct the gap with the demanded parities
    deltas = recover_coef_diffs(16, (1, 0), (0, 1), 2, P5)
    assert deltas == (3, 1)
    assert deltas[0] * 5 + deltas[1] == 16


def test_recover_coef_diffs_validation():
    with pytest.raises(ValueError):
        recover_coef_diffs(1, (1, 1), (1, 0), 2, FieldPrime(2))  # even field
    with pytest.raises(ValueError):
        recover_coef_diffs(1, (1,), (1, 0), 2, P5)  # arity
    with pytest.raises(ObservationError):
        recover_coef_diffs(-1, (0, 0), (0, 0), 2, P5)
    with pytest.raises(ObservationError):
        # an odd digit cannot absorb a zero remainder at the bottom
        recover_coef_diffs(0, (0, 1), (0, 0), 2, P5)
    with pytest.raises(ObservationError):
        # leftover gap after all digits are spent
        recover_coef_diffs(24, (1, 0), (0, 0), 2, P5)


@pytest.mark.parametrize("t,modulus", [(1, 5), (2, 5), (3, 5), (2, 7)])
def test_recover_coef_diffs_exhaustive(t, modulus):
    "Matches direct coefficient subtraction for every ordered pair."
    p = FieldPrime(modulus)
    rows = modulus**t
    table = [index_to_coeffs(i, t, p) for i in range(rows)]
    parities = [tuple(a & 1 for a in c) for c in table]
    for hi in range(rows):
        for lo in range(hi + 1):
            want = tuple(a - b for a, b in zip(table[hi], table[lo]))
            got = recover_coef_diffs(hi - lo, parities[hi], parities[lo], t, p)
            assert got == want


def test_array_entry_diff_frozen():
    assert array_entry_diff((1, -4), 2, P5) == 3
    assert array_entry_diff((0, 0), 3, P5) == 0
    for j in (1, 2, 3, 4):
        assert array_entry_diff((0, 1), j, P5) == 1


def test_array_entry_diff_matches_entry_subtraction():
    oa = OASpec(P5, 2, 4)
    table = [index_to_coeffs(i, 2, P5) for i in range(25)]
    for hi in range(25):
        for lo in range(hi + 1):
            deltas = tuple(a - b for a, b in zip(table[hi], table[lo]))
            for j in range(1, 5):
                want = (oa_entry(hi, j, oa) - oa_entry(lo, j, oa)) % 5
                assert array_entry_diff(deltas, j, P5) == want


def test_decode_dispatch_rejects_aux_scheme():
    params = make_scheme(spec((3, 3), False, 1), "mod3-aux")
    with pytest.raises(ValueError):
        decode(WalkObservation((0,), params))


def test_decode_single_directed_edge():
    # sigma > node count, so one column pins the row
    params = make_scheme(spec((2, 2), True, 1), "colord")
    obs = WalkObservation((assign_color(Edge((1, 0), 2), params),), params)
    report = decode(obs)
    assert report.status == OK
    assert report.root == (1, 0)
    assert report.root_index == 0
    assert report.current == (1, 1)
    assert report.embedding == ((1, 0), (1, 1))


def test_decode_directed_exact_on_every_walk():
    """Exhaustive: every 2-dimensional walk of <= 4 steps decodes to
    itself; lower-dimensional walks come back invalid."""
    s = spec((3, 3), True, 2)
    params = make_scheme(s, "colord")
    decoded = 0
    for w, nodes in all_walks(s, 4):
        report = decode(observe(w, params))
        if walk_dimension(w, s) >= 2:
            assert report.status == OK
            assert report.embedding == tuple(nodes)
            assert report.current == nodes[-1]
            assert report.root == min(nodes)
            assert report.root_index == nodes.index(min(nodes))
            decoded += 1
        else:
            assert report.status == INVALID
    assert decoded == 792


def test_decode_undirected_taxonomy_exhaustive():
    """Exhaustive over <= 4 steps on a 3x3 lattice: two distinct edges
    and full dimension decode exactly; one-edge oscillations are
    ambiguous; the rest never decode to a wrong position."""
    s = spec((3, 3), False, 2)
    params = make_scheme(s, "undir")
    counts = {"ok": 0, "single": 0, "lowdim": 0}
    for w, nodes in all_walks(s, 4):
        report = decode(observe(w, params))
        if distinct_edges(w, s) < 2:
            assert report.status == AMBIGUOUS
            counts["single"] += 1
        elif walk_dimension(w, s) >= 2:
            assert report.status == OK
            assert report.embedding == tuple(nodes)
            assert report.current == nodes[-1]
            counts["ok"] += 1
        else:
            assert report.status in (INVALID, AMBIGUOUS)
            counts["lowdim"] += 1
    assert counts == {"ok": 648, "single": 96, "lowdim": 84}


def test_decode_undirected_l_walk():
    s = spec((4, 4), False, 2)
    params = make_scheme(s, "undir")
    report = decode(observe(Walk((1, 1), (1, 2)), params))
    assert report.status == OK
    assert report.current == (2, 2)
    assert report.root == (1, 1)


def test_recover_signs_frozen():
    s = spec((4, 4), False, 2)
    params = make_scheme(s, "undir")
    assert recover_signs(observe(Walk((0, 0), (1, 1)), params)) == [1, 1]
    obs = observe(Walk((0, 0), (1, 2, -2, -1)), params)
    assert recover_signs(obs) == [1, 1, -1, -1]


def test_recover_signs_oscillation_is_ambiguous():
    s = spec((4, 4), False, 2)
    params = make_scheme(s, "undir")
    obs = observe(Walk((2, 1), (1, -1, 1)), params)
    with pytest.raises(AmbiguousObservation):
        recover_signs(obs)
    assert decode(obs).status == AMBIGUOUS


@pytest.mark.parametrize("t", [1, 2])
def test_recover_signs_exhaustive(t):
    """Ground-truth signs come back for every two-edge walk of full
    dimension, and some digit stream always alternates."""
    s = spec((3, 3), False, t)
    params = make_scheme(s, "undir")
    checked = 0
    for w, nodes in all_walks(s, 4):
        if walk_dimension(w, s) != t or distinct_edges(w, s) < 2:
            continue
        signs = recover_signs(observe(w, params))
        assert signs == [1 if st > 0 else -1 for st in w.steps]
        checked += 1
    assert checked == {1: 84, 2: 648}[t]


def test_decode2d_square_cycle():
    s = spec((16, 16), True, 4)
    params = make_scheme(s, "color2")
    report = decode(observe(Walk((5, 5), (1, 2, 3, 4)), params))
    assert report.status == OK
    assert report.current == (5, 5)
    assert report.root == (5, 5)
    assert report.root_index == 0
    assert report.embedding == ((5, 5), (6, 5), (6, 6), (5, 6), (5, 5))


def test_decode2d_needs_all_four_orientations():
    s = spec((16, 16), True, 4)
    params = make_scheme(s, "color2")
    report = decode(observe(Walk((5, 5), (1, 2, 3)), params))
    assert report.status == INVALID


def test_decode2d_inconsistent_colors_rejected():
    "A remainder fault that pushes the paired x to 15 cannot place."
    s = spec((16, 16), True, 4)
    params = make_scheme(s, "color2")
    obs = observe(Walk((13, 5), (1, 2, 3, 4)), params)
    assert obs.colors[2] == 5  # x remainder 1, block base 4
    faulted = fault_inject(obs, 2, 7)  # remainder 3 pairs to x = 15
    assert decode(faulted).status == INVALID


def test_decode2d_exact_on_more_walks():
    s = spec((16, 16), True, 4)
    params = make_scheme(s, "color2")
    for start, steps in [
        ((7, 3), (1, 2, 3, 4, 2)),
        ((0, 0), (1, 1, 2, 3, 4)),
        ((14, 14), (2, 1, 4, 3)),
    ]:
        w = Walk(start, steps)
        nodes = walk_nodes(w, s)
        report = decode(observe(w, params))
        assert report.status == OK
        assert report.embedding == tuple(nodes)
        assert report.current == nodes[-1]


def test_out_of_palette_color_is_invalid():
    s = spec((3, 3), True, 2)
    params = make_scheme(s, "colord")
    obs = observe(Walk((0, 0), (1, 2)), params)
    faulted = fault_inject(obs, 1, palette_size(params))
    assert decode(faulted).status == INVALID


def test_orientation_fault_that_cannot_fit_is_invalid():
    "Faulting a color so the trace spans more than the lattice allows."
    s = spec((3, 2), True, 2)
    params = make_scheme(s, "colord")
    obs = observe(Walk((0, 0), (1, 2)), params)
    # replace the axis-1 color with an axis-2 color: traced steps (2, 2)
    # then span 2 on an axis of length 2, which fits nowhere
    faulted = fault_inject(obs, 0, assign_color(Edge((0, 0), 2), params))
    assert decode(faulted).status == INVALID


def test_identity_fault_changes_nothing():
    s = spec((3, 3), True, 2)
    params = make_scheme(s, "colord")
    obs = observe(Walk((1, 0), (2, 1, 4)), params)
    same = fault_inject(obs, 1, obs.colors[1])
    assert decode(same) == decode(obs)


def test_faults_never_impersonate_the_original():
    """Exhaustive single-position faults: decoding may fail or land on
    a different walk, but never returns the original embedding."""
    s = spec((3, 3), True, 2)
    params = make_scheme(s, "colord")
    w = Walk((0, 0), (1, 2))
    obs = observe(w, params)
    original = decode(obs)
    assert original.status == OK
    for c in range(palette_size(params)):
        if c == obs.colors[0]:
            continue
        report = decode(fault_inject(obs, 0, c))
        if report.status == OK:
            assert report.embedding != original.embedding
        else:
            assert report.status == INVALID


def test_decoder_direct_entrypoints_check_scheme():
    directed = make_scheme(spec((3, 3), True, 2), "colord")
    undirected = make_scheme(spec((3, 3), False, 2), "undir")
    obs_d = observe(Walk((0, 0), (1, 2)), directed)
    obs_u = observe(Walk((0, 0), (1, 2)), undirected)
    with pytest.raises(ValueError):
        decode_directed(obs_u)
    with pytest.raises(ValueError):
        decode_undirected(obs_d)
    with pytest.raises(ValueError):
        decode2d(obs_d)
