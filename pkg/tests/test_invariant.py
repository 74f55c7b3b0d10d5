import itertools
import random

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from knothom.braids import BraidWord, is_knot, markov_conjugate, markov_stabilize, random_braid, random_knot_braid, torus_braid
from knothom.config import Caps
from knothom.errors import LengthMismatch, MalformedSpec, NegativeParameter, NotAKnot, StateSpaceTooLarge
from knothom.families import make_family, named_subset
from knothom.groups import conj_closure
from knothom.invariant import (
    braid_act,
    count_by_trace,
    count_by_wirtinger,
    diagram_arcs,
    fixed_colorings,
    image_abelianization_check,
    r_apply,
    r_apply_inv,
    torus_pair_count,
)

import oracles
from conftest import BUILTIN_PAIRS, pair, pair_id


# Oracle values, computed with explicit permutations of the triangle / pentagon.
def _dihedral_oracle(n, word, strands):
    rep, _, _ = oracles.dihedral_rep(n)
    refl = [p for p in rep.elements if oracles.pmul(p, p) == rep.identity and p != rep.identity]
    if n % 2 == 0:
        raise ValueError("odd n only")
    return oracles.brute_fixed_count(rep, refl, word, strands)


def test_oracle_values_frozen():
    assert _dihedral_oracle(3, [1, 1, 1], 2) == 9
    assert _dihedral_oracle(5, [1, 1, 1], 2) == 5
    assert _dihedral_oracle(5, [1] * 5, 2) == 25
    assert _dihedral_oracle(3, [1, 1, 1, -2], 3) == 9
    assert _dihedral_oracle(3, [-1, 1, 1], 2) == 3


def test_r_apply_examples(d3):
    G, C = d3
    r1, r2 = G.named["r1"], G.named["r2"]
    for a in C.members:
        assert r_apply(C, a, a) == (a, a)
        assert r_apply_inv(C, a, a) == (a, a)
    r1r2r1 = G.mul[G.mul[r1, r2], r1]
    assert r_apply(C, r1, r2) == (r1r2r1, r1)
    assert r_apply_inv(C, r1r2r1, r1) == (r1, r2)


def test_r_apply_commuting_is_flip():
    G = make_family("cyclic", 6)
    C = named_subset(G, "nonidentity")
    for a, b in itertools.product(C.members, repeat=2):
        assert r_apply(C, a, b) == (b, a)


def test_r_apply_rejects_nonmembers(d3):
    G, C = d3
    with pytest.raises(MalformedSpec):
        r_apply(C, G.id, G.named["r1"])


def test_braid_act_examples(d3):
    G, C = d3
    pos = C.position
    r1, r2 = G.named["r1"], G.named["r2"]
    col = (pos[r1], pos[r2])
    assert braid_act(BraidWord(2), col, C) == col
    r1r2r1 = G.mul[G.mul[r1, r2], r1]
    assert braid_act(BraidWord.from_ints([1]), col, C) == (pos[r1r2r1], pos[r1])
    rng = random.Random(1)
    for _ in range(20):
        beta = random_braid(rng, 4, 8)
        for i in range(C.c):
            assert braid_act(beta, (i,) * 4, C) == (i,) * 4
    with pytest.raises(LengthMismatch):
        braid_act(BraidWord(3), (0, 0), C)


def test_count_by_trace_examples():
    G, C = pair("dihedral", 3, "reflections")
    assert count_by_trace(BraidWord(1), G, C).count == 3
    assert count_by_trace(torus_braid(1), G, C).count == 9
    G5, C5 = pair("dihedral", 5, "reflections")
    assert count_by_trace(torus_braid(1), G5, C5).count == 5
    assert count_by_trace(torus_braid(2), G5, C5).count == 25


def test_count_report_fields(d3):
    G, C = d3
    report = count_by_trace(torus_braid(1), G, C)
    assert report.to_dict() == {"count": 9, "strands": 2, "c": 3, "bound": 9, "method": "trace"}
    assert list(report.to_dict()) == ["count", "strands", "c", "bound", "method"]


def test_count_by_wirtinger_examples(d3):
    G, C = d3
    assert count_by_wirtinger(BraidWord(1), G, C).count == 3
    assert count_by_wirtinger(torus_braid(1), G, C).count == 9
    stabilized = BraidWord.from_ints([1, 1, 1, -2], 3)
    assert count_by_wirtinger(stabilized, G, C).count == 9
    assert count_by_trace(stabilized, G, C).count == 9


def test_diagram_arcs_counts():
    # a knot diagram with n crossings has n arcs once every crossing has an undercrossing
    for word in ([1, 1, 1], [1, -2, 1, -2], [1, 2, 3, -1, 2]):
        beta = BraidWord.from_ints(word)
        n_arcs, crossings = diagram_arcs(beta)
        assert n_arcs == len(word) == len(crossings)
    n_arcs, crossings = diagram_arcs(BraidWord(1))
    assert (n_arcs, crossings) == (1, [])


def test_torus_pair_count_examples():
    G, C = pair("dihedral", 3, "reflections")
    assert torus_pair_count(0, G, C).count == C.c
    assert torus_pair_count(1, G, C).count == 9
    S, CS = pair("sl2_zm", 2, "ab_class")
    assert CS.c == 3
    assert torus_pair_count(1, S, CS).count == 9
    G5, C5 = pair("dihedral", 5, "reflections")
    assert torus_pair_count(1, G5, C5).count == 5
    with pytest.raises(NegativeParameter):
        torus_pair_count(-1, G, C)


def test_torus_pair_oracle_values():
    rep = oracles.MatRep(2)
    A, B = (1, 1, 0, 1), (1, 0, 1, 1)
    C = oracles.conj_class_closure(rep, [A, B])
    assert len(C) == 3
    assert oracles.brute_torus_pairs(rep, C, 1) == 9


@pytest.mark.parametrize("p", range(0, 5))
def test_torus_pairs_against_explicit_model(p):
    rep, s, r2 = oracles.dihedral_rep(5)
    refl = oracles.conj_class_closure(rep, [s, r2])
    G, C = pair("dihedral", 5, "reflections")
    assert torus_pair_count(p, G, C).count == oracles.brute_torus_pairs(rep, refl, p)


@pytest.mark.parametrize("word", [[1, 2, 1, 2], [1, -2, 1, -2], [1, 2, -3, -2, 1, 2, 3], [1, -2, 3, 1, -2], [-1, -1, -1], [1, 1, 1, 1, 1]])
def test_trace_matches_brute_force_in_s4(word):
    G, C = pair("symmetric", 4, "transpositions")
    rep = oracles.symmetric_rep(4)
    transp = [p for p in rep.elements if sum(1 for i, x in enumerate(p) if i != x) == 2]
    beta = BraidWord.from_ints(word)
    assert is_knot(beta)
    expected = oracles.brute_fixed_count(rep, transp, word, beta.strands)
    assert count_by_trace(beta, G, C).count == expected
    assert count_by_wirtinger(beta, G, C).count == expected


def test_fixed_colorings_are_fixed_and_lexicographic(d3):
    G, C = d3
    beta = BraidWord.from_ints([1, -2, 1, -2])
    fixed = fixed_colorings(beta, G, C)
    rows = [tuple(int(x) for x in r) for r in fixed]
    assert rows == sorted(rows)
    for r in rows:
        assert braid_act(beta, r, C) == r
    brute = [col for col in itertools.product(range(C.c), repeat=3) if braid_act(beta, col, C) == col]
    assert rows == brute


def test_errors(d3):
    G, C = d3
    with pytest.raises(NotAKnot):
        count_by_trace(BraidWord.from_ints([1, 1]), G, C)
    with pytest.raises(NotAKnot):
        count_by_wirtinger(BraidWord(2), G, C)
    with pytest.raises(StateSpaceTooLarge):
        count_by_trace(torus_braid(5), G, C, Caps(state_cap=50))
    with pytest.raises(StateSpaceTooLarge):
        count_by_wirtinger(torus_braid(5), G, C, Caps(state_cap=50))
    other = named_subset(make_family("dihedral", 3), "reflections")
    with pytest.raises(MalformedSpec):
        count_by_trace(torus_braid(1), G, other)


def test_threaded_enumeration_is_deterministic():
    G, C = pair("alternating", 5, "double_transpositions")
    beta = BraidWord.from_ints([1, 2, 3, 4, -1, -1])
    serial = fixed_colorings(beta, G, C)
    threaded = fixed_colorings(beta, G, C, workers=4)
    assert np.array_equal(serial, threaded)
    assert count_by_trace(beta, G, C, workers=4) == count_by_trace(beta, G, C)


SMALL_PAIRS = [p for p in BUILTIN_PAIRS if pair(*p)[1].c <= 12]


@pytest.mark.parametrize("spec", SMALL_PAIRS, ids=pair_id)
def test_yang_baxter_and_inversion(spec):
    G, C = pair(*spec)
    for a, b in itertools.product(C.members, repeat=2):
        x, y = r_apply(C, a, b)
        assert x in C
        assert r_apply_inv(C, x, y) == (a, b)
    for a, b, c in itertools.product(C.members, repeat=3):
        # R at (1,2), (2,3), (1,2)
        x, y = r_apply(C, a, b)
        y, z = r_apply(C, y, c)
        x, y = r_apply(C, x, y)
        left = (x, y, z)
        # R at (2,3), (1,2), (2,3)
        y, z = r_apply(C, b, c)
        x, y = r_apply(C, a, y)
        y, z = r_apply(C, y, z)
        assert left == (x, y, z)


@pytest.mark.parametrize("spec", BUILTIN_PAIRS, ids=pair_id)
def test_bounds_on_random_braids(spec):
    G, C = pair(*spec)
    rng = random.Random(7)
    for _ in range(15):
        k = rng.randint(1, 3)
        if C.c**k > 10**4:
            k = 2
        beta = random_knot_braid(rng, k, 8)
        n = count_by_trace(beta, G, C).count
        assert C.c <= n <= C.c**k
        assert count_by_wirtinger(beta, G, C).count == n


@st.composite
def knot_braids(draw, max_strands=3, max_len=8):
    k = draw(st.integers(1, max_strands))
    if k == 1:
        return BraidWord(1)
    word = draw(st.lists(st.integers(1, k - 1).flatmap(lambda g: st.sampled_from([g, -g])), min_size=k - 1, max_size=max_len))
    beta = BraidWord.from_ints(word, k)
    assume(is_knot(beta))
    return beta


@settings(max_examples=60, deadline=None)
@given(knot_braids(), st.data(), st.sampled_from([("dihedral", 3, "reflections"), ("symmetric", 4, "transpositions"), ("sl2_zm", 3, "ab_class")]))
def test_markov_invariance(beta, data, spec):
    G, C = pair(*spec)
    base = count_by_trace(beta, G, C).count
    if beta.strands > 1:
        gamma_word = data.draw(
            st.lists(st.integers(1, beta.strands - 1).flatmap(lambda g: st.sampled_from([g, -g])), max_size=4)
        )
        gamma = BraidWord.from_ints(gamma_word, beta.strands)
        assert count_by_trace(markov_conjugate(beta, gamma), G, C).count == base
    sign = data.draw(st.sampled_from([1, -1]))
    stabilized = markov_stabilize(beta, sign)
    assert count_by_trace(stabilized, G, C).count == base
    assert count_by_wirtinger(stabilized, G, C).count == base


@pytest.mark.parametrize("m", [3, 4, 5, 7])
def test_commuting_subset_gives_constant(m):
    G = make_family("cyclic", m)
    C = named_subset(G, "nonidentity")
    assert C.commutes
    rng = random.Random(m)
    for _ in range(20):
        beta = random_knot_braid(rng, rng.randint(1, 4), 8)
        assert count_by_trace(beta, G, C).count == C.c


def test_image_check_examples():
    G, C = pair("dihedral", 3, "reflections")
    trivial = conj_closure(G, [G.id])
    assert image_abelianization_check(torus_braid(1), G, trivial)
    assert image_abelianization_check(torus_braid(1), G, C)
    S, CS = pair("symmetric", 4, "transpositions")
    assert image_abelianization_check(torus_braid(1), S, CS)


def test_image_check_detects_noncyclic_abelianization():
    # sanity of the check itself: Klein four inside S_4 has abelianization Z2 x Z2
    from knothom.groups import abelianization_is_cyclic, generated_subgroup

    S = make_family("symmetric", 4)
    V = generated_subgroup(S, [S.index("(12)(34)"), S.index("(13)(24)")])
    assert V.order == 4
    assert not abelianization_is_cyclic(S, V)
