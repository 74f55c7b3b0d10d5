"""Counting homomorphisms from a braid-closure knot group to G with meridians in C.

Conventions, fixed globally: strands are oriented downward and a positive
letter sigma_i means the strand at position i crosses over the strand at
position i+1. Passing a positive crossing, the colors (a, b) at positions
(i, i+1) become (a b a^-1, a); a negative crossing sends (a, b) to
(b, b^-1 a b). The same rule, read as a Wirtinger relation, says the
outgoing under-arc is over * in * over^-1 at a positive crossing and
over^-1 * in * over at a negative one.

Three routes compute the count:

* ``count_by_trace`` counts colorings of the strand tops fixed by the braid
  action (the trace of a permutation matrix),
* ``count_by_wirtinger`` searches arc colorings of the closed diagram,
* ``torus_pair_count`` counts pairs (a, b) with (ab)^p a = b (ab)^p, which
  presents the group of the (2, 2p+1) torus knot.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .braids import BraidWord, is_knot
from .config import DEFAULT_CAPS, Caps
from .errors import LengthMismatch, MalformedSpec, NegativeParameter, NotAKnot, StateSpaceTooLarge
from .groups import ConjSubset, GroupTable, abelianization_is_cyclic, generated_subgroup

METHODS = ("trace", "wirtinger", "torus_pairs")
_CHUNK = 1 << 16


@dataclass(frozen=True)
class CountReport:
    count: int
    strands: int
    c: int
    bound: int
    method: str

    def to_dict(self) -> dict:
        return {
            "count": self.count,
            "strands": self.strands,
            "c": self.c,
            "bound": self.bound,
            "method": self.method,
        }


def _require_member(C: ConjSubset, *elems: int) -> None:
    for a in elems:
        if a not in C:
            raise MalformedSpec(f"element {C.group.labels[a]!r} is not in the subset")


def r_apply(C: ConjSubset, a: int, b: int) -> tuple[int, int]:
    """(a, b) -> (a b a^-1, a) on group element indices."""
    _require_member(C, a, b)
    return C.group.conj(a, b), a


def r_apply_inv(C: ConjSubset, a: int, b: int) -> tuple[int, int]:
    """(a, b) -> (b, b^-1 a b); undoes ``r_apply``."""
    _require_member(C, a, b)
    G = C.group
    return b, G.conj(G.inv_list[b], a)


def braid_act(beta: BraidWord, col: Sequence[int], C: ConjSubset) -> tuple[int, ...]:
    """Push a coloring (member positions, one per strand top) through the braid."""
    if len(col) != beta.strands:
        raise LengthMismatch(f"coloring has length {len(col)} but the braid has {beta.strands} strands")
    fwd = C.conj_table.tolist()
    back = C.inv_conj_table.tolist()
    state = list(col)
    for g, s in beta.letters:
        x, y = state[g - 1], state[g]
        if s > 0:
            state[g - 1], state[g] = fwd[x][y], x
        else:
            state[g - 1], state[g] = y, back[y][x]
    return tuple(state)


def _check_inputs(beta: BraidWord, G: GroupTable, C: ConjSubset, caps: Caps) -> int:
    if C.group is not G:
        raise MalformedSpec("subset belongs to a different group table")
    if not is_knot(beta):
        raise NotAKnot(f"closure of {beta} on {beta.strands} strands has more than one component")
    states = C.c**beta.strands
    steps = states * max(1, len(beta))
    if steps > caps.state_cap:
        raise StateSpaceTooLarge(
            f"{C.c}^{beta.strands} colorings x {len(beta)} letters = {steps} steps exceeds the cap {caps.state_cap}"
        )
    return states


def _fixed_in_chunk(beta: BraidWord, C: ConjSubset, start: int, stop: int) -> np.ndarray:
    k, c = beta.strands, C.c
    codes = np.arange(start, stop, dtype=np.int64)
    digits = np.empty((stop - start, k), dtype=np.int64)
    # first strand is the most significant digit: lexicographic order over C^k
    for j in range(k - 1, -1, -1):
        digits[:, j] = codes % c
        codes //= c
    state = digits.copy()
    fwd, back = C.conj_table, C.inv_conj_table
    for g, s in beta.letters:
        x, y = state[:, g - 1].copy(), state[:, g].copy()
        if s > 0:
            state[:, g - 1] = fwd[x, y]
            state[:, g] = x
        else:
            state[:, g - 1] = y
            state[:, g] = back[y, x]
    return digits[(state == digits).all(axis=1)]


def fixed_colorings(
    beta: BraidWord,
    G: GroupTable,
    C: ConjSubset,
    caps: Caps = DEFAULT_CAPS,
    workers: int = 1,
) -> np.ndarray:
    """All colorings in C^k fixed by the braid action, in lexicographic order.

    Rows are member positions. The coloring space is split into chunks;
    with ``workers > 1`` chunks run on a thread pool and are merged in order.
    """
    total = _check_inputs(beta, G, C, caps)
    bounds = [(lo, min(lo + _CHUNK, total)) for lo in range(0, total, _CHUNK)]
    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda b: _fixed_in_chunk(beta, C, *b), bounds))
    else:
        parts = [_fixed_in_chunk(beta, C, lo, hi) for lo, hi in bounds]
    return np.concatenate(parts) if parts else np.empty((0, beta.strands), dtype=np.int64)


def count_by_trace(
    beta: BraidWord,
    G: GroupTable,
    C: ConjSubset,
    caps: Caps = DEFAULT_CAPS,
    workers: int = 1,
) -> CountReport:
    """Number of fixed colorings, i.e. the trace of the permutation representing beta."""
    count = len(fixed_colorings(beta, G, C, caps, workers))
    return CountReport(count, beta.strands, C.c, C.c**beta.strands, "trace")


def diagram_arcs(beta: BraidWord) -> tuple[int, list[tuple[int, int, int, int]]]:
    """Arcs and crossings of the closed braid diagram.

    Returns ``(n_arcs, crossings)`` where each crossing is
    ``(over_arc, incoming_under_arc, outgoing_under_arc, sign)``. Arcs are
    numbered by first appearance: the k strand tops, then new under-arcs in
    letter order; bottom ends are glued back to the tops.
    """
    k = beta.strands
    parent = list(range(k + len(beta)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    seg = list(range(k))
    raw = []
    for t, (g, s) in enumerate(beta.letters):
        new = k + t
        left, right = seg[g - 1], seg[g]
        if s > 0:
            raw.append((left, right, new, 1))
            seg[g - 1], seg[g] = new, left
        else:
            raw.append((right, left, new, -1))
            seg[g - 1], seg[g] = right, new
    for pos in range(k):
        a, b = find(seg[pos]), find(pos)
        if a != b:
            parent[max(a, b)] = min(a, b)
    ids: dict[int, int] = {}
    for x in range(len(parent)):
        ids.setdefault(find(x), len(ids))
    crossings = [(ids[find(o)], ids[find(i)], ids[find(u)], s) for o, i, u, s in raw]
    return len(ids), crossings


def count_by_wirtinger(
    beta: BraidWord,
    G: GroupTable,
    C: ConjSubset,
    caps: Caps = DEFAULT_CAPS,
) -> CountReport:
    """Count arc colorings by C satisfying every crossing relation.

    Depth-first over arcs in diagram order; after each choice, every crossing
    whose over-arc and incoming under-arc are colored forces its outgoing
    under-arc, and contradictions prune the branch.
    """
    _check_inputs(beta, G, C, caps)
    n_arcs, crossings = diagram_arcs(beta)
    rows, inv = G.rows, G.inv_list
    members = list(C.members)
    color = [-1] * n_arcs

    def forced(over, under, sign):
        if sign > 0:
            return rows[rows[over][under]][inv[over]]
        return rows[rows[inv[over]][under]][over]

    def propagate(trail) -> bool:
        changed = True
        while changed:
            changed = False
            for o, i, u, s in crossings:
                co, ci = color[o], color[i]
                if co < 0 or ci < 0:
                    continue
                value = forced(co, ci, s)
                if color[u] < 0:
                    color[u] = value
                    trail.append(u)
                    changed = True
                elif color[u] != value:
                    return False
        return True

    def search(start: int) -> int:
        nxt = start
        while nxt < n_arcs and color[nxt] >= 0:
            nxt += 1
        if nxt == n_arcs:
            return 1
        total = 0
        for a in members:
            color[nxt] = a
            trail = [nxt]
            if propagate(trail):
                total += search(nxt + 1)
            for arc in trail:
                color[arc] = -1
        return total

    count = search(0)
    return CountReport(count, beta.strands, C.c, C.c**beta.strands, "wirtinger")


def torus_pair_count(p: int, G: GroupTable, C: ConjSubset) -> CountReport:
    """|{(a, b) in C x C : (ab)^p a = b (ab)^p}|, the count for the (2, 2p+1) torus knot."""
    if p < 0:
        raise NegativeParameter(f"torus parameter must be >= 0, got {p}")
    rows = G.rows
    count = 0
    for a in C.members:
        row_a = rows[a]
        for b in C.members:
            power = G.power(row_a[b], p)
            if rows[power][a] == rows[b][power]:
                count += 1
    return CountReport(count, 2, C.c, C.c**2, "torus_pairs")


def homomorphism_images(
    beta: BraidWord, G: GroupTable, C: ConjSubset, caps: Caps = DEFAULT_CAPS
) -> list[frozenset[int]]:
    """Distinct sets of meridian images (group elements) over all fixed colorings."""
    fixed = fixed_colorings(beta, G, C, caps)
    members = np.asarray(C.members)
    seen = {frozenset(int(x) for x in np.unique(members[row])) for row in fixed}
    return sorted(seen, key=sorted)


def image_abelianization_check(
    beta: BraidWord, G: GroupTable, C: ConjSubset, caps: Caps = DEFAULT_CAPS
) -> bool:
    """Is the abelianization of every homomorphism image cyclic?

    The image of a homomorphism is the subgroup generated by the meridian
    colors; the knot group abelianizes to Z, so each image must have a
    cyclic abelianization.
    """
    for images in homomorphism_images(beta, G, C, caps):
        if not abelianization_is_cyclic(G, generated_subgroup(G, images)):
            return False
    return True
