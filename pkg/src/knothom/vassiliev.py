"""Finite-type machinery: alternating crossing-switch sums, finite differences,
torus-knot profiles with their verdicts, witness search and claim checks."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .braids import BraidWord, CrossingSelection, is_knot, switch_crossings, torus_braid
from .config import DEFAULT_CAPS, Caps
from .errors import (
    IndexOutOfRange,
    MalformedSpec,
    MethodDisagreement,
    NotAKnot,
    ParamOutOfRange,
    TooManyCrossings,
    TooShort,
    UnsupportedParameter,
)
from .families import make_family, named_subset, perm_label
from .groups import ConjSubset, GroupTable, conj_closure, generated_subgroup
from .invariant import count_by_trace, count_by_wirtinger

CONSTANT = "Constant"
NOT_FINITE_TYPE = "NotFiniteType"


class ConstantInvariant:
    """Assigns the same value to every knot; its alternating sums must vanish."""

    def __init__(self, value: int = 1):
        self.value = value

    def __call__(self, beta: BraidWord) -> int:
        return self.value


class CountingInvariant:
    """K -> [K, G, C] as a callable on braid words."""

    def __init__(self, G: GroupTable, C: ConjSubset, method: str = "trace", caps: Caps = DEFAULT_CAPS):
        if method not in ("trace", "wirtinger"):
            raise MalformedSpec(f"counting method must be 'trace' or 'wirtinger', got {method!r}")
        self.G, self.C, self.method, self.caps = G, C, method, caps

    def __call__(self, beta: BraidWord) -> int:
        fn = count_by_trace if self.method == "trace" else count_by_wirtinger
        return fn(beta, self.G, self.C, self.caps).count


def finite_type_sum(
    v: Callable[[BraidWord], int],
    beta: BraidWord,
    positions: Iterable[int],
    caps: Caps = DEFAULT_CAPS,
) -> int:
    """Sum over eps in {+1,-1}^X of prod(eps) * v(beta with the eps=-1 crossings switched)."""
    X = tuple(int(p) for p in positions)
    if len(X) > caps.max_crossings:
        raise TooManyCrossings(f"|X| = {len(X)} exceeds the cap {caps.max_crossings}")
    if len(set(X)) != len(X):
        raise MalformedSpec("crossing positions must be distinct")
    for p in X:
        if not 0 <= p < len(beta):
            raise IndexOutOfRange(f"crossing position {p} outside a word of length {len(beta)}")
    # sign flips keep the closure permutation, so one check covers every variant
    if not is_knot(beta):
        raise NotAKnot(f"closure of {beta} is not a knot")
    total = 0
    for signs in itertools.product((1, -1), repeat=len(X)):
        variant = switch_crossings(beta, CrossingSelection(X, dict(zip(X, signs))))
        total += math.prod(signs) * v(variant)
    return total


def finite_differences(seq: Sequence[int]) -> list[list[int]]:
    """Row j holds the j-th forward differences; row 0 is the sequence itself."""
    if len(seq) < 2:
        raise TooShort("need at least two terms to take differences")
    rows = [list(seq)]
    while len(rows[-1]) > 1:
        prev = rows[-1]
        rows.append([b - a for a, b in zip(prev, prev[1:])])
    return rows


def is_polynomial_of_degree_at_most(seq: Sequence[int], n: int) -> bool:
    """True iff the (n+1)-th forward differences all vanish."""
    if n < 0:
        raise MalformedSpec(f"degree must be >= 0, got {n}")
    if len(seq) < n + 2:
        raise TooShort(f"degree-{n} test needs at least {n + 2} terms, got {len(seq)}")
    return not any(finite_differences(seq)[n + 1])


@dataclass(frozen=True)
class StarWitness:
    """a != b in C with (ab)^p a = b (ab)^p."""

    a: int
    b: int
    p: int
    a_label: str = field(default="", compare=False)
    b_label: str = field(default="", compare=False)

    def to_dict(self) -> dict:
        return {"a": self.a_label, "b": self.b_label, "p": self.p}


def check_witness(G: GroupTable, w: StarWitness) -> bool:
    if w.a == w.b:
        return False
    x = G.power(G.rows[w.a][w.b], w.p)
    return G.rows[x][w.a] == G.rows[w.b][x]


def _pair_relation_sweep(G: GroupTable, C: ConjSubset, p_max: int):
    """Yield (p, mask) where mask[i, j] says (C[i], C[j]) satisfies the torus relation at p."""
    m = np.asarray(C.members, dtype=np.int64)
    a = np.repeat(m, len(m))
    b = np.tile(m, len(m))
    ab = G.mul[a, b].astype(np.int64)
    power = np.full(len(a), G.id, dtype=np.int64)
    for p in range(p_max + 1):
        yield p, (G.mul[power, a] == G.mul[b, power]).reshape(len(m), len(m))
        power = G.mul[power, ab].astype(np.int64)


def _profile_counts(G: GroupTable, C: ConjSubset, p_max: int) -> list[int]:
    return [int(mask.sum()) for _, mask in _pair_relation_sweep(G, C, p_max)]


def star_search(G: GroupTable, C: ConjSubset, p_max: int) -> list[StarWitness]:
    """Every (a, b, p) with a != b in C and 0 <= p <= p_max satisfying
    (ab)^p a = b (ab)^p, sorted by (a, b, p)."""
    if p_max < 0:
        raise ParamOutOfRange(f"p_max must be >= 0, got {p_max}")
    members = C.members
    found = []
    for p, mask in _pair_relation_sweep(G, C, p_max):
        np.fill_diagonal(mask, False)
        for i, j in zip(*np.nonzero(mask)):
            a, b = members[i], members[j]
            found.append(StarWitness(a, b, p, G.labels[a], G.labels[b]))
    found.sort(key=lambda w: (w.a, w.b, w.p))
    return found


def detect_period(counts: Sequence[int]) -> int | None:
    """Smallest d with counts[p] == counts[p+d] throughout, among d <= len/2."""
    n = len(counts)
    for d in range(1, n // 2 + 1):
        if all(counts[p] == counts[p + d] for p in range(n - d)):
            return d
    return None


@dataclass(frozen=True)
class TorusProfile:
    """p -> [K_p, G, C] over p = 0..p_max for the (2, 2p+1) torus knots.

    The sequence is periodic with period dividing the exponent of G, so when
    ``exhaustive`` is set (the range covers a full exponent) the verdict holds
    for every p, not just the inspected range.
    """

    p_range: tuple[int, int]
    counts: tuple[int, ...]
    period: int | None
    max_count: int
    bound: int
    verdict: str
    c: int
    exponent: int
    exhaustive: bool

    @property
    def min_count(self) -> int:
        return min(self.counts)

    def to_dict(self) -> dict:
        return {
            "p_range": list(self.p_range),
            "counts": list(self.counts),
            "period": self.period,
            "bound": self.bound,
            "verdict": self.verdict,
        }


def default_p_max(G: GroupTable, caps: Caps = DEFAULT_CAPS) -> int:
    return max(1, min(G.exponent - 1, caps.exponent_cap))


def torus_profile(
    G: GroupTable,
    C: ConjSubset,
    p_max: int | None = None,
    caps: Caps = DEFAULT_CAPS,
) -> TorusProfile:
    """Counts for p = 0..p_max with a Constant or NotFiniteType verdict.

    Without ``p_max`` the range is one full exponent of G (capped by
    ``caps.exponent_cap``). Entries up to ``caps.cross_check_cap`` are
    recomputed through the braid action and must agree.
    """
    if p_max is None:
        p_max = default_p_max(G, caps)
    if p_max < 1:
        raise ParamOutOfRange(f"p_max must be >= 1, got {p_max}")
    counts = _profile_counts(G, C, p_max)
    for p in range(min(p_max, caps.cross_check_cap) + 1):
        via_braid = count_by_trace(torus_braid(p), G, C, caps).count
        if via_braid != counts[p]:
            raise MethodDisagreement(f"p={p}: pair count {counts[p]} but braid trace {via_braid}")
    verdict = CONSTANT if len(set(counts)) == 1 else NOT_FINITE_TYPE
    return TorusProfile(
        p_range=(0, p_max),
        counts=tuple(counts),
        period=detect_period(counts),
        max_count=max(counts),
        bound=C.c**2,
        verdict=verdict,
        c=C.c,
        exponent=G.exponent,
        exhaustive=p_max >= G.exponent - 1,
    )


@dataclass(frozen=True)
class FiniteTypeVerdict:
    claim: str
    holds: bool
    witness: StarWitness | None
    profile: TorusProfile
    group: str
    c: int
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "holds": self.holds,
            "evidence": {
                "group": self.group,
                "c": self.c,
                "witness": self.witness.to_dict() if self.witness else None,
                "profile": self.profile.to_dict(),
                **self.details,
            },
        }


CLAIMS = ("lemma2", "lemma3", "thm3a", "thm3b", "thm3c", "thm3d")


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % q for q in range(2, math.isqrt(n) + 1))


def _family(family: str, param: int, caps: Caps) -> GroupTable:
    try:
        return make_family(family, param, caps.order_cap)
    except ParamOutOfRange as exc:
        raise UnsupportedParameter(str(exc)) from exc


def _ngon_reflections(G: GroupTable, n: int) -> tuple[int, int]:
    """The reflections i -> -i and i -> 1-i (mod n) of an n-gon, as elements of S_n."""
    r1 = perm_label([(-i) % n for i in range(n)])
    r2 = perm_label([(1 - i) % n for i in range(n)])
    return G.index(r1), G.index(r2)


def _setup_claim(claim: str, n: int, caps: Caps):
    """Return (description, G, C, expected (a, b, p) or None, details)."""
    details: dict = {}
    if claim == "lemma2":
        if n < 3 or n % 2 == 0:
            raise UnsupportedParameter("lemma2 needs an odd n >= 3")
        G = _family("dihedral", n, caps)
        C = named_subset(G, "reflections")
        return (
            f"[K, D_{n}, reflections] is not of finite type",
            G, C, (G.named["r1"], G.named["r2"], (n - 1) // 2), details,
        )
    if claim in ("lemma3", "thm3d"):
        if claim == "thm3d" and not _is_prime(n):
            raise UnsupportedParameter(f"thm3d covers prime fields only; {n} is not prime")
        if n < 2:
            raise UnsupportedParameter(f"{claim} needs m >= 2")
        G = _family("sl2_zm", n, caps)
        C = named_subset(G, "ab_class")
        A, B = G.named["A"], G.named["B"]
        rows = G.rows
        details["aba_equals_bab"] = rows[rows[A][B]][A] == rows[rows[B][A]][B]
        ring = f"F_{n}" if claim == "thm3d" else f"Z_{n}"
        return (
            f"[K, SL(2,{ring}), class of A and B] is not of finite type",
            G, C, (A, B, 1), details,
        )
    if claim == "thm3a":
        if n < 3 or n % 2 == 0:
            raise UnsupportedParameter("thm3a needs an odd n >= 3")
        G = _family("symmetric", n, caps)
        r1, r2 = _ngon_reflections(G, n)
        C = conj_closure(G, [r1, r2])
        rows = G.rows
        details["dihedral_subgroup_order"] = generated_subgroup(G, [r1, r2]).order
        details["dihedral_relations"] = (
            rows[r1][r1] == G.id and rows[r2][r2] == G.id and G.power(rows[r1][r2], n) == G.id
        )
        return (
            f"[K, S_{n}, conjugates of the D_{n} reflections] is not of finite type",
            G, C, (r1, r2, (n - 1) // 2), details,
        )
    if claim == "thm3b":
        if n < 3:
            raise UnsupportedParameter("thm3b needs n >= 3")
        G = _family("symmetric", n, caps)
        C = named_subset(G, "transpositions")
        return (
            f"[K, S_{n}, transpositions] is not of finite type",
            G, C, (G.index("(1 2)"), G.index("(2 3)"), 1), details,
        )
    if claim == "thm3c":
        if n < 5:
            raise UnsupportedParameter("thm3c needs n >= 5")
        G = _family("alternating", n, caps)
        C = named_subset(G, "double_transpositions")
        a = G.index(f"(1 2)({n - 1} {n})")
        b = G.index(f"(2 3)({n - 1} {n})")
        return (
            f"[K, A_{n}, double transpositions] is not of finite type",
            G, C, (a, b, 1), details,
        )
    raise UnsupportedParameter(f"unknown claim {claim!r}; expected one of {', '.join(CLAIMS)}")


def verify_claim(claim: str, param: int, caps: Caps = DEFAULT_CAPS) -> FiniteTypeVerdict:
    """Build the claim's (G, C), search for witnesses and profile the torus knots.

    Holds iff the claim's named witness pair appears in the search output and
    the profile is non-constant.
    """
    description, G, C, expected, details = _setup_claim(claim, int(param), caps)
    p_max = max(default_p_max(G, caps), expected[2])
    profile = torus_profile(G, C, p_max, caps)
    witnesses = star_search(G, C, p_max)
    target = StarWitness(*expected, G.labels[expected[0]], G.labels[expected[1]])
    found = target in witnesses
    checks_ok = all(v for v in details.values() if isinstance(v, bool))
    if "dihedral_subgroup_order" in details:
        checks_ok = checks_ok and details["dihedral_subgroup_order"] == 2 * int(param)
    holds = found and check_witness(G, target) and profile.verdict == NOT_FINITE_TYPE and checks_ok
    details = {**details, "witness_count": len(witnesses)}
    return FiniteTypeVerdict(
        claim=f"{claim}({param}): {description}",
        holds=holds,
        witness=target if found else (witnesses[0] if witnesses else None),
        profile=profile,
        group=G.name,
        c=C.c,
        details=details,
    )
