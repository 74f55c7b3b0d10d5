"""Braid words, torus-knot braids, Markov moves and crossing switches.

Words are kept literal: no free reduction and no braid-relation rewriting.
Each letter is one crossing of the closure diagram, so crossing positions
are letter indices.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import IndexOutOfRange, MalformedSpec, NegativeParameter, StrandMismatch

Letter = tuple[int, int]  # (generator 1..k-1, sign +1/-1)


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise MalformedSpec(f"a braid needs at least one strand, got {self.strands}")
        letters = tuple((int(g), int(s)) for g, s in self.letters)
        for g, s in letters:
            if not 1 <= g <= self.strands - 1:
                raise MalformedSpec(f"generator {g} out of range for {self.strands} strands")
            if s not in (1, -1):
                raise MalformedSpec(f"letter sign must be +1 or -1, got {s}")
        object.__setattr__(self, "letters", letters)

    def __len__(self) -> int:
        return len(self.letters)

    @classmethod
    def from_ints(cls, word: Iterable[int], strands: int | None = None) -> "BraidWord":
        """``[1, 1, -2]`` is sigma_1 sigma_1 sigma_2^-1; strands default to 1 + max |letter|."""
        word = [int(x) for x in word]
        if any(x == 0 for x in word):
            raise MalformedSpec("0 is not a braid generator")
        if strands is None:
            strands = 1 + max((abs(x) for x in word), default=0)
        return cls(strands, tuple((abs(x), 1 if x > 0 else -1) for x in word))

    @classmethod
    def parse(cls, text: str, strands: int | None = None) -> "BraidWord":
        try:
            word = [int(tok) for tok in text.split()]
        except ValueError:
            raise MalformedSpec(f"braid text must be whitespace-separated signed integers: {text!r}") from None
        return cls.from_ints(word, strands)

    def to_ints(self) -> list[int]:
        return [g * s for g, s in self.letters]

    def __str__(self) -> str:
        return " ".join(str(x) for x in self.to_ints())

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple((g, -s) for g, s in reversed(self.letters)))

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.strands != other.strands:
            raise StrandMismatch(f"cannot concatenate braids on {self.strands} and {other.strands} strands")
        return BraidWord(self.strands, self.letters + other.letters)


@dataclass(frozen=True)
class CrossingSelection:
    """A set X of letter positions and a sign for each (1 keeps, -1 switches)."""

    positions: tuple[int, ...]
    eps: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        positions = tuple(int(p) for p in self.positions)
        if len(set(positions)) != len(positions):
            raise MalformedSpec("crossing positions must be distinct")
        eps = {int(k): int(v) for k, v in self.eps.items()}
        for p in positions:
            eps.setdefault(p, 1)
        if set(eps) != set(positions):
            raise MalformedSpec("sign assignment must be defined exactly on the selected positions")
        if any(v not in (1, -1) for v in eps.values()):
            raise MalformedSpec("crossing signs must be +1 or -1")
        object.__setattr__(self, "positions", positions)
        object.__setattr__(self, "eps", eps)


def torus_braid(p: int) -> BraidWord:
    """sigma_1^(2p+1) on two strands; its closure is the (2, 2p+1) torus knot."""
    if p < 0:
        raise NegativeParameter(f"torus parameter must be >= 0, got {p}")
    return BraidWord(2, ((1, 1),) * (2 * p + 1))


def closure_permutation(beta: BraidWord) -> tuple[int, ...]:
    """perm[j] is the bottom position reached by the strand starting at top position j (0-based)."""
    at = list(range(beta.strands))  # at[pos] = strand currently at pos
    for g, _ in beta.letters:
        at[g - 1], at[g] = at[g], at[g - 1]
    perm = [0] * beta.strands
    for pos, strand in enumerate(at):
        perm[strand] = pos
    return tuple(perm)


def cycle_type(perm: Sequence[int]) -> list[int]:
    seen = [False] * len(perm)
    lengths = []
    for i in range(len(perm)):
        n = 0
        while not seen[i]:
            seen[i] = True
            i = perm[i]
            n += 1
        if n:
            lengths.append(n)
    return sorted(lengths)


def is_knot(beta: BraidWord) -> bool:
    """Does the closure have exactly one component?"""
    return cycle_type(closure_permutation(beta)) == [beta.strands]


def markov_conjugate(beta: BraidWord, gamma: BraidWord) -> BraidWord:
    """The literal word gamma . beta . gamma^-1."""
    if beta.strands != gamma.strands:
        raise StrandMismatch(f"braid has {beta.strands} strands but conjugator has {gamma.strands}")
    return gamma * beta * gamma.inverse()


def markov_stabilize(beta: BraidWord, sign: int = 1) -> BraidWord:
    """Append sigma_k^sign, adding a strand."""
    if sign not in (1, -1):
        raise MalformedSpec(f"stabilization sign must be +1 or -1, got {sign}")
    k = beta.strands
    return BraidWord(k + 1, beta.letters + ((k, sign),))


def switch_crossings(beta: BraidWord, sel: CrossingSelection) -> BraidWord:
    """Flip the sign of each selected letter whose assigned sign is -1."""
    n = len(beta)
    for p in sel.positions:
        if not 0 <= p < n:
            raise IndexOutOfRange(f"crossing position {p} outside a word of length {n}")
    letters = list(beta.letters)
    for p in sel.positions:
        if sel.eps[p] == -1:
            g, s = letters[p]
            letters[p] = (g, -s)
    return BraidWord(beta.strands, tuple(letters))


def random_braid(rng: random.Random, strands: int, length: int) -> BraidWord:
    if strands == 1:
        return BraidWord(1)
    letters = tuple((rng.randint(1, strands - 1), rng.choice((1, -1))) for _ in range(length))
    return BraidWord(strands, letters)


def random_knot_braid(rng: random.Random, strands: int, max_length: int) -> BraidWord:
    """Rejection-sample a braid whose closure is a knot."""
    if strands == 1:
        return BraidWord(1)
    while True:
        beta = random_braid(rng, strands, rng.randint(strands - 1, max(strands - 1, max_length)))
        if is_knot(beta):
            return beta
