"""Table-backed finite groups, conjugation-stable subsets and subgroups.

Elements are dense indices ``0..order-1``. ``mul[a, b]`` is the index of the
product ``a*b`` (row = left factor). All objects here are immutable after
construction.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import EmptySeeds, MalformedSpec, NotAGroup, NotNormal

EXHAUSTIVE_ASSOCIATIVITY_ORDER = 200
_ASSOCIATIVITY_SAMPLES = 200_000


def _index_dtype(order: int):
    return np.uint16 if order <= np.iinfo(np.uint16).max else np.int64


@dataclass(frozen=True, eq=False)
class GroupTable:
    order: int
    labels: tuple[str, ...]
    mul: np.ndarray
    inv: np.ndarray
    id: int
    family: str | None = None
    param: int | None = None
    named: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        self.mul.flags.writeable = False
        self.inv.flags.writeable = False

    def __repr__(self) -> str:
        name = f"{self.family}:{self.param}" if self.family else "table"
        return f"GroupTable({name}, order={self.order})"

    @property
    def name(self) -> str:
        return f"{self.family}:{self.param}" if self.family else f"group of order {self.order}"

    @cached_property
    def rows(self) -> list[list[int]]:
        """The multiplication table as nested Python lists, for scalar loops."""
        return self.mul.astype(np.int64).tolist()

    @cached_property
    def inv_list(self) -> list[int]:
        return self.inv.astype(np.int64).tolist()

    @cached_property
    def _label_index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def index(self, label: str) -> int:
        """Element index for a display label or a distinguished-generator name."""
        if label in self._label_index:
            return self._label_index[label]
        if label in self.named:
            return self.named[label]
        if self.family in ("symmetric", "alternating") and label.startswith("("):
            from .families import perm_label_from_cycles

            try:
                converted = perm_label_from_cycles(self.param, label)
            except ValueError as exc:
                raise KeyError(label) from exc
            if converted in self._label_index:
                return self._label_index[converted]
        raise KeyError(label)

    def label(self, a: int) -> str:
        return self.labels[a]

    def conj(self, g: int, a: int) -> int:
        """g * a * g^-1"""
        rows = self.rows
        return rows[rows[g][a]][self.inv_list[g]]

    def power(self, x: int, n: int) -> int:
        """x**n by square-and-multiply; negative n uses the inverse."""
        rows = self.rows
        if n < 0:
            x, n = self.inv_list[x], -n
        result = self.id
        while n:
            if n & 1:
                result = rows[result][x]
            x = rows[x][x]
            n >>= 1
        return result

    @cached_property
    def element_orders(self) -> np.ndarray:
        orders = np.zeros(self.order, dtype=np.int64)
        everything = np.arange(self.order)
        current = everything.copy()
        t = 1
        while (orders == 0).any():
            done = (current == self.id) & (orders == 0)
            orders[done] = t
            current = self.mul[current, everything]
            t += 1
        return orders

    @cached_property
    def exponent(self) -> int:
        """Least common multiple of the element orders."""
        return math.lcm(*(int(o) for o in np.unique(self.element_orders)))

    @cached_property
    def is_abelian(self) -> bool:
        return bool((self.mul == self.mul.T).all())

    def to_json_dict(self) -> dict:
        return {
            "order": self.order,
            "labels": list(self.labels),
            "mul": self.mul.astype(np.int64).tolist(),
        }


@dataclass(frozen=True, eq=False)
class Subgroup:
    group: GroupTable
    members: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, a: int) -> bool:
        return a in self._member_set

    def __len__(self) -> int:
        return len(self.members)

    @cached_property
    def _member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    def labels(self) -> list[str]:
        return [self.group.labels[a] for a in self.members]


@dataclass(frozen=True, eq=False)
class ConjSubset:
    """A nonempty subset C with gCg^-1 = C, stored as a sorted index tuple.

    Colorings refer to members by *position* in ``members``.
    """

    group: GroupTable
    members: tuple[int, ...]

    @property
    def c(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, a: int) -> bool:
        return a in self.position

    @cached_property
    def position(self) -> dict[int, int]:
        return {a: i for i, a in enumerate(self.members)}

    @cached_property
    def commutes(self) -> bool:
        m = np.asarray(self.members)
        block = self.group.mul[np.ix_(m, m)]
        return bool((block == block.T).all())

    @cached_property
    def conj_table(self) -> np.ndarray:
        """``conj_table[i, j]`` is the position of C[i] * C[j] * C[i]^-1."""
        g = self.group
        m = np.asarray(self.members)
        prod = g.mul[np.ix_(m, m)]
        conj = g.mul[prod, g.inv[m][:, None]]
        lookup = np.full(g.order, -1, dtype=np.int64)
        lookup[m] = np.arange(len(m))
        out = lookup[conj]
        if (out < 0).any():
            raise NotAGroup("subset is not stable under conjugation")
        return out

    @cached_property
    def inv_conj_table(self) -> np.ndarray:
        """``inv_conj_table[j, i]`` is the position of C[j]^-1 * C[i] * C[j]."""
        g = self.group
        m = np.asarray(self.members)
        inv_m = g.inv[m]
        prod = g.mul[inv_m[:, None], m[None, :]]
        conj = g.mul[prod, m[:, None]]
        lookup = np.full(g.order, -1, dtype=np.int64)
        lookup[m] = np.arange(len(m))
        return lookup[conj]

    def labels(self) -> list[str]:
        return [self.group.labels[a] for a in self.members]

    def is_stable(self) -> bool:
        """Exhaustive check of g*a*g^-1 in C over all g in G, a in C."""
        g = self.group
        m = np.asarray(self.members)
        everything = np.arange(g.order)
        conj = g.mul[g.mul[everything[:, None], m[None, :]], g.inv[everything][:, None]]
        return bool(np.isin(conj, m).all())


def group_from_table(
    mul: Sequence[Sequence[int]],
    labels: Sequence[str] | None = None,
    order: int | None = None,
    *,
    family: str | None = None,
    param: int | None = None,
    named: Mapping[str, int] | None = None,
    validate: bool = True,
) -> GroupTable:
    """Build a validated GroupTable, deriving the identity and inverses.

    Raises MalformedSpec on inconsistent dimensions or entries and NotAGroup
    (with a witness) when a group axiom fails. Associativity is checked
    exhaustively up to order 200 and on a fixed random sample above that.
    """
    try:
        table = np.asarray(mul, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise MalformedSpec(f"multiplication table is not a rectangular integer array: {exc}") from exc
    if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
        raise MalformedSpec(f"multiplication table must be a nonempty square matrix, got shape {table.shape}")
    n = table.shape[0]
    if order is not None and order != n:
        raise MalformedSpec(f"order {order} does not match table size {n}")
    if labels is None:
        labels = [str(i) for i in range(n)]
    labels = tuple(str(x) for x in labels)
    if len(labels) != n:
        raise MalformedSpec(f"expected {n} labels, got {len(labels)}")
    if len(set(labels)) != n:
        raise MalformedSpec("labels must be distinct")
    if table.min() < 0 or table.max() >= n:
        raise MalformedSpec("table entries must be element indices in 0..order-1")

    everything = np.arange(n)
    if validate:
        for r in range(n):
            if len(np.unique(table[r])) != n:
                raise NotAGroup(f"row {r} is not a permutation", witness=(r,))
            if len(np.unique(table[:, r])) != n:
                raise NotAGroup(f"column {r} is not a permutation", witness=(r,))
    identity_rows = np.nonzero((table == everything[None, :]).all(axis=1))[0]
    ident = None
    for e in identity_rows:
        if (table[:, e] == everything).all():
            ident = int(e)
            break
    if ident is None:
        raise NotAGroup("no two-sided identity element")
    inv = np.argmax(table == ident, axis=1)
    if validate:
        if not ((table[everything, inv] == ident).all() and (table[inv, everything] == ident).all()):
            bad = int(np.nonzero(table[everything, inv] != ident)[0][0])
            raise NotAGroup(f"element {bad} has no two-sided inverse", witness=(bad,))
        _check_associative(table)

    dtype = _index_dtype(n)
    return GroupTable(
        order=n,
        labels=labels,
        mul=table.astype(dtype),
        inv=inv.astype(dtype),
        id=ident,
        family=family,
        param=param,
        named=dict(named or {}),
    )


def _check_associative(table: np.ndarray) -> None:
    n = table.shape[0]
    if n <= EXHAUSTIVE_ASSOCIATIVITY_ORDER:
        for a in range(n):
            left = table[table[a]]  # (ab)c, indexed by (b, c)
            right = table[a][table]  # a(bc)
            bad = np.argwhere(left != right)
            if len(bad):
                b, c = (int(x) for x in bad[0])
                raise NotAGroup(f"associativity fails for ({a}, {b}, {c})", witness=(a, b, c))
        return
    rng = np.random.default_rng(0)
    a, b, c = rng.integers(0, n, size=(3, _ASSOCIATIVITY_SAMPLES))
    left = table[table[a, b], c]
    right = table[a, table[b, c]]
    bad = np.nonzero(left != right)[0]
    if len(bad):
        i = bad[0]
        raise NotAGroup(
            f"associativity fails for ({a[i]}, {b[i]}, {c[i]})",
            witness=(int(a[i]), int(b[i]), int(c[i])),
        )


def group_from_json(data: Mapping) -> GroupTable:
    """Load the ``{"order", "labels", "mul"}`` JSON object."""
    if not isinstance(data, Mapping) or "mul" not in data:
        raise MalformedSpec('group JSON must be an object with a "mul" table')
    return group_from_table(data["mul"], labels=data.get("labels"), order=data.get("order"))


def load_group(path: str | Path) -> GroupTable:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedSpec(f"cannot read group file {path}: {exc}") from exc
    return group_from_json(data)


def dump_group(G: GroupTable, path: str | Path) -> None:
    Path(path).write_text(json.dumps(G.to_json_dict()))


def _check_indices(G: GroupTable, elems: Iterable[int]) -> list[int]:
    out = []
    for a in elems:
        a = int(a)
        if not 0 <= a < G.order:
            raise MalformedSpec(f"element index {a} out of range for order {G.order}")
        out.append(a)
    return out


def conj_closure(G: GroupTable, seeds: Iterable[int]) -> ConjSubset:
    """Smallest conjugation-stable subset containing ``seeds``."""
    seeds = _check_indices(G, seeds)
    if not seeds:
        raise EmptySeeds("conj_closure needs at least one seed")
    everything = np.arange(G.order)
    s = np.asarray(sorted(set(seeds)))
    orbit = G.mul[G.mul[everything[:, None], s[None, :]], G.inv[everything][:, None]]
    members = tuple(int(x) for x in np.unique(orbit))
    return ConjSubset(G, members)


def generated_subgroup(G: GroupTable, elems: Iterable[int]) -> Subgroup:
    """Closure of ``elems`` together with the identity under products."""
    gens = sorted(set(_check_indices(G, elems)) - {G.id})
    rows = G.rows
    seen = {G.id}
    frontier = [G.id]
    while frontier:
        nxt = []
        for x in frontier:
            row = rows[x]
            for g in gens:
                y = row[g]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(G, tuple(sorted(seen)))


def _commutators(G: GroupTable, members: Sequence[int]) -> np.ndarray:
    m = np.asarray(members)
    ab = G.mul[m[:, None], m[None, :]]
    ainv_binv = G.mul[G.inv[m][:, None], G.inv[m][None, :]]
    return np.unique(G.mul[ab, ainv_binv])


def commutator_subgroup(G: GroupTable, within: Subgroup | None = None) -> Subgroup:
    """Subgroup generated by all a*b*a^-1*b^-1 (a, b in ``within``, default all of G)."""
    members = within.members if within is not None else range(G.order)
    return generated_subgroup(G, (int(x) for x in _commutators(G, list(members))))


def is_normal(G: GroupTable, N: Subgroup, within: Subgroup | None = None) -> bool:
    outer = np.asarray(within.members if within is not None else range(G.order))
    n = np.asarray(N.members)
    conj = G.mul[G.mul[outer[:, None], n[None, :]], G.inv[outer][:, None]]
    return bool(np.isin(conj, n).all())


def quotient_is_cyclic(G: GroupTable, N: Subgroup, within: Subgroup | None = None) -> bool:
    """True iff H/N is cyclic, where H is ``within`` (default G).

    Raises NotNormal if N is not a normal subgroup of H.
    """
    if not is_normal(G, N, within):
        raise NotNormal("subgroup is not normal")
    outer = within.members if within is not None else tuple(range(G.order))
    index = len(outer) // N.order
    if index == 1:
        return True
    rows = G.rows
    in_n = N._member_set
    for h in outer:
        # order of hN in the quotient
        x, t = h, 1
        while x not in in_n:
            x = rows[x][h]
            t += 1
        if t == index:
            return True
    return False


def abelianization_is_cyclic(G: GroupTable, H: Subgroup | None = None) -> bool:
    """Is H/H' cyclic (H defaults to G)?"""
    return quotient_is_cyclic(G, commutator_subgroup(G, H), H)
