"""Built-in group families and the named conjugation-stable subsets used with them.

Every family puts the identity at index 0.
"""

from __future__ import annotations

import itertools
import math
import re

import numpy as np

from .config import DEFAULT_CAPS
from .errors import ConfigError, ParamOutOfRange
from .groups import ConjSubset, GroupTable, conj_closure, group_from_table, _index_dtype

FAMILIES = ("dihedral", "symmetric", "alternating", "sl2_zm", "cyclic")

_MIN_PARAM = {"dihedral": 2, "symmetric": 1, "alternating": 1, "sl2_zm": 2, "cyclic": 1}


def family_order(family: str, param: int) -> int:
    if family == "dihedral":
        return 2 * param
    if family == "symmetric":
        return math.factorial(param)
    if family == "alternating":
        return max(1, math.factorial(param) // 2)
    if family == "cyclic":
        return param
    if family == "sl2_zm":
        order = param**3
        for p in _prime_factors(param):
            order = order * (p * p - 1) // (p * p)
        return order
    raise ParamOutOfRange(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")


def _prime_factors(m: int) -> list[int]:
    out, p = [], 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return out


def make_family(family: str, param: int, order_cap: int | None = None) -> GroupTable:
    """Build one of the built-in families as a Cayley table.

    dihedral:n
        Order 2n. Elements ``r^i`` (indices 0..n-1) then ``s r^i`` (n..2n-1);
        distinguished reflections ``r1 = s`` and ``r2 = s r``.
    symmetric:n, alternating:n
        Permutations of 1..n in one-line notation, composed right to left
        (``(p*q)(x) = p(q(x))``).
    sl2_zm:m
        2x2 matrices over Z/m with determinant 1; distinguished ``A = [[1,1],[0,1]]``
        and ``B = [[1,0],[-1,1]]``.
    cyclic:m
        Residues mod m under addition.
    """
    if family not in FAMILIES:
        raise ParamOutOfRange(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    if not isinstance(param, (int, np.integer)) or param < _MIN_PARAM[family]:
        raise ParamOutOfRange(f"{family} needs an integer parameter >= {_MIN_PARAM[family]}, got {param!r}")
    param = int(param)
    cap = DEFAULT_CAPS.order_cap if order_cap is None else order_cap
    order = family_order(family, param)
    if order > cap:
        raise ParamOutOfRange(f"{family}:{param} has order {order}, above the order cap {cap}")
    builder = {
        "dihedral": _dihedral,
        "symmetric": lambda n: _permutation_group(n, even_only=False),
        "alternating": lambda n: _permutation_group(n, even_only=True),
        "sl2_zm": _sl2,
        "cyclic": _cyclic,
    }[family]
    mul, labels, named = builder(param)
    G = group_from_table(mul, labels, family=family, param=param, named=named, validate=False)
    assert G.order == order and G.id == 0
    return G


def parse_group_name(text: str) -> tuple[str, int]:
    """``"dihedral:7"`` -> ``("dihedral", 7)``."""
    family, sep, raw = text.partition(":")
    if not sep:
        raise ConfigError(f"group spec {text!r} is not of the form family:param")
    try:
        return family.strip(), int(raw)
    except ValueError:
        raise ConfigError(f"group parameter in {text!r} is not an integer") from None


def _cyclic(m: int):
    idx = np.arange(m)
    mul = (idx[:, None] + idx[None, :]) % m
    return mul, [str(i) for i in range(m)], {}


def _dihedral(n: int):
    i = np.arange(n)
    rot = (i[:, None] + i[None, :]) % n  # r^i r^j
    rot_ref = n + (i[None, :] - i[:, None]) % n  # r^i . s r^j = s r^(j-i)
    ref_rot = n + rot  # s r^i . r^j = s r^(i+j)
    ref_ref = (i[None, :] - i[:, None]) % n  # s r^i . s r^j = r^(j-i)
    mul = np.block([[rot, rot_ref], [ref_rot, ref_ref]])

    def power(name, k):
        return name if k == 1 else f"{name}^{k}"

    labels = ["e"] + [power("r", k) for k in range(1, n)]
    labels += ["s"] + ["s" + power("r", k) for k in range(1, n)]
    return mul, labels, {"r1": n, "r2": n + 1}


def perm_label(perm) -> str:
    """One-line notation, 1-based; digits run together when n <= 9."""
    vals = [str(int(x) + 1) for x in perm]
    return "".join(vals) if len(vals) <= 9 else ",".join(vals)


def perm_label_from_cycles(n: int, text: str) -> str:
    """Convert cycle notation such as ``"(1 2)(3 4)"`` or ``"(12)(34)"`` to a one-line label."""
    perm = list(range(n))
    if not re.fullmatch(r"(\s*\([^()]*\)\s*)+", text):
        raise ValueError(f"bad cycle notation {text!r}")
    cycles = re.findall(r"\(([^()]*)\)", text)
    for cyc in cycles:
        parts = cyc.replace(",", " ").split()
        if len(parts) == 1 and n <= 9:
            parts = list(parts[0])
        pts = [int(x) - 1 for x in parts]
        if any(not 0 <= x < n for x in pts) or len(set(pts)) != len(pts):
            raise ValueError(f"bad cycle {cyc!r} for degree {n}")
        for a, b in zip(pts, pts[1:] + pts[:1]):
            perm[a] = b
    return perm_label(perm)


def _parity(perm) -> int:
    seen, sign = [False] * len(perm), 0
    for i in range(len(perm)):
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length:
            sign ^= (length - 1) & 1
    return sign


def _permutation_group(n: int, even_only: bool):
    perms = [p for p in itertools.permutations(range(n)) if not even_only or _parity(p) == 0]
    P = np.asarray(perms, dtype=np.int64).reshape(len(perms), n)
    weights = n ** np.arange(n, dtype=np.int64)
    keys = P @ weights
    order = np.argsort(keys)
    sorted_keys = keys[order]
    N = len(perms)
    mul = np.empty((N, N), dtype=_index_dtype(N))
    for a in range(N):
        # (P[a] * P[b])(x) = P[a][P[b][x]]
        prod_keys = P[a][P] @ weights
        mul[a] = order[np.searchsorted(sorted_keys, prod_keys)]
    return mul, [perm_label(p) for p in perms], {}


def _sl2(m: int):
    mats = [
        (a, b, c, d)
        for a, b, c, d in itertools.product(range(m), repeat=4)
        if (a * d - b * c) % m == 1 % m
    ]
    ident = (1 % m, 0, 0, 1 % m)
    mats.remove(ident)
    mats.insert(0, ident)
    M = np.asarray(mats, dtype=np.int64)
    weights = np.array([m**3, m**2, m, 1], dtype=np.int64)
    lookup = np.full(m**4, -1, dtype=np.int64)
    lookup[M @ weights] = np.arange(len(mats))
    a, b, c, d = (M[:, k] for k in range(4))
    # [[a,b],[c,d]] . [[a',b'],[c',d']]
    pa = (a[:, None] * a[None, :] + b[:, None] * c[None, :]) % m
    pb = (a[:, None] * b[None, :] + b[:, None] * d[None, :]) % m
    pc = (c[:, None] * a[None, :] + d[:, None] * c[None, :]) % m
    pd = (c[:, None] * b[None, :] + d[:, None] * d[None, :]) % m
    mul = lookup[pa * m**3 + pb * m**2 + pc * m + pd]
    labels = [f"[[{a},{b}],[{c},{d}]]" for a, b, c, d in mats]
    A = mats.index((1 % m, 1 % m, 0, 1 % m))
    B = mats.index((1 % m, 0, (-1) % m, 1 % m))
    return mul, labels, {"A": A, "B": B}


SUBSET_NAMES = ("reflections", "transpositions", "double_transpositions", "ab_class", "nonidentity", "all")


def named_subset(G: GroupTable, name: str) -> ConjSubset:
    """Resolve a named conjugation-stable subset for a built-in family.

    ``reflections`` (dihedral) is the closure of {r1, r2}; ``transpositions``
    (symmetric) the closure of (12); ``double_transpositions`` (symmetric or
    alternating, n >= 4) the closure of (12)(34); ``ab_class`` (sl2_zm) the
    closure of {A, B}. ``nonidentity`` and ``all`` work for any group.
    """
    if name == "all":
        return ConjSubset(G, tuple(range(G.order)))
    if name == "nonidentity":
        members = tuple(a for a in range(G.order) if a != G.id)
        if not members:
            raise ConfigError("the trivial group has no non-identity elements")
        return ConjSubset(G, members)
    need = {
        "reflections": ("dihedral",),
        "transpositions": ("symmetric",),
        "double_transpositions": ("symmetric", "alternating"),
        "ab_class": ("sl2_zm",),
    }
    if name not in need:
        raise ConfigError(f"unknown subset name {name!r}; expected one of {', '.join(SUBSET_NAMES)}")
    if G.family not in need[name]:
        raise ConfigError(f"subset {name!r} is only defined for {' / '.join(need[name])} groups, not {G.name}")
    if name == "reflections":
        seeds = [G.named["r1"], G.named["r2"]]
    elif name == "ab_class":
        seeds = [G.named["A"], G.named["B"]]
    elif name == "transpositions":
        if G.param < 2:
            raise ConfigError("symmetric:1 has no transpositions")
        seeds = [G.index("(1 2)")]
    else:
        if G.param < 4:
            raise ConfigError(f"{G.name} has no products of two disjoint transpositions")
        seeds = [G.index("(1 2)(3 4)")]
    return conj_closure(G, seeds)
