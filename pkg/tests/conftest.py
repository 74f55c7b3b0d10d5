import pytest

from knothom.families import make_family, named_subset

# The (G, C) pairs exercised across the suite, keyed "family:param/subset".
BUILTIN_PAIRS = [
    ("dihedral", 3, "reflections"),
    ("dihedral", 5, "reflections"),
    ("dihedral", 7, "reflections"),
    ("dihedral", 9, "reflections"),
    ("symmetric", 3, "transpositions"),
    ("symmetric", 4, "transpositions"),
    ("alternating", 5, "double_transpositions"),
    ("sl2_zm", 2, "ab_class"),
    ("sl2_zm", 3, "ab_class"),
    ("sl2_zm", 5, "ab_class"),
]

_cache = {}


def pair(family, param, subset):
    key = (family, param, subset)
    if key not in _cache:
        G = make_family(family, param)
        _cache[key] = (G, named_subset(G, subset))
    return _cache[key]


def pair_id(p):
    return f"{p[0]}:{p[1]}/{p[2]}"


@pytest.fixture
def d3():
    return pair("dihedral", 3, "reflections")


# Acceptance results are collected here and summarized at the end of the run.
ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS, key=lambda k: int(k.split()[0])):
        ok, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {detail}")
