"""Command-line front end.

    knothom count --group dihedral:3 --subset reflections --braid "1 1 1" --strands 2
    knothom profile --group dihedral:3 --subset reflections --pmax 8
    knothom star-search --group sl2_zm:5 --subset ab_class --pmax 1
    knothom ftsum --group dihedral:3 --subset reflections --braid "1 1 1" --positions "0 1"
    knothom verify --claim lemma3 --param 4
    knothom group-info --group alternating:5 --subset double_transpositions
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import TextIO

from .braids import BraidWord
from .config import Caps
from .errors import ConfigError, KnotHomError
from .families import FAMILIES, SUBSET_NAMES, make_family, named_subset, parse_group_name
from .groups import (
    ConjSubset,
    GroupTable,
    abelianization_is_cyclic,
    commutator_subgroup,
    conj_closure,
    load_group,
)
from .invariant import count_by_trace, count_by_wirtinger
from .report import FORMATS, emit_report
from .vassiliev import (
    CLAIMS,
    ConstantInvariant,
    CountingInvariant,
    default_p_max,
    finite_type_sum,
    star_search,
    torus_profile,
    verify_claim,
)

COMMANDS = ("count", "profile", "star-search", "ftsum", "verify", "group-info")


@dataclass
class RunConfig:
    command: str
    group_spec: str | None = None
    subset_spec: str | None = None
    braid_spec: str | None = None
    strands: int | None = None
    p_max: int | None = None
    x_positions: str | None = None
    method: str = "trace"
    invariant: str = "count"
    claim: str | None = None
    param: int | None = None
    fmt: str = "json"
    out: str | None = None
    threads: int = 0
    caps: Caps = Caps()


def resolve_group(spec: str | None, caps: Caps) -> GroupTable:
    if not spec:
        raise ConfigError("--group is required for this command")
    if Path(spec).is_file():
        return load_group(spec)
    family, param = parse_group_name(spec)
    if family not in FAMILIES:
        raise ConfigError(f"{spec!r} is neither a group file nor one of {', '.join(FAMILIES)}")
    return make_family(family, param, caps.order_cap)


def resolve_subset(G: GroupTable, spec: str | None) -> ConjSubset:
    """A named subset, or the conjugation closure of whitespace-separated labels."""
    if not spec:
        raise ConfigError("--subset is required for this command")
    spec = spec.strip()
    if spec in SUBSET_NAMES:
        return named_subset(G, spec)
    try:
        return conj_closure(G, [G.index(spec)])
    except KeyError:
        pass
    seeds = []
    for label in spec.split():
        try:
            seeds.append(G.index(label))
        except KeyError:
            raise ConfigError(f"unknown element label {label!r} in {G.name}") from None
    return conj_closure(G, seeds)


def resolve_braid(cfg: RunConfig) -> BraidWord:
    if cfg.braid_spec is None:
        raise ConfigError("--braid is required for this command")
    return BraidWord.parse(cfg.braid_spec, cfg.strands)


def _workers(threads: int) -> int:
    return threads if threads > 0 else (os.cpu_count() or 1)


def _group_info(G: GroupTable, subset_spec: str | None) -> dict:
    info = {
        "group": G.name,
        "order": G.order,
        "exponent": G.exponent,
        "abelian": G.is_abelian,
        "identity": G.labels[G.id],
        "named": {k: G.labels[v] for k, v in sorted(G.named.items())},
        "commutator_order": commutator_subgroup(G).order,
        "abelianization_cyclic": abelianization_is_cyclic(G),
    }
    if subset_spec:
        C = resolve_subset(G, subset_spec)
        info["subset"] = {"c": C.c, "commutes": C.commutes, "members": C.labels()}
    return info


def execute(cfg: RunConfig):
    """Run one command and return its report object."""
    caps = cfg.caps
    if cfg.command == "verify":
        if cfg.claim is None or cfg.param is None:
            raise ConfigError("verify needs --claim and --param")
        return verify_claim(cfg.claim, cfg.param, caps)
    G = resolve_group(cfg.group_spec, caps)
    if cfg.command == "group-info":
        return _group_info(G, cfg.subset_spec)
    C = resolve_subset(G, cfg.subset_spec)
    if cfg.command == "count":
        beta = resolve_braid(cfg)
        if cfg.method == "wirtinger":
            return count_by_wirtinger(beta, G, C, caps)
        return count_by_trace(beta, G, C, caps, workers=_workers(cfg.threads))
    if cfg.command == "profile":
        return torus_profile(G, C, cfg.p_max, caps)
    if cfg.command == "star-search":
        p_max = cfg.p_max if cfg.p_max is not None else default_p_max(G, caps)
        return star_search(G, C, p_max)
    if cfg.command == "ftsum":
        beta = resolve_braid(cfg)
        if cfg.x_positions is None:
            raise ConfigError("ftsum needs --positions")
        try:
            positions = [int(x) for x in cfg.x_positions.replace(",", " ").split()]
        except ValueError:
            raise ConfigError(f"--positions must be integers: {cfg.x_positions!r}") from None
        v = ConstantInvariant() if cfg.invariant == "constant" else CountingInvariant(G, C, cfg.method, caps)
        value = finite_type_sum(v, beta, positions, caps)
        return {"braid": str(beta), "strands": beta.strands, "positions": positions, "invariant": cfg.invariant, "sum": value}
    raise ConfigError(f"unknown command {cfg.command!r}")


def run(cfg: RunConfig, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    """Execute ``cfg``; write the report, or a JSON error object on stderr. Returns the exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        if cfg.fmt not in FORMATS:
            raise ConfigError(f"unknown format {cfg.fmt!r}")
        text = emit_report(execute(cfg), cfg.fmt)
        if cfg.out:
            try:
                Path(cfg.out).write_text(text)
            except OSError as exc:
                raise ConfigError(f"cannot write {cfg.out}: {exc}") from exc
        else:
            stdout.write(text)
    except KnotHomError as exc:
        stderr.write(json.dumps({"error": exc.to_dict()}) + "\n")
        return exc.exit_status
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="knothom", description="Count knot-group homomorphisms into finite groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, group=True, subset=True):
        if group:
            p.add_argument("--group", help="family:param (e.g. dihedral:7) or a group JSON file")
        if subset:
            p.add_argument("--subset", help=f"one of {', '.join(SUBSET_NAMES)}, or seed labels")
        p.add_argument("--format", dest="fmt", default="json", choices=FORMATS)
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--threads", type=int, default=0, help="worker threads (0 = all cores)")
        p.add_argument("--state-cap", type=int)
        p.add_argument("--order-cap", type=int)
        p.add_argument("--exponent-cap", type=int)
        p.add_argument("--max-crossings", type=int)
        p.add_argument("--cross-check-cap", type=int)

    def braid(p):
        p.add_argument("--braid", help='signed generators, e.g. "1 1 -2"')
        p.add_argument("--strands", type=int)

    p = sub.add_parser("count", help="compute [K,G,C] for a braid closure")
    common(p)
    braid(p)
    p.add_argument("--method", default="trace", choices=("trace", "wirtinger"))

    p = sub.add_parser("profile", help="p -> [K_p,G,C] for (2,2p+1) torus knots")
    common(p)
    p.add_argument("--pmax", dest="p_max", type=int)

    p = sub.add_parser("star-search", help="list a != b in C with (ab)^p a = b(ab)^p")
    common(p)
    p.add_argument("--pmax", dest="p_max", type=int)

    p = sub.add_parser("ftsum", help="alternating crossing-switch sum")
    common(p)
    braid(p)
    p.add_argument("--positions", dest="x_positions", help="letter positions, e.g. \"0 1\"")
    p.add_argument("--invariant", default="count", choices=("count", "constant"))
    p.add_argument("--method", default="trace", choices=("trace", "wirtinger"))

    p = sub.add_parser("verify", help="check one of the built-in claims")
    common(p, group=False, subset=False)
    p.add_argument("--claim", choices=CLAIMS, required=True)
    p.add_argument("--param", type=int, required=True)

    p = sub.add_parser("group-info", help="summarize a group and optionally a subset")
    common(p)
    return parser


def config_from_args(argv: list[str] | None = None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    caps = Caps.from_env(
        state_cap=ns.state_cap,
        order_cap=ns.order_cap,
        exponent_cap=ns.exponent_cap,
        max_crossings=ns.max_crossings,
        cross_check_cap=ns.cross_check_cap,
    )
    fields = vars(ns)
    return RunConfig(
        command=ns.command,
        group_spec=fields.get("group"),
        subset_spec=fields.get("subset"),
        braid_spec=fields.get("braid"),
        strands=fields.get("strands"),
        p_max=fields.get("p_max"),
        x_positions=fields.get("x_positions"),
        method=fields.get("method", "trace"),
        invariant=fields.get("invariant", "count"),
        claim=fields.get("claim"),
        param=fields.get("param"),
        fmt=ns.fmt,
        out=ns.out,
        threads=ns.threads,
        caps=caps,
    )


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = config_from_args(argv)
    except KnotHomError as exc:
        sys.stderr.write(json.dumps({"error": exc.to_dict()}) + "\n")
        return exc.exit_status
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
