"""Deterministic serialization of reports as JSON, CSV or plain text."""

from __future__ import annotations

import csv
import io
import json
from typing import Any

from .errors import UnsupportedFormat
from .invariant import CountReport
from .vassiliev import FiniteTypeVerdict, StarWitness, TorusProfile

FORMATS = ("json", "csv", "text")


def to_jsonable(result: Any) -> Any:
    if hasattr(result, "to_dict"):
        return result.to_dict()
    if isinstance(result, (list, tuple)):
        return [to_jsonable(x) for x in result]
    return result


def _csv(rows: list[list[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def _csv_rows(result: Any) -> list[list[Any]]:
    if isinstance(result, CountReport):
        d = result.to_dict()
        return [list(d), list(d.values())]
    if isinstance(result, TorusProfile):
        start = result.p_range[0]
        return [["p", "count"]] + [[start + i, n] for i, n in enumerate(result.counts)]
    if isinstance(result, list) and all(isinstance(w, StarWitness) for w in result):
        return [["a", "b", "p"]] + [[w.a_label, w.b_label, w.p] for w in result]
    if isinstance(result, FiniteTypeVerdict):
        w = result.witness
        return [
            ["claim", "holds", "a", "b", "p"],
            [result.claim, result.holds, w.a_label if w else "", w.b_label if w else "", w.p if w else ""],
        ]
    if isinstance(result, dict):
        return [["key", "value"]] + [[k, json.dumps(v) if isinstance(v, (dict, list)) else v] for k, v in result.items()]
    raise UnsupportedFormat(f"no CSV layout for {type(result).__name__}")


def _text(result: Any) -> str:
    if isinstance(result, CountReport):
        return (
            f"count = {result.count}  (method {result.method}, {result.strands} strands, "
            f"c = {result.c}, bound c^k = {result.bound})\n"
        )
    if isinstance(result, TorusProfile):
        scope = "all p" if result.exhaustive else f"p in {result.p_range[0]}..{result.p_range[1]} only"
        lines = [
            f"p = {result.p_range[0]}..{result.p_range[1]}",
            "counts: " + " ".join(str(n) for n in result.counts),
            f"period: {result.period if result.period is not None else 'none detected'}",
            f"max {result.max_count}, bound c^2 = {result.bound}, group exponent {result.exponent}",
            f"verdict: {result.verdict} ({scope})",
        ]
        return "\n".join(lines) + "\n"
    if isinstance(result, list) and all(isinstance(w, StarWitness) for w in result):
        if not result:
            return "no witnesses\n"
        return "".join(f"a={w.a_label} b={w.b_label} p={w.p}\n" for w in result)
    if isinstance(result, FiniteTypeVerdict):
        w = result.witness
        lines = [
            result.claim,
            f"holds: {result.holds}",
            f"group {result.group}, c = {result.c}",
            f"witness: a={w.a_label} b={w.b_label} p={w.p}" if w else "witness: none",
            "profile: " + " ".join(str(n) for n in result.profile.counts[:30])
            + (" ..." if len(result.profile.counts) > 30 else ""),
            f"verdict: {result.profile.verdict}",
        ]
        return "\n".join(lines) + "\n"
    if isinstance(result, dict):
        return "".join(f"{k}: {v}\n" for k, v in result.items())
    raise UnsupportedFormat(f"no text layout for {type(result).__name__}")


def emit_report(result: Any, fmt: str = "json") -> str:
    """Serialize a module report; identical input gives identical text."""
    if fmt == "json":
        return json.dumps(to_jsonable(result), indent=2) + "\n"
    if fmt == "csv":
        return _csv(_csv_rows(result))
    if fmt == "text":
        return _text(result)
    raise UnsupportedFormat(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")
