"""Versioned JSON graph files and exact-rational serialization.

The on-disk format:

    {
      "format": 1,
      "vertices": [{"id": "a1", "euler": -2}, ...],
      "edges": [["a1", "a2"], ...],
      "cycles": {"name": {"a1": "14/3", ...}}   // optional
    }

Rationals are always strings ("14/3" or "7"), never floats, both on input
and in every report this package emits.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .core import Cycle, ResolutionGraph, build_graph
from .errors import UserError

__all__ = [
    "FORMAT_VERSION",
    "GraphFile",
    "MinimalResolutionWarning",
    "parse_fraction",
    "format_fraction",
    "parse_graph_data",
    "parse_graph",
    "graph_to_data",
    "cycle_to_data",
]

FORMAT_VERSION = 1


class MinimalResolutionWarning(UserWarning):
    """The graph is valid but not a minimal resolution (some euler = -1)."""


@dataclass(frozen=True)
class GraphFile:
    graph: ResolutionGraph
    cycles: dict[str, Cycle] = field(default_factory=dict)


def parse_fraction(value) -> Fraction:
    """Exact rational from "p/q" / integer strings or ints; floats refused."""
    if isinstance(value, bool) or isinstance(value, float):
        raise UserError(f"rationals must be strings or integers, got {value!r}")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise UserError(f"cannot parse rational {value!r}: {exc}")


def format_fraction(value: Fraction) -> str:
    return str(value)


def parse_graph_data(data) -> GraphFile:
    """Build a validated GraphFile from already-decoded JSON data."""
    if not isinstance(data, dict):
        raise UserError("graph file must be a JSON object")
    version = data.get("format")
    if version != FORMAT_VERSION:
        raise UserError(
            f"unsupported graph file format {version!r} "
            f"(expected {FORMAT_VERSION})")
    graph = build_graph(data)
    if not graph.is_minimal():
        warnings.warn(
            "graph has euler numbers above -2; it is not a minimal "
            "resolution, and minimal-resolution-only operations will refuse it",
            MinimalResolutionWarning, stacklevel=2)
    cycles: dict[str, Cycle] = {}
    for name, coeffs in (data.get("cycles") or {}).items():
        if not isinstance(coeffs, dict):
            raise UserError(f"cycle {name!r} must map vertex ids to rationals")
        cycles[str(name)] = graph.cycle(
            {str(v): parse_fraction(c) for v, c in coeffs.items()})
    return GraphFile(graph=graph, cycles=cycles)


def parse_graph(path) -> GraphFile:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise UserError(f"cannot read graph file {p}: {exc}")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UserError(f"graph file {p} is not valid JSON: {exc}")
    return parse_graph_data(data)


def cycle_to_data(cycle: Cycle) -> dict[str, str]:
    return {v: format_fraction(c) for v, c in cycle.items() if c != 0}


def graph_to_data(graph: ResolutionGraph, cycles=None) -> dict:
    data = {
        "format": FORMAT_VERSION,
        "vertices": [{"id": v, "euler": graph.euler[v]}
                     for v in graph.vertices],
        "edges": [sorted(e) for e in sorted(graph.edges, key=sorted)],
    }
    if cycles:
        data["cycles"] = {name: cycle_to_data(c) for name, c in cycles.items()}
    return data
