"""Bundled example graphs with embedded validation.

Each fixture ships as a JSON graph file under ``resgraph/data`` and carries
a validation routine run on first load; a transcription slip in the data
fails loudly here instead of silently skewing downstream results. The two
large graphs (g_left / g_right) were transcribed from a figure, so their
checks also pin the intended criterion verdicts.
"""

from __future__ import annotations

import json
import warnings
from functools import lru_cache
from importlib import resources

from .errors import InvariantViolation, UserError
from .graphio import GraphFile, MinimalResolutionWarning, parse_graph_data

__all__ = ["FIXTURE_NAMES", "is_fixture_name", "load_fixture"]

FIXTURE_NAMES = ("g_app", "g_new", "g_noecc", "g_pole", "g_left", "g_right")


def is_fixture_name(name: str) -> bool:
    return name.lower() in FIXTURE_NAMES


def _check(condition: bool, name: str, message: str) -> None:
    if not condition:
        raise InvariantViolation(f"fixture {name} failed validation: {message}")


def _validate(name: str, gf: GraphFile) -> None:
    from .core import canonical_cycle, is_numerically_gorenstein
    from .laufer import classify

    graph = gf.graph
    kind = classify(graph).kind
    if name == "g_pole":
        _check(kind == "other", name, "expected classification 'other'")
        _check(not graph.is_minimal(), name, "expected a non-minimal graph")
        return
    _check(kind == "elliptic", name, f"expected elliptic, got {kind}")

    from .ellseq import elliptic_sequence
    seq = elliptic_sequence(graph)
    if name == "g_app":
        _check(is_numerically_gorenstein(graph), name,
               "expected numerically Gorenstein")
        _check(seq.m == 1, name, f"expected m = 1, got {seq.m}")
    elif name == "g_new":
        _check(not is_numerically_gorenstein(graph), name,
               "expected fractional canonical cycle")
        _check(seq.length == 2, name, f"expected length 2, got {seq.length}")
        _check(canonical_cycle(graph) == gf.cycles["canonical"], name,
               "computed canonical cycle differs from the stored one")
        _check(seq.pre_term == gf.cycles["pre_term"], name,
               "computed pre-term differs from the stored one")
    elif name == "g_noecc":
        _check(is_numerically_gorenstein(graph), name,
               "expected numerically Gorenstein")
    elif name in ("g_left", "g_right"):
        from .criteria import supports_wecc
        _check(is_numerically_gorenstein(graph), name,
               "expected numerically Gorenstein")
        _check(seq.m == 3, name, f"expected m = 3, got {seq.m}")
        expected = name == "g_left"
        _check(supports_wecc(graph) == expected, name,
               f"expected criterion verdict {expected}")


@lru_cache(maxsize=None)
def load_fixture(name: str) -> GraphFile:
    """Load (and on first use validate) a bundled fixture by name."""
    key = name.lower()
    if key not in FIXTURE_NAMES:
        raise UserError(
            f"unknown fixture {name!r}; available: {', '.join(FIXTURE_NAMES)}")
    data = json.loads(
        resources.files("resgraph.data").joinpath(f"{key}.json").read_text())
    with warnings.catch_warnings():
        # g_pole is deliberately non-minimal; the loader stays quiet
        warnings.simplefilter("ignore", MinimalResolutionWarning)
        gf = parse_graph_data(data)
    _validate(key, gf)
    return gf
