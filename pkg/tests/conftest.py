"""Shared fixtures and graph generators for the test suite."""

from __future__ import annotations

import pytest

from resgraph.core import build_graph
from resgraph.errors import GraphValidationError
from resgraph.fixtures import load_fixture


def _graph_fixture(name):
    @pytest.fixture(scope="session", name=name)
    def fix():
        return load_fixture(name).graph
    return fix


g_app = _graph_fixture("g_app")
g_new = _graph_fixture("g_new")
g_noecc = _graph_fixture("g_noecc")
g_pole = _graph_fixture("g_pole")
g_left = _graph_fixture("g_left")
g_right = _graph_fixture("g_right")


@pytest.fixture(scope="session")
def single_vertex():
    return build_graph({"vertices": [("v", -2)], "edges": []})


@pytest.fixture(scope="session")
def a2_chain():
    return build_graph({"vertices": [("v1", -2), ("v2", -2)],
                        "edges": [("v1", "v2")]})


def random_tree(rng, max_vertices=8, euler_lo=-5, euler_hi=-2):
    """A random negative-definite weighted tree (retries until definite)."""
    while True:
        n = rng.randint(1, max_vertices)
        spec = {
            "vertices": [(f"v{i}", rng.randint(euler_lo, euler_hi))
                         for i in range(n)],
            "edges": [(f"v{i}", f"v{rng.randrange(i)}") for i in range(1, n)],
        }
        try:
            return build_graph(spec)
        except GraphValidationError as exc:
            if exc.diagnostic != "not-negative-definite":
                raise
