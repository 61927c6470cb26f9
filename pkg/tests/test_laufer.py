"""Computation sequences, the antinef lift and the classification."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from resgraph.core import (build_graph, canonical_cycle, chi, is_antinef,
                           same_class)
from resgraph.errors import UserError
from resgraph.laufer import (antinef_lift, classify, cube_representative,
                             fundamental_cycle, minimal_class_representative,
                             require_elliptic_minimal)


def test_antinef_lift_properties(g_app):
    l = g_app.cycle({"a1": 1, "a5": 2})
    s, trace = antinef_lift(l)
    assert is_antinef(s)
    assert s >= l
    assert (s - l).is_integral()
    assert trace.start == l and trace.result == s
    assert trace.replay()
    # idempotence: already antinef cycles are fixed
    again, trace2 = antinef_lift(s)
    assert again == s and trace2.steps == ()


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=10, max_size=10))
def test_antinef_lift_random(coeffs):
    g = build_graph({
        "vertices": [("a", -2), ("b", -3), ("c", -2), ("d", -2), ("e", -2),
                     ("f", -2), ("g", -2), ("h", -3), ("i", -2), ("j", -2)],
        "edges": [("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "f"),
                  ("f", "g"), ("g", "h"), ("h", "i"), ("c", "j")],
    })
    l = g.from_vector(coeffs)
    s, trace = antinef_lift(l)
    assert is_antinef(s) and s >= l and (s - l).is_integral()
    assert trace.replay()


def test_tampered_trace_does_not_replay(g_app):
    from resgraph.laufer import ComputationTrace
    l = g_app.cycle({"a1": 1, "a5": 2})
    s, trace = antinef_lift(l)
    assert trace.steps  # the lift is not trivial here
    bad = ComputationTrace(start=trace.start, steps=trace.steps,
                           result=trace.result + g_app.basis_cycle("a1"))
    assert not bad.replay()


def test_fundamental_cycle_app(g_app):
    zmin = fundamental_cycle(g_app)
    assert zmin == g_app.cycle({"a1": 2, "a2": 4, "a3": 6, "a4": 5, "a5": 4,
                                "a6": 3, "a7": 2, "a8": 1, "a9": 1, "u": 3})
    assert is_antinef(zmin) and zmin.is_integral()


def test_classification_kinds(g_app, g_pole, single_vertex, a2_chain):
    assert classify(single_vertex).kind == "rational"
    assert classify(a2_chain).kind == "rational"
    assert classify(g_app).kind == "elliptic"
    cls = classify(g_pole)
    assert cls.kind == "other" and cls.chi_zmin < 0


def test_cube_and_class_representative(g_new):
    zk = canonical_cycle(g_new)
    r = cube_representative(zk)
    assert all(0 <= c < 1 for c in r.coeffs)
    assert same_class(r, zk)
    s = minimal_class_representative(zk)
    assert is_antinef(s) and same_class(s, zk) and s >= r
    # the integral class has representative 0, lifted to 0
    assert minimal_class_representative(g_new.zero_cycle()).is_zero()


def test_chi_zmin_values(g_app, single_vertex):
    assert chi(fundamental_cycle(g_app)) == 0
    assert chi(fundamental_cycle(single_vertex)) == 1


def test_require_elliptic_minimal(g_app, g_pole, single_vertex):
    require_elliptic_minimal(g_app)
    with pytest.raises(UserError):
        require_elliptic_minimal(g_pole)  # not minimal
    with pytest.raises(UserError):
        require_elliptic_minimal(single_vertex)  # rational
