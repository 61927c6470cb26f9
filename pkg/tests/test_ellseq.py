"""Elliptic sequences and the derived enumerations."""

from __future__ import annotations

from fractions import Fraction

import pytest

from resgraph.core import canonical_cycle, chi, intersection_form
from resgraph.ellseq import (antinef_in_class_below_ZK, elliptic_sequence,
                             minimally_elliptic_cycle,
                             numerically_gorenstein_subsupports, partial_sums,
                             pg_table)
from resgraph.errors import ResourceCapExceeded, UserError
from resgraph.laufer import fundamental_cycle


def test_sequence_app(g_app):
    seq = elliptic_sequence(g_app)
    assert seq.m == 1 and seq.length == 2
    assert seq.pre_term.is_zero()
    assert seq.supports[0] == frozenset(g_app.vertices)
    assert seq.supports[1] == frozenset(g_app.vertices) - {"a9"}
    assert seq.fundamental_cycles[0] == fundamental_cycle(g_app)
    seq.validate()


def test_sequence_new(g_new):
    seq = elliptic_sequence(g_new)
    assert seq.length == 2
    assert not seq.pre_term.is_zero()
    assert not seq.pre_term.is_integral()
    assert chi(seq.pre_term) == 0
    total = seq.pre_term
    for z in seq.fundamental_cycles:
        total = total + z
    assert total == canonical_cycle(g_new)


def test_support_and_cycle_conventions(g_app):
    seq = elliptic_sequence(g_app)
    assert seq.support_at(-1) == frozenset(g_app.vertices)
    assert seq.support_at(seq.m + 1) == frozenset()
    assert seq.cycle_at(-1) == seq.pre_term
    assert seq.cycle_at(seq.m) == seq.fundamental_cycles[-1]


def test_minimally_elliptic_cycle(g_app):
    c = minimally_elliptic_cycle(g_app)
    assert chi(c) == 0 and not c.is_zero()
    assert intersection_form(c, c) == -1


def test_partial_sums(g_app):
    seq = elliptic_sequence(g_app)
    zk = canonical_cycle(g_app)
    for t in range(-1, seq.m + 1):
        ct, cpt = partial_sums(seq, t)
        assert chi(ct) == 0 and chi(cpt) == 0
        assert ct + cpt == zk + seq.cycle_at(t)
    assert partial_sums(seq, -1)[0] == seq.pre_term
    assert partial_sums(seq, seq.m)[0] == zk
    with pytest.raises(UserError):
        partial_sums(seq, seq.m + 1)


def test_antinef_below_canonical_app(g_app):
    found = antinef_in_class_below_ZK(g_app)
    assert found == sorted(
        [g_app.zero_cycle(), fundamental_cycle(g_app), canonical_cycle(g_app)],
        key=lambda c: c.coeffs)


def test_subsupports_match_sequence(g_app, g_new):
    for g in (g_app, g_new):
        seq = elliptic_sequence(g)
        assert set(numerically_gorenstein_subsupports(g)) == set(seq.supports)


def test_subsupports_vertex_cap(g_left):
    with pytest.raises(ResourceCapExceeded):
        numerically_gorenstein_subsupports(g_left)


def test_pg_table(g_app):
    seq = elliptic_sequence(g_app)
    rows = pg_table(seq, alpha=0)
    assert [r["pg_Xj"] for r in rows] == [2, 1, 0]
    assert rows[0]["h1_O_Cprime_j"] == 2 and rows[0]["h1_O_C_j"] == 1
    rows1 = pg_table(seq, alpha=1)
    assert [r["pg_Xj"] for r in rows1] == [1, 1, 0]
    assert "h1_O_C_j" not in rows1[0]
    with pytest.raises(UserError):
        pg_table(seq, alpha=2)


def test_sequence_requires_elliptic(g_pole, single_vertex):
    with pytest.raises(UserError):
        elliptic_sequence(g_pole)
    with pytest.raises(UserError):
        elliptic_sequence(single_vertex)
