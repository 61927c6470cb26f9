"""Brill-Noether machinery: depths, dimension tables, the strata solver."""

from __future__ import annotations

from fractions import Fraction

import pytest

from resgraph.core import chi, dual_cycle, intersection_form
from resgraph.ellseq import elliptic_sequence
from resgraph.errors import UserError
from resgraph.laufer import fundamental_cycle
from resgraph.strata import (AnalyticParams, depth, dim_V,
                             fixed_component_candidates, h1_on_image, pg,
                             reduction_index, strata_index_sets, w_strata)


@pytest.fixture(scope="module")
def seq_app(g_app):
    return elliptic_sequence(g_app)


def test_analytic_params_validation(g_app):
    with pytest.raises(UserError):
        AnalyticParams(mode="nonsense")
    with pytest.raises(UserError):
        AnalyticParams(mode="generic",
                       trivializable=(fundamental_cycle(g_app),))
    with pytest.raises(UserError):  # not antinef
        AnalyticParams(mode="custom",
                       trivializable=(g_app.basis_cycle("a1"),))
    with pytest.raises(UserError):  # not integral
        AnalyticParams(mode="custom",
                       trivializable=(g_app.cycle({"a1": Fraction(1, 2)}),))
    AnalyticParams(mode="custom", trivializable=(fundamental_cycle(g_app),))


def test_depth_and_dim(seq_app):
    # B_1 excludes exactly a9
    assert depth(seq_app, "a9") == 0
    assert depth(seq_app, "a1") == 1
    with pytest.raises(UserError):
        depth(seq_app, "missing")
    p0 = AnalyticParams(alpha=0)
    assert dim_V(seq_app, set(), p0) == 0
    assert dim_V(seq_app, {"a9"}, p0) == 1
    assert dim_V(seq_app, {"a9", "a1"}, p0) == 2
    p1 = AnalyticParams(alpha=1)
    assert dim_V(seq_app, {"a9"}, p1) == 0
    assert dim_V(seq_app, {"a1"}, p1) == 1


def test_pg_and_alpha_bounds(seq_app):
    assert pg(seq_app, AnalyticParams(alpha=0)) == 2
    assert pg(seq_app, AnalyticParams(alpha=1)) == 1
    with pytest.raises(UserError):
        pg(seq_app, AnalyticParams(alpha=2))


def test_reduction_index_and_h1(g_app, seq_app):
    zero = g_app.zero_cycle()
    assert reduction_index(seq_app, zero) == 0
    assert reduction_index(seq_app, -dual_cycle(g_app, "a9")) == 1
    assert reduction_index(seq_app, -dual_cycle(g_app, "a1")) == 2
    p0 = AnalyticParams(alpha=0)
    assert h1_on_image(seq_app, zero, p0) == 2
    assert h1_on_image(seq_app, -dual_cycle(g_app, "a9"), p0) == 1
    assert h1_on_image(seq_app, -dual_cycle(g_app, "a1"), p0) == 0
    with pytest.raises(UserError):  # l' must lie in -S'
        reduction_index(seq_app, g_app.basis_cycle("a1"))


def test_fixed_component_candidates(g_app, g_new, seq_app):
    from resgraph.core import canonical_cycle
    cands = fixed_component_candidates(seq_app, AnalyticParams(alpha=0))
    cycles = [c.cycle for c in cands]
    assert cycles == [g_app.zero_cycle(), fundamental_cycle(g_app),
                      canonical_cycle(g_app)]
    assert not any(c.exceptional for c in cands)
    # (C, C) = -1 and alpha >= 1 appends the flagged 2 Z_min
    cands1 = fixed_component_candidates(seq_app, AnalyticParams(alpha=1))
    assert cands1[-1].exceptional
    assert cands1[-1].cycle == 2 * fundamental_cycle(g_app)
    with pytest.raises(UserError):  # needs numerically Gorenstein
        fixed_component_candidates(elliptic_sequence(g_new),
                                   AnalyticParams(alpha=0))


def test_strata_report_structure(g_app, seq_app):
    params = AnalyticParams(alpha=0, mode="wecc")
    lprime = g_app.zero_cycle()
    report = strata_index_sets(seq_app, lprime, params)
    assert report.pg == 2
    assert set(report.levels) == {0, 1, 2}
    for k, entries in report.levels.items():
        for e in entries:
            # the defining equation of the level
            assert (report.pg - e.dim
                    - (chi(e.l) + intersection_form(e.l, lprime))) == k
            assert e.l.is_integral() and e.l.is_effective()
            assert e.chern == lprime - e.l
            if e.excluded_by is not None:
                ek, el = e.excluded_by
                assert ek > k
                assert any(o.l == el and o.excluded_by is None
                           for o in report.levels[ek])
    # each nonempty level flags at least one maximal entry
    for k, entries in report.levels.items():
        accepted = [e for e in entries if e.excluded_by is None]
        if accepted:
            tops = [e for e in accepted if e.maximal]
            assert tops
            assert all(e.dim == max(a.dim for a in accepted) for e in tops)


def test_strata_generic_mode_notes(g_app, seq_app):
    report = strata_index_sets(seq_app, g_app.zero_cycle(),
                               AnalyticParams(alpha=0, mode="generic"))
    assert any("superset" in n for n in report.notes)


def test_w_strata_wandering(g_app, seq_app):
    out = w_strata(seq_app, g_app.zero_cycle(), AnalyticParams(alpha=1))
    kinds = {s.kind for s in out}
    assert kinds == {"linear", "wandering"}
    wander = next(s for s in out if s.kind == "wandering")
    assert wander.count_max == 1
