"""End-curve criteria and the gluing classifier."""

from __future__ import annotations

import pytest

from resgraph.core import dual_cycle, intersection_form
from resgraph.criteria import (extension_criterion, glue_classify,
                               monomial_condition, supports_ecc,
                               supports_wecc)
from resgraph.errors import UserError


def test_extension_criterion_app(g_app):
    report = extension_criterion(g_app)
    assert report.verdict and not report.violations
    assert report.name == "extension-criterion"


def test_extension_criterion_noecc(g_noecc):
    report = extension_criterion(g_noecc)
    assert not report.verdict
    assert any(len(r["neighbours_above"]) > 1 for r in report.violations)


def test_monomial_condition_app_witnesses(g_app):
    report = monomial_condition(g_app)
    assert report.verdict
    # every witness cycle satisfies the defining linear conditions
    ends = set(g_app.end_vertices())
    for record in report.witnesses:
        v = record["node"]
        branch = set(record["branch"])
        total = dual_cycle(g_app, v) + record["cycle"]
        assert record["cycle"].is_integral()
        assert record["cycle"].is_effective()
        assert intersection_form(total, g_app.basis_cycle(v)) == 0
        for u in branch - ends:
            assert intersection_form(total, g_app.basis_cycle(u)) == 0


def test_monomial_condition_noecc_violation_at_c8(g_noecc):
    report = monomial_condition(g_noecc)
    assert not report.verdict
    assert "c8" in {r["node"] for r in report.violations}


def test_supports_wecc_equals_ecc(g_app, g_noecc):
    assert supports_wecc(g_app) is True
    assert supports_ecc(g_app) is True
    assert supports_wecc(g_noecc) is False
    assert supports_ecc(g_noecc) is False


def test_criteria_require_elliptic(g_pole, single_vertex):
    with pytest.raises(UserError):
        supports_wecc(g_pole)
    with pytest.raises(UserError):
        supports_ecc(single_vertex)


def test_glue_classify_app(g_app):
    report = glue_classify(g_app, "a9", -2)
    assert report.negative_definite
    assert report.classification == "elliptic"
    assert report.lemma_conditions["m_v_zmin"] == 1
    assert report.lemma_conditions["v_in_B1"] is False
    assert report.lemma_conditions["v_is_end"] is True
    assert report.lemma_conditions["m_v_zk"] == 1


def test_glue_classify_not_definite(g_app):
    report = glue_classify(g_app, "u", -2)
    assert not report.negative_definite
    assert report.classification is None


def test_glue_classify_input_errors(g_app):
    with pytest.raises(UserError):
        glue_classify(g_app, "missing", -2)
    with pytest.raises(UserError):
        glue_classify(g_app, "a9", -1)
