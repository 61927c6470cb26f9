"""Decidable topological criteria for end-curve conditions.

Two independent decision procedures are implemented: the extension
criterion over the elliptic-sequence supports, and the monomial condition
at the nodes. On elliptic graphs the two verdicts provably agree; the
module asserts this equivalence and treats a disagreement as a bug signal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .core import (Cycle, ResolutionGraph, build_graph, dual_cycle,
                   intersection_form)
from .ellseq import EllipticSequence, elliptic_sequence
from .errors import GraphValidationError, InvariantViolation, UserError
from .laufer import classify, fundamental_cycle, require_elliptic_minimal
from .core import canonical_cycle, is_numerically_gorenstein

__all__ = [
    "CriterionReport",
    "extension_criterion",
    "monomial_condition",
    "supports_wecc",
    "supports_ecc",
    "glue_classify",
]


@dataclass(frozen=True)
class CriterionReport:
    """verdict is true iff violations is empty; witnesses carry the
    certifying data (per-branch cycles for the monomial condition,
    neighbour lists for the extension criterion)."""

    name: str
    verdict: bool
    violations: tuple[dict, ...] = ()
    witnesses: tuple[dict, ...] = ()

    def __post_init__(self):
        if self.verdict != (not self.violations):
            raise InvariantViolation("report verdict disagrees with violations")


def extension_criterion(graph: ResolutionGraph,
                        seq: EllipticSequence | None = None) -> CriterionReport:
    """For every 0 <= i <= m and v in B_i \\ B_{i+1}: v has at most one
    neighbour in B_{i-1} \\ B_i (with B_{-1} = full vertex set and
    B_{m+1} = empty)."""
    if seq is None:
        seq = elliptic_sequence(graph)
    violations = []
    witnesses = []
    for i in range(0, seq.m + 1):
        ring_above = seq.support_at(i - 1) - seq.support_at(i)
        zone = seq.support_at(i) - seq.support_at(i + 1)
        for v in sorted(zone):
            outside = sorted(w for w in graph.adjacency[v] if w in ring_above)
            record = {"i": i, "vertex": v, "neighbours_above": outside}
            if len(outside) > 1:
                violations.append(record)
            elif outside:
                witnesses.append(record)
    return CriterionReport(name="extension-criterion",
                           verdict=not violations,
                           violations=tuple(violations),
                           witnesses=tuple(witnesses))


def _branch_components(graph: ResolutionGraph, v: str) -> list[frozenset[str]]:
    remaining = set(graph.vertices) - {v}
    components = []
    while remaining:
        start = min(remaining)
        seen = {start}
        stack = [start]
        while stack:
            for w in graph.adjacency[stack.pop()]:
                if w in remaining and w not in seen:
                    seen.add(w)
                    stack.append(w)
        components.append(frozenset(seen))
        remaining -= seen
    return components


def _monomial_branch_solution(graph: ResolutionGraph, v: str,
                              branch: frozenset[str]) -> Cycle | None:
    """Search for an effective integral C on `branch` with
    (E*_v + C, E_u) = 0 for every u in branch ∪ {v} that is not an
    end-vertex of the whole graph inside the branch.

    Any integral solution decomposes as C = sum_w a_w E*_w(branch) over the
    end-vertices w of the graph inside the branch, with a_w = -(C, E_w) a
    non-negative integer, and the condition at v pins
    sum_w a_w m_w = 1 for m_w = coefficient of E*_w(branch) at the branch
    vertex adjacent to v. That bounds each a_w, so the search is finite."""
    sub = graph.subgraph(branch)
    contact = next(w for w in graph.adjacency[v] if w in branch)
    global_ends = set(graph.end_vertices())
    ends = sorted(w for w in branch if w in global_ends)
    weights = [dual_cycle(sub, w).coefficient(contact) for w in ends]
    required = [u for u in sorted(branch) if u not in global_ends]
    estar_v = dual_cycle(graph, v)

    # integer rescaling keeps the simplex walk and the integrality sieve
    # out of Fraction arithmetic: scale = lcm of weight denominators (so
    # sum a_w m_w = 1 becomes sum a_w iw_w = scale), det clears the duals
    scale = 1
    for m in weights:
        scale = scale * m.denominator // math.gcd(scale, m.denominator)
    det = abs(sub.det)
    triples = sorted(
        ((int(m * scale), w, [int(c * det) for c in dual_cycle(sub, w).coeffs])
         for m, w in zip(weights, ends)), reverse=True)
    iw = [t[0] for t in triples]
    vecs = [t[2] for t in triples]

    def solutions(idx: int, remaining: int, acc: list[int]):
        # walk only the simplex sum a_w * m_w <= 1, not the whole box
        if idx == len(iw):
            if remaining == 0:
                yield tuple(acc)
            return
        for a in range(remaining // iw[idx] + 1):
            acc.append(a)
            yield from solutions(idx + 1, remaining - a * iw[idx], acc)
            acc.pop()

    nsub = len(sub.vertices)
    for combo in solutions(0, scale, []):
        total = [0] * nsub
        for a, vec in zip(combo, vecs):
            if a:
                for i, c in enumerate(vec):
                    total[i] += a * c
        if any(t % det for t in total):
            continue
        candidate = sub.from_vector([Fraction(t, det) for t in total])
        lifted = graph.embed(candidate)
        total = estar_v + lifted
        # defensive re-validation of the defining linear conditions
        if intersection_form(total, graph.basis_cycle(v)) != 0:
            continue
        if any(intersection_form(total, graph.basis_cycle(u)) != 0
               for u in required):
            continue
        return lifted
    return None


def monomial_condition(graph: ResolutionGraph) -> CriterionReport:
    """For every node (degree >= 3) and every branch at it, decide the
    existence of the branch cycle of the monomial condition. Graphs without
    nodes pass vacuously."""
    violations = []
    witnesses = []
    for v in graph.nodes():
        for branch in sorted(_branch_components(graph, v), key=sorted):
            solution = _monomial_branch_solution(graph, v, branch)
            record = {"node": v, "branch": tuple(sorted(branch))}
            if solution is None:
                # the rational polytope is never empty here (each branch
                # contains an end-vertex); failure is an integrality failure
                record["note"] = ("rational solutions exist; no integral "
                                  "effective branch cycle")
                violations.append(record)
            else:
                record["cycle"] = solution
                witnesses.append(record)
    return CriterionReport(name="monomial-condition",
                           verdict=not violations,
                           violations=tuple(violations),
                           witnesses=tuple(witnesses))


def _agreeing_verdicts(graph: ResolutionGraph) -> tuple[bool, bool]:
    wecc = extension_criterion(graph).verdict
    ecc = monomial_condition(graph).verdict
    if wecc != ecc:
        raise InvariantViolation(
            "extension criterion and monomial condition disagree on an "
            "elliptic graph", payload={"extension": wecc, "monomial": ecc})
    return wecc, ecc


def supports_wecc(graph: ResolutionGraph) -> bool:
    """Existence of a weak-end-curve analytic structure (elliptic graphs)."""
    require_elliptic_minimal(graph)
    return _agreeing_verdicts(graph)[0]


def supports_ecc(graph: ResolutionGraph) -> bool:
    """Existence of an end-curve analytic structure (elliptic graphs)."""
    require_elliptic_minimal(graph)
    return _agreeing_verdicts(graph)[1]


@dataclass(frozen=True)
class GlueReport:
    vertex: str
    euler_new: int
    negative_definite: bool
    classification: str | None
    chi_zmin: Fraction | None
    lemma_conditions: dict = field(default_factory=dict)


def glue_classify(graph: ResolutionGraph, v: str, e_new: int) -> GlueReport:
    """Attach a new vertex to v with euler number e_new and classify the
    extension; when the extension stays elliptic, the gluing constraints on
    the base graph are asserted: m_v(Z_min) = 1 and v not in B_1, plus (in
    the numerically Gorenstein case) v is an end-vertex with m_v(Z_K) = 1."""
    require_elliptic_minimal(graph)
    if v not in graph._index:
        raise UserError(f"unknown vertex: {v!r}")
    if not isinstance(e_new, int) or e_new > -2:
        raise UserError(f"euler number of the new vertex must be <= -2, got {e_new!r}")
    new_id = "_glued"
    while new_id in graph._index:
        new_id += "_"
    try:
        extended = build_graph({
            "vertices": [(w, graph.euler[w]) for w in graph.vertices] + [(new_id, e_new)],
            "edges": [tuple(sorted(e)) for e in graph.edges] + [(v, new_id)],
        })
    except GraphValidationError as exc:
        if exc.diagnostic == "not-negative-definite":
            return GlueReport(vertex=v, euler_new=e_new, negative_definite=False,
                              classification=None, chi_zmin=None)
        raise
    cls = classify(extended)
    conditions: dict = {}
    if cls.kind == "elliptic":
        seq = elliptic_sequence(graph)
        zmin = fundamental_cycle(graph)
        conditions["m_v_zmin"] = zmin.coefficient(v)
        conditions["v_in_B1"] = v in seq.support_at(1)
        ok = conditions["m_v_zmin"] == 1 and not conditions["v_in_B1"]
        if is_numerically_gorenstein(graph):
            zk = canonical_cycle(graph)
            conditions["v_is_end"] = graph.degree(v) == 1
            conditions["m_v_zk"] = zk.coefficient(v)
            ok = ok and conditions["v_is_end"] and conditions["m_v_zk"] == 1
        if not ok:
            raise InvariantViolation(
                "gluing produced an elliptic graph but the base graph "
                "violates the gluing constraints", payload=conditions)
    return GlueReport(vertex=v, euler_new=e_new, negative_definite=True,
                      classification=cls.kind, chi_zmin=cls.chi_zmin,
                      lemma_conditions=conditions)
