"""Computation sequences and the minimal antinef machinery.

Implements the generalized Laufer algorithm: for any rational cycle l the
sequence z_0 = l, z_{i+1} = z_i + E_{v(i)} with (z_i, E_{v(i)}) > 0 reaches
the unique minimal element s(l) of (l + L_{>=0}) cap S'. From it: the
fundamental cycle Z_min, cube representatives r_h, minimal class
representatives s_h, and the rational / elliptic classification.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (Cycle, ResolutionGraph, _pairing_with_basis, chi,
                   intersection_form)
from .errors import InvariantViolation, UserError

__all__ = [
    "ComputationTrace",
    "Classification",
    "antinef_lift",
    "fundamental_cycle",
    "cube_representative",
    "minimal_class_representative",
    "classify",
]


@dataclass(frozen=True)
class ComputationTrace:
    """Replayable record of a computation sequence.

    result = start + sum of E_{v} over steps; at each step the running
    cycle pairs positively with the vertex about to be added."""

    start: Cycle
    steps: tuple[str, ...]
    result: Cycle

    def replay(self) -> bool:
        """Re-run the sequence and confirm every step was legal."""
        z = self.start
        for v in self.steps:
            if intersection_form(z, z.graph.basis_cycle(v)) <= 0:
                return False
            z = z + z.graph.basis_cycle(v)
        return z == self.result


@dataclass(frozen=True)
class Classification:
    """Graph class by chi(Z_min): rational (1), elliptic (0), other."""

    kind: str
    chi_zmin: Fraction
    zmin: Cycle


def _max_steps(l: Cycle) -> int:
    # Defensive guard only; unreachable for valid negative-definite input.
    g = l.graph
    biggest = max((abs(c) for c in l.coeffs), default=Fraction(0))
    per_vertex = 2 * abs(g.det) * max(1, int(biggest) + 1) + 1
    return per_vertex * len(g.vertices)


def antinef_lift(l: Cycle) -> tuple[Cycle, ComputationTrace]:
    """s(l): unique minimal element of (l + L_{>=0}) cap S'.

    Ties are broken by picking the lexicographically smallest eligible
    vertex; the endpoint does not depend on this choice."""
    g = l.graph
    pair = _pairing_with_basis(l)
    z = list(l.coeffs)
    steps: list[str] = []
    guard = _max_steps(l)
    while True:
        chosen = -1
        for i, p in enumerate(pair):
            if p > 0:
                chosen = i
                break
        if chosen < 0:
            break
        if len(steps) >= guard:
            raise InvariantViolation(
                "computation sequence exceeded its termination guard; "
                "the graph data violates negative definiteness")
        v = g.vertices[chosen]
        steps.append(v)
        z[chosen] += 1
        pair[chosen] += g.euler[v]
        for w in g.adjacency[v]:
            pair[g._index[w]] += 1
    result = g.from_vector(z)
    return result, ComputationTrace(start=l, steps=tuple(steps), result=result)


def fundamental_cycle(graph: ResolutionGraph) -> Cycle:
    """Z_min = min(S - {0}), computed as s(sum_v E_v); valid because every
    nonzero antinef cycle on a connected graph has full support."""
    ones = graph.from_vector([1] * len(graph.vertices))
    return antinef_lift(ones)[0]


def cube_representative(l: Cycle) -> Cycle:
    """r_h: the componentwise fractional part of l (coefficients in [0,1))."""
    return l - l.floor()


def minimal_class_representative(l: Cycle) -> Cycle:
    """s_h: unique minimal antinef cycle in the class h = [l]."""
    return antinef_lift(cube_representative(l))[0]


def classify(graph: ResolutionGraph) -> Classification:
    """rational iff chi(Z_min) = 1, elliptic iff chi(Z_min) = 0, otherwise
    "other" carrying the value."""
    zmin = fundamental_cycle(graph)
    value = chi(zmin)
    if value == 1:
        kind = "rational"
    elif value == 0:
        kind = "elliptic"
    else:
        kind = "other"
    return Classification(kind=kind, chi_zmin=value, zmin=zmin)


def require_elliptic_minimal(graph: ResolutionGraph) -> Classification:
    """Shared precondition check for the elliptic-sequence consumers."""
    if not graph.is_minimal():
        raise UserError(
            "operation requires a minimal resolution graph (all euler "
            "numbers <= -2)")
    cls = classify(graph)
    if cls.kind != "elliptic":
        raise UserError(f"operation requires an elliptic graph, got {cls.kind}")
    return cls
