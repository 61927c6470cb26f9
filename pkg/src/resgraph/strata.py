"""Numeric Brill-Noether machinery over the elliptic sequence.

Everything here is the combinatorial shadow of the analytic stratification:
vertex depths and the flag dimension dim V(I), the reduction index, the
stratification dimension table, candidate fixed-component cycles, and the
solver for the compatibility system

    (i)  l >= 0 integral, l' - l antinef-negative,
    (ii) k + chi(l) + (l, l') = pg - dim V(I(l' - l)),
    (iii) exclusion of candidates whose subspace is already indexed at a
          higher level, decided through the declared trivializable set T.

The analytic inputs are exactly alpha (the minimal Gorenstein index) and T.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .core import (Cycle, ResolutionGraph, canonical_cycle, chi,
                   estar_support, intersection_form, is_antinef,
                   is_numerically_gorenstein)
from .ellseq import EllipticSequence, elliptic_sequence, partial_sums
from .errors import InvariantViolation, UserError
from .laufer import fundamental_cycle
from .quadform import enumerate_ellipsoid_points

__all__ = [
    "AnalyticParams",
    "StrataEntry",
    "StrataReport",
    "WStratum",
    "FixedComponentCandidate",
    "depth",
    "dim_V",
    "pg",
    "h1_on_image",
    "reduction_index",
    "w_strata",
    "fixed_component_candidates",
    "strata_index_sets",
]

MODES = ("generic", "wecc", "custom")

# Open problems stated in the source material; surfaced, never asserted.
NOTE_WANDERING = "open question: whether the wandering points are all distinct"
NOTE_SUPERSET = ("generic mode assumes no subspace coincidences; the output "
                 "is a superset of the true strata ledger")
NOTE_F0 = ("open question: whether the F-stratum equals the Abel-image "
           "exactly (only the closure identity is known)")


@dataclass(frozen=True)
class AnalyticParams:
    """alpha: minimal Gorenstein index (user input, 0 = Gorenstein).
    trivializable: declared set T of integral antinef cycles whose natural
    bundles degenerate to the origin; only read in custom mode.
    mode: generic (T empty) | wecc (T = all antinef) | custom."""

    alpha: int = 0
    mode: str = "generic"
    trivializable: tuple[Cycle, ...] = ()

    def __post_init__(self):
        if self.mode not in MODES:
            raise UserError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.mode != "custom" and self.trivializable:
            raise UserError(
                "trivializable cycles may only be supplied in custom mode")
        for t in self.trivializable:
            if not (t.is_integral() and t.is_effective() and is_antinef(t)
                    and not t.is_zero()):
                raise UserError(
                    "every trivializable cycle must be a nonzero integral "
                    "effective antinef cycle")

    def check_alpha(self, seq: EllipticSequence) -> None:
        if not 0 <= self.alpha <= seq.m:
            raise UserError(f"alpha must lie in [0, {seq.m}], got {self.alpha}")


def depth(seq: EllipticSequence, v: str) -> int:
    """max{j : v in B_j}, or -1 if v is outside B_0."""
    if v not in seq.graph._index:
        raise UserError(f"unknown vertex: {v!r}")
    out = -1
    for j, b in enumerate(seq.supports):
        if v in b:
            out = j
        else:
            break
    return out


def dim_V(seq: EllipticSequence, vertex_set, params: AnalyticParams) -> int:
    """Flag dimension of V(I): 0 for empty I, else the maximum over u in I
    of max(0, depth(u) - alpha + 1)."""
    params.check_alpha(seq)
    return max((max(0, depth(seq, u) - params.alpha + 1) for u in vertex_set),
               default=0)


def pg(seq: EllipticSequence, params: AnalyticParams) -> int:
    """Geometric genus for the declared alpha: m + 1 - alpha."""
    params.check_alpha(seq)
    return seq.m + 1 - params.alpha


def _pg_contraction(seq: EllipticSequence, params: AnalyticParams, j: int) -> int:
    """p_g of the j-th contraction, 0 <= j <= m+1."""
    return seq.m + 1 - max(j, params.alpha)


def _require_chern(lprime: Cycle) -> None:
    if not is_antinef(-lprime):
        raise UserError("lprime must lie in -S' (its negative must be antinef)")


def reduction_index(seq: EllipticSequence, lprime: Cycle) -> int:
    """Maximal 0 <= i <= m+1 with I(l') meeting B_{i-1} (B_{-1} = full set);
    0 iff the E*-support is empty."""
    _require_chern(lprime)
    support = estar_support(lprime)
    if not support:
        return 0
    return max(depth(seq, v) for v in support) + 1


def h1_on_image(seq: EllipticSequence, lprime: Cycle,
                params: AnalyticParams) -> int:
    """Uniform h1 value on the image closure for Chern class l':
    pg - dim V(I(l')); asserts the reduction-index upper bound."""
    _require_chern(lprime)
    value = pg(seq, params) - dim_V(seq, estar_support(-lprime), params)
    bound = _pg_contraction(seq, params, reduction_index(seq, lprime))
    if value > bound:
        raise InvariantViolation(
            "h1 on the image exceeds the reduction-index bound",
            payload={"value": value, "bound": bound})
    return value


@dataclass(frozen=True)
class WStratum:
    k: int
    dim: int
    kind: str  # "linear" or "wandering"
    count_max: int | None = None


def w_strata(seq: EllipticSequence, lprime: Cycle,
             params: AnalyticParams) -> list[WStratum]:
    """Dimension table of the h1-level sets in the Picard group for Chern
    class l': one linear stratum per level, plus the wandering-point caveat
    when alpha exceeds the reduction index."""
    _require_chern(lprime)
    params.check_alpha(seq)
    i = reduction_index(seq, lprime)
    total = pg(seq, params)
    base = _pg_contraction(seq, params, i)
    start = max(i, params.alpha)
    out = [WStratum(k=seq.m + 1 - j, dim=(total - base) + (j - start),
                    kind="linear")
           for j in range(start, seq.m + 2)]
    if params.alpha > i:
        out.append(WStratum(k=base, dim=0, kind="wandering",
                            count_max=params.alpha - i))
    return out


@dataclass(frozen=True)
class FixedComponentCandidate:
    cycle: Cycle
    exceptional: bool = False


def fixed_component_candidates(seq: EllipticSequence, params: AnalyticParams
                               ) -> list[FixedComponentCandidate]:
    """Possible nonzero-or-zero fixed-component cycles of degree-zero line
    bundles: {0, C_0, ..., C_m}; when the minimally elliptic cycle has
    self-intersection -1 and the structure is non-Gorenstein (alpha >= 1),
    the exceptional candidate 2 Z_min is appended, flagged."""
    params.check_alpha(seq)
    graph = seq.graph
    if not is_numerically_gorenstein(graph):
        raise UserError("fixed-component candidates require a numerically "
                        "Gorenstein graph")
    out = [FixedComponentCandidate(graph.zero_cycle())]
    for t in range(0, seq.m + 1):
        out.append(FixedComponentCandidate(partial_sums(seq, t)[0]))
    c = seq.fundamental_cycles[-1]
    if intersection_form(c, c) == -1 and params.alpha >= 1:
        out.append(FixedComponentCandidate(2 * fundamental_cycle(graph),
                                           exceptional=True))
    return out


@dataclass(frozen=True)
class StrataEntry:
    l: Cycle
    chern: Cycle
    dim: int
    k: int
    maximal: bool = False
    excluded_by: tuple[int, Cycle] | None = None


@dataclass(frozen=True)
class StrataReport:
    lprime: Cycle
    pg: int
    levels: dict[int, tuple[StrataEntry, ...]]
    notes: tuple[str, ...] = ()

    def entries(self, k: int, include_excluded: bool = False):
        return [e for e in self.levels.get(k, ())
                if include_excluded or e.excluded_by is None]

    def maximal_entry(self, k: int) -> StrataEntry | None:
        hits = [e for e in self.entries(k) if e.maximal]
        return hits[0] if len(hits) == 1 else None


def _candidate_cycles(graph: ResolutionGraph, lprime: Cycle, bound: int
                      ) -> list[Cycle]:
    """All integral l >= 0 with chi(l) + (l, l') <= bound and l - l'
    antinef, enumerated exactly inside the defining ellipsoid.

    Completing the square: with M = -A and b = Z_K/2 + l',
    chi(l) + (l, l') = (l-b)^T M (l-b) / 2 - b^T M b / 2, so the candidate
    set is the ellipsoid of radius^2 R = 2*bound + b^T M b around b.
    The antinef inequality at a vertex is used as a pruning filter as soon
    as the closed neighbourhood of the vertex is assigned."""
    n = len(graph.vertices)
    index = graph._index
    zk = canonical_cycle(graph)
    # Coordinates are assigned from position n-1 downwards; the antinef
    # inequality at a vertex becomes checkable once its closed neighbourhood
    # is assigned. Laying the vertices out in DFS preorder (assigned in that
    # order, i.e. preorder rank r at position n-1-r) keeps neighbourhoods
    # nearly contiguous, so the pruning activates early instead of only at
    # the bottom of the recursion.
    start = min(graph.vertices, key=lambda v: (graph.degree(v), v))
    preorder: list[int] = []
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        preorder.append(index[v])
        for w in reversed(graph.adjacency[v]):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    sigma = [0] * n  # position -> original index
    pos = [0] * n    # original index -> position
    for rank, orig in enumerate(preorder):
        sigma[n - 1 - rank] = orig
        pos[orig] = n - 1 - rank
    m = [[Fraction(graph.neg_matrix[sigma[a]][sigma[b]]) for b in range(n)]
         for a in range(n)]
    b_orig = [zkc / 2 + lpc for zkc, lpc in zip(zk.coeffs, lprime.coeffs)]
    b = [b_orig[sigma[a]] for a in range(n)]
    btmb = sum(b[i] * sum(m[i][j] * b[j] for j in range(n)) for i in range(n))
    radius2 = 2 * Fraction(bound) + btmb
    euler_pos = [graph.euler[graph.vertices[sigma[a]]] for a in range(n)]
    adj_pos = [[pos[index[w]]
                for w in graph.adjacency[graph.vertices[sigma[a]]]]
               for a in range(n)]
    offsets = [lprime.coeffs[sigma[a]] for a in range(n)]
    # integer-scaled copies keep the hot pruning filter free of Fractions
    den = 1
    for o in offsets:
        den = den * o.denominator // math.gcd(den, o.denominator)
    ioff = [int(o * den) for o in offsets]
    ready: list[list[int]] = [[] for _ in range(n)]
    for j in range(n):
        ready[min([j] + adj_pos[j])].append(j)

    def partial_filter(i: int, xs: list[int]) -> bool:
        for j in ready[i]:
            acc = (xs[j] * den - ioff[j]) * euler_pos[j]
            for wj in adj_pos[j]:
                acc += xs[wj] * den - ioff[wj]
            if acc > 0:
                return False
        return True

    out = []
    for point in enumerate_ellipsoid_points(m, b, radius2,
                                            lower=[0] * n,
                                            partial_filter=partial_filter):
        coeffs = [0] * n
        for a in range(n):
            coeffs[sigma[a]] = point[a]
        out.append(graph.from_vector(coeffs))
    return out


def _decomposes_over(difference: Cycle, pool: tuple[Cycle, ...]) -> bool:
    """Whether `difference` is a non-negative integral combination of pool."""
    if difference.is_zero():
        return True
    seen = set()

    def rec(current: Cycle) -> bool:
        if current.is_zero():
            return True
        if current.coeffs in seen:
            return False
        seen.add(current.coeffs)
        for t in pool:
            nxt = current - t
            if nxt.is_effective() and rec(nxt):
                return True
        return False

    return rec(difference)


def strata_index_sets(seq: EllipticSequence, lprime: Cycle,
                      params: AnalyticParams) -> StrataReport:
    """Solve the compatibility system for every level k down from pg.

    Candidates come from the finite ellipsoid {l >= 0 : chi(l)+(l,l') <= pg};
    each candidate determines its level through (ii). Rule (iii) is applied
    from the top level down: a candidate is excluded when its subspace is
    already indexed at a higher level, where subspace containment is decided
    by equal flag dimensions plus a T-decomposable difference (and, in wecc
    mode, by flag-dimension comparison alone, since every subspace then
    passes through the origin and lies in the flag). Excluded candidates are
    retained with a reference to their excluder; per-level entries of
    maximal dimension are flagged."""
    graph = seq.graph
    _require_chern(lprime)
    params.check_alpha(seq)
    total = pg(seq, params)
    wecc = params.mode == "wecc"
    pool = params.trivializable if params.mode == "custom" else ()
    by_level: dict[int, list[StrataEntry]] = {}
    for l in _candidate_cycles(graph, lprime, total):
        value = chi(l) + intersection_form(l, lprime)
        if value > total:
            continue
        dim = dim_V(seq, estar_support(l - lprime), params)
        k = total - dim - value
        if k.denominator != 1 or k < 0:
            continue
        by_level.setdefault(int(k), []).append(
            StrataEntry(l=l, chern=lprime - l, dim=dim, k=int(k)))
    levels: dict[int, tuple[StrataEntry, ...]] = {}
    accepted_above: list[StrataEntry] = []
    for k in range(total, -1, -1):
        processed: list[StrataEntry] = []
        for entry in sorted(by_level.get(k, []),
                            key=lambda e: (-e.dim, e.l.coeffs)):
            excluder = None
            for prior in accepted_above:
                if wecc:
                    contained = entry.dim <= prior.dim
                else:
                    diff = entry.l - prior.l
                    contained = (entry.dim == prior.dim and diff.is_effective()
                                 and _decomposes_over(diff, pool))
                if contained:
                    excluder = (prior.k, prior.l)
                    break
            if excluder is not None:
                processed.append(StrataEntry(l=entry.l, chern=entry.chern,
                                             dim=entry.dim, k=k,
                                             excluded_by=excluder))
            else:
                processed.append(entry)
        survivors = [e for e in processed if e.excluded_by is None]
        top = max((e.dim for e in survivors), default=None)
        final = tuple(
            StrataEntry(l=e.l, chern=e.chern, dim=e.dim, k=k,
                        maximal=(e.excluded_by is None and e.dim == top),
                        excluded_by=e.excluded_by)
            for e in processed)
        levels[k] = final
        accepted_above.extend(e for e in final if e.excluded_by is None)
    notes = [NOTE_F0]
    if params.mode == "generic":
        notes.append(NOTE_SUPERSET)
    return StrataReport(lprime=lprime, pg=total, levels=levels,
                        notes=tuple(notes))
