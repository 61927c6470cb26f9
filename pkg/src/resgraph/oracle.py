"""Brute-force oracles for every minimality and enumeration claim.

Every function here recomputes a result by direct, bounded search using only
the lattice core (graphs, cycles, the intersection form and chi). None of
the fast algorithms are consulted: the point is that an agreement between an
oracle and its fast counterpart is evidence, not circularity. The single
exception is :func:`verify`, which exists to compare the two sides and
therefore imports the fast modules locally.
"""

from __future__ import annotations

import bisect
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .core import (Cycle, ResolutionGraph, _pairing_with_basis, build_graph,
                   canonical_cycle, chi)
from .errors import (GraphValidationError, InvariantViolation,
                     ResourceCapExceeded, UserError)

__all__ = [
    "SearchBox",
    "brute_min_antinef",
    "brute_fundamental_cycle",
    "brute_min_chi",
    "brute_minimally_elliptic",
    "brute_lemci",
    "brute_subsupports",
    "enumerate_trees",
    "verify",
    "DEFAULT_CAP",
]

DEFAULT_CAP = 10 ** 7


@dataclass(frozen=True)
class SearchBox:
    """Inclusive per-coordinate integer bounds for a boxed search.

    `cap` budgets the number of partial assignments a search through the box
    may visit (the raw volume may legitimately be much larger; the searches
    prune with the antinef inequalities, which are part of the searched
    predicate itself, not of the algorithms under test)."""

    lower: tuple[int, ...]
    upper: tuple[int, ...]
    cap: int = DEFAULT_CAP

    def __post_init__(self):
        if len(self.lower) != len(self.upper):
            raise UserError("search box bounds have mismatched lengths")
        if any(lo > hi for lo, hi in zip(self.lower, self.upper)):
            raise UserError("search box has an empty coordinate range")

    @property
    def volume(self) -> int:
        out = 1
        for lo, hi in zip(self.lower, self.upper):
            out *= hi - lo + 1
        return out


def _antinef_hits(graph: ResolutionGraph, base: Cycle,
                  box: SearchBox) -> Iterator[tuple[int, ...]]:
    """All integer z in `box` with base + z antinef, by depth-first search.

    The search keeps a per-coordinate interval and restores bounds
    consistency after every assignment: the inequality at vertex j is
    monotone increasing in the neighbours of j and decreasing in z_j, so it
    lower-bounds z_j (neighbours at their interval minima) and upper-bounds
    each neighbour (z_j at its interval maximum). Iterating these two rules
    to a fixed point only ever discards values that lie in no solution
    inside the current box, so the enumeration stays exhaustive; branches
    whose intervals empty out die immediately."""
    n = len(graph.vertices)
    index = graph._index
    euler = [graph.euler[v] for v in graph.vertices]
    adj = [[index[w] for w in graph.adjacency[v]] for v in graph.vertices]
    base_pairing = _pairing_with_basis(base)
    visited = 0

    def propagate(lo: list[int], hi: list[int]) -> bool:
        changed = True
        while changed:
            changed = False
            for j in range(n):
                nb_min = sum(lo[w] for w in adj[j])
                need = base_pairing[j] + nb_min  # e_j z_j + need <= 0
                if need > 0:
                    floor_j = math.ceil(Fraction(need, -euler[j]))
                    if floor_j > lo[j]:
                        if floor_j > hi[j]:
                            return False
                        lo[j] = floor_j
                        changed = True
                room = -base_pairing[j] - euler[j] * hi[j] - nb_min
                for w in adj[j]:
                    cap_w = math.floor(room + lo[w])
                    if cap_w < hi[w]:
                        if cap_w < lo[w]:
                            return False
                        hi[w] = cap_w
                        changed = True
        return True

    def rec(i: int, lo: list[int], hi: list[int]) -> Iterator[tuple[int, ...]]:
        nonlocal visited
        visited += 1
        if visited > box.cap:
            raise ResourceCapExceeded(
                f"boxed antinef search exceeded its budget ({box.cap})")
        if i == n:
            yield tuple(lo)
            return
        for value in range(lo[i], hi[i] + 1):
            nlo = lo.copy()
            nhi = hi.copy()
            nlo[i] = nhi[i] = value
            if propagate(nlo, nhi):
                yield from rec(i + 1, nlo, nhi)

    lo0 = list(box.lower)
    hi0 = list(box.upper)
    if propagate(lo0, hi0):
        yield from rec(0, lo0, hi0)


def _safe_upper(graph: ResolutionGraph, l: Cycle) -> tuple[int, ...]:
    """A box [0, upper]^V certain to contain an antinef element of l + L_{>=0}.

    x = sum_v E*_v pairs to -1 with every basis cycle; for t at least the
    maximum vertex degree plus max(l_v / x_v), the rounded-up cycle
    c_v = l_v + ceil(t x_v - l_v) stays antinef (the rounding perturbs each
    pairing by less than deg_v) and dominates l."""
    from .core import dual_cycle
    x = graph.zero_cycle()
    for v in graph.vertices:
        x = x + dual_cycle(graph, v)
    t = max(1, max(graph.degree(v) for v in graph.vertices))
    t += max([math.ceil(lv / xv) for lv, xv in zip(l.coeffs, x.coeffs)
              if lv > 0], default=0)
    return tuple(math.ceil(t * xv - lv) for xv, lv in zip(x.coeffs, l.coeffs))


def brute_min_antinef(l: Cycle, cap: int = DEFAULT_CAP) -> Cycle:
    """Minimum of (l + L_{>=0}) cap S' by exhaustive boxed search.

    The first depth-first hit inside a provably hit-containing box is the
    lexicographic minimum, which coincides with the componentwise minimum
    whenever one exists; the claim is then certified by enumerating every
    hit below it and checking that their meet is the hit itself (meets of
    antinef cycles are antinef, so the certificate is complete)."""
    graph = l.graph
    n = len(graph.vertices)
    box = SearchBox(lower=(0,) * n, upper=_safe_upper(graph, l), cap=cap)
    first = next(iter(_antinef_hits(graph, l, box)), None)
    if first is None:
        raise InvariantViolation(
            "safe search box contained no antinef element",
            payload={"upper": box.upper})
    hits = list(_antinef_hits(
        graph, l, SearchBox(lower=(0,) * n, upper=first, cap=cap)))
    meet = tuple(min(h[i] for h in hits) for i in range(n))
    if meet not in hits:
        raise InvariantViolation(
            "minimal antinef element is not unique",
            payload={"hits": sorted(hits)})
    return l + graph.from_vector(meet)


def brute_fundamental_cycle(graph: ResolutionGraph,
                            cap: int = DEFAULT_CAP) -> Cycle:
    """Minimum of S - {0}, by the same first-hit-plus-certificate search
    (nonzero antinef cycles on a connected graph have full support, so the
    all-zero hit is simply skipped)."""
    n = len(graph.vertices)
    zero = graph.zero_cycle()
    box = SearchBox(lower=(0,) * n, upper=_safe_upper(graph, zero), cap=cap)
    first = next((h for h in _antinef_hits(graph, zero, box) if any(h)), None)
    if first is None:
        raise InvariantViolation(
            "safe search box contained no nonzero antinef element",
            payload={"upper": box.upper})
    hits = [h for h in _antinef_hits(
        graph, zero, SearchBox(lower=(0,) * n, upper=first, cap=cap))
        if any(h)]
    meet = tuple(min(h[i] for h in hits) for i in range(n))
    if meet not in hits:
        raise InvariantViolation(
            "fundamental cycle minimum is not unique",
            payload={"hits": sorted(hits)})
    return graph.from_vector(meet)


def _own_ldl(matrix: Sequence[Sequence[int]]):
    # deliberately re-implemented here (not shared with the fast path)
    n = len(matrix)
    s = [[Fraction(x) for x in row] for row in matrix]
    d: list[Fraction] = []
    u = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d.append(s[i][i])
        if d[i] <= 0:
            raise InvariantViolation("oracle LDL hit a non-positive pivot")
        for j in range(i + 1, n):
            u[i][j] = s[i][j] / d[i]
        for a in range(i + 1, n):
            for b in range(i + 1, n):
                s[a][b] -= d[i] * u[i][a] * u[i][b]
    return d, u


def _chi_sublevel(graph: ResolutionGraph, bound: Fraction,
                  cap: int) -> list[Cycle]:
    """All integral l >= 0 with chi(l) <= bound.

    chi(l) = ((l-b)^T M (l-b) - b^T M b) / 2 with M = -A and b = Z_K / 2,
    so the sublevel set is an ellipsoid, walked by exact budget recursion.
    Integer intervals per coordinate are found by outward scanning, which
    costs no more than the enumeration itself."""
    n = len(graph.vertices)
    m = graph.neg_matrix
    zk = canonical_cycle(graph)
    b = [c / 2 for c in zk.coeffs]
    btmb = sum(b[i] * sum(m[i][j] * b[j] for j in range(n)) for i in range(n))
    radius2 = 2 * Fraction(bound) + btmb
    if radius2 < 0:
        return []
    d, u = _own_ldl(m)
    xs = [0] * n
    out: list[Cycle] = []
    visited = 0

    def rec(i: int, budget: Fraction):
        nonlocal visited
        visited += 1
        if visited > cap:
            raise ResourceCapExceeded(
                f"chi sublevel enumeration exceeded its budget ({cap})")
        if i < 0:
            out.append(graph.from_vector(tuple(xs)))
            return
        shift = Fraction(0)
        for j in range(i + 1, n):
            shift += u[i][j] * (xs[j] - b[j])
        c = b[i] - shift
        q = budget / d[i]
        lo = math.floor(c)
        while (Fraction(lo) - c) ** 2 <= q:
            lo -= 1
        lo += 1
        hi = math.floor(c)
        while (Fraction(hi + 1) - c) ** 2 <= q:
            hi += 1
        for value in range(max(lo, 0), hi + 1):
            xs[i] = value
            term = d[i] * (Fraction(value) - c) ** 2
            if term <= budget:
                rec(i - 1, budget - term)

    rec(n - 1, radius2)
    return out


def brute_min_chi(graph: ResolutionGraph,
                  cap: int = DEFAULT_CAP) -> tuple[Fraction, list[Cycle]]:
    """(min chi over integral l > 0, list of argmins).

    chi(E_v) = 1 for any vertex, so the minimum is at most 1 and the whole
    chi <= 1 sublevel set suffices."""
    candidates = [l for l in _chi_sublevel(graph, Fraction(1), cap)
                  if not l.is_zero()]
    if not candidates:
        raise InvariantViolation("chi sublevel set missed the basis cycles")
    values = [(chi(l), l) for l in candidates]
    best = min(v for v, _ in values)
    argmins = sorted((l for v, l in values if v == best),
                     key=lambda l: l.coeffs)
    return best, argmins


def brute_minimally_elliptic(graph: ResolutionGraph,
                             cap: int = DEFAULT_CAP) -> Cycle:
    """Unique minimum of {0 < l <= Z_min : chi(l) = 0}, by direct search
    (the chi <= 0 locus is a finite ellipsoid; filter it to the box)."""
    zmin = brute_fundamental_cycle(graph, cap)
    hits = [l for l in _chi_sublevel(graph, Fraction(0), cap)
            if not l.is_zero() and l <= zmin and chi(l) == 0]
    if not hits:
        raise UserError("no nonzero cycle with chi = 0 below the fundamental "
                        "cycle (graph is not elliptic)")
    minima = [h for h in hits if all(h <= other for other in hits)]
    if len(minima) != 1:
        raise InvariantViolation(
            "minimally elliptic cycle is not a unique minimum",
            payload={"hits": sorted(h.coeffs for h in hits)})
    return minima[0]


def brute_lemci(graph: ResolutionGraph, cap: int = DEFAULT_CAP) -> list[Cycle]:
    """{l' in S' : [l'] = [Z_K], 0 <= l' <= Z_K}, by direct box search.

    Any such l' has the same fractional parts as Z_K, hence lies in
    frac(Z_K) + [0, floor(Z_K)]^V."""
    zk = canonical_cycle(graph)
    frac = zk - zk.floor()
    box = SearchBox(lower=tuple(0 for _ in graph.vertices),
                    upper=tuple(int(c) for c in zk.floor().coeffs), cap=cap)
    return sorted((frac + graph.from_vector(z)
                   for z in _antinef_hits(graph, frac, box)),
                  key=lambda c: c.coeffs)


def brute_subsupports(graph: ResolutionGraph,
                      vertex_cap: int = 14) -> list[frozenset[str]]:
    """All nonempty connected vertex subsets whose full subgraph has an
    integral canonical cycle with full support."""
    n = len(graph.vertices)
    if n > vertex_cap:
        raise ResourceCapExceeded(
            f"subsupport oracle refuses graphs over {vertex_cap} vertices")
    hits = []
    for mask in range(1, 1 << n):
        members = [graph.vertices[i] for i in range(n) if mask >> i & 1]
        member_set = set(members)
        seen = {members[0]}
        stack = [members[0]]
        while stack:
            for w in graph.adjacency[stack.pop()]:
                if w in member_set and w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(members):
            continue
        zk = canonical_cycle(graph.subgraph(member_set))
        if zk.is_integral() and zk.support() == frozenset(members):
            hits.append(frozenset(members))
    return sorted(hits, key=lambda s: (-len(s), sorted(s)))


def _pruefer_edges(seq: tuple[int, ...], n: int) -> list[tuple[int, int]]:
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    seq_list = list(seq)
    leaves = sorted(i for i in range(n) if degree[i] == 1)
    for x in seq_list:
        leaf = leaves.pop(0)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            # keep the leaf pool sorted so the construction is deterministic
            bisect.insort(leaves, x)
    edges.append((leaves[0], leaves[1]))
    return edges


def _canonical_form(adj: dict[int, list[int]], labels: Sequence[int]):
    """Isomorphism-invariant form of a labelled tree: the minimum over all
    roots of the recursive (label, sorted child forms) encoding."""

    def rooted(v: int, parent: int):
        return (labels[v], tuple(sorted(rooted(w, v)
                                        for w in adj[v] if w != parent)))

    return min(rooted(v, -1) for v in adj)


def _tree_shapes(n: int) -> list[dict[int, list[int]]]:
    """All unlabelled trees on n vertices, as adjacency dicts."""
    if n == 1:
        return [{0: []}]
    if n == 2:
        return [{0: [1], 1: [0]}]
    shapes = []
    seen = set()
    for seq in itertools.product(range(n), repeat=n - 2):
        adj: dict[int, list[int]] = {i: [] for i in range(n)}
        for u, v in _pruefer_edges(seq, n):
            adj[u].append(v)
            adj[v].append(u)
        key = _canonical_form(adj, [0] * n)
        if key not in seen:
            seen.add(key)
            shapes.append(adj)
    return shapes


def enumerate_trees(max_vertices: int,
                    euler_range) -> Iterator[ResolutionGraph]:
    """All non-isomorphic negative-definite weighted trees with at most
    max_vertices vertices and euler numbers from euler_range."""
    euler_values = sorted(set(euler_range))
    if not euler_values or any(not isinstance(e, int) or e > -1
                               for e in euler_values):
        raise UserError("euler_range must be a nonempty set of integers <= -1")
    for n in range(1, max_vertices + 1):
        for adj in _tree_shapes(n):
            seen = set()
            for assignment in itertools.product(euler_values, repeat=n):
                key = _canonical_form(adj, assignment)
                if key in seen:
                    continue
                seen.add(key)
                try:
                    yield build_graph({
                        "vertices": [(f"v{i + 1}", assignment[i])
                                     for i in range(n)],
                        "edges": [(f"v{u + 1}", f"v{v + 1}")
                                  for u in adj for v in adj[u] if u < v],
                    })
                except GraphValidationError as exc:
                    if exc.diagnostic != "not-negative-definite":
                        raise


def _expect(report: dict, name: str, fast, brute):
    if fast != brute:
        raise InvariantViolation(
            f"oracle disagreement: {name}",
            payload={"fast": fast, "brute": brute})
    report[name] = "ok"


def verify(graph: ResolutionGraph, cap: int = DEFAULT_CAP) -> dict[str, str]:
    """Run every oracle against its fast counterpart on one graph.

    Returns {check name: "ok" | "skipped: reason"}; raises
    InvariantViolation on any disagreement."""
    # local imports: verify is the only place the oracle side may look at
    # the fast path, and only to compare against it
    from .laufer import (antinef_lift, classify, cube_representative,
                         fundamental_cycle, minimal_class_representative)

    report: dict[str, str] = {}

    def check(name: str, fast_fn, brute_fn) -> None:
        try:
            _expect(report, name, fast_fn(), brute_fn())
        except ResourceCapExceeded as exc:
            report[name] = f"skipped: {exc}"

    n = len(graph.vertices)
    ones = graph.from_vector([1] * n)
    fast_lift, trace = antinef_lift(ones)
    if not trace.replay():
        raise InvariantViolation("computation sequence trace does not replay")
    check("antinef-lift", lambda: fast_lift,
          lambda: brute_min_antinef(ones, cap))
    check("fundamental-cycle", lambda: fundamental_cycle(graph),
          lambda: brute_fundamental_cycle(graph, cap))
    zk = canonical_cycle(graph)
    check("class-representative",
          lambda: minimal_class_representative(zk),
          lambda: brute_min_antinef(cube_representative(zk), cap))
    cls = classify(graph)
    check("classification", lambda: cls.kind,
          lambda: ("rational" if (v := brute_min_chi(graph, cap)[0]) == 1
                   else "elliptic" if v == 0 else "other"))
    if cls.kind == "elliptic" and graph.is_minimal():
        from .ellseq import (antinef_in_class_below_ZK, elliptic_sequence,
                             minimally_elliptic_cycle,
                             numerically_gorenstein_subsupports)
        check("minimally-elliptic",
              lambda: minimally_elliptic_cycle(graph),
              lambda: brute_minimally_elliptic(graph, cap))
        check("antinef-below-canonical",
              lambda: antinef_in_class_below_ZK(graph, cap),
              lambda: brute_lemci(graph, cap))
        check("gorenstein-subsupports",
              lambda: numerically_gorenstein_subsupports(graph),
              lambda: brute_subsupports(graph))
        elliptic_sequence(graph).validate()
        report["elliptic-sequence"] = "ok"
    return report
