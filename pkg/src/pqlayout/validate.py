"""Layout validation: sweep simulation, forbidden pairs, conflicts, inversions.

Two independent views of validity are implemented. The operational one
(simulate_sweep) replays the left-to-right sweep: at each vertex the edges
ending there are pulled from their page, and the pull is legal only when those
edges carry the smallest weights among the page's active edges. The
combinatorial one (find_forbidden_pairs) looks for same-page pairs e = uv,
e' = u'v' with w(e) > w(e') and u, u' before v before v'. A layout is valid
iff it has no forbidden pair; the test suite checks the equivalence
exhaustively on small instances.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    EdgeKey,
    GraphFormatError,
    Layout,
    VertexOrdering,
    Weight,
    WeightedGraph,
    edge_key,
)


@dataclass(frozen=True)
class ForbiddenPair:
    """A same-page pair violating the pull discipline.

    `edge` ends first (at `vertex`) and is strictly heavier than `other`,
    which is still active there. kind is one of "nesting", "pseudo-nesting",
    "crossing" by the position of other's left endpoint relative to edge's.
    """

    edge: EdgeKey
    other: EdgeKey
    vertex: int
    kind: str
    page: int

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "e": list(self.edge),
            "e_prime": list(self.other),
            "vertex": self.vertex,
            "page": self.page,
        }


@dataclass(frozen=True)
class SweepViolation:
    vertex: int
    page: int
    pulled: EdgeKey      # a max-weight edge being pulled at `vertex`
    blocking: EdgeKey    # a strictly lighter edge still active on the page

    def to_json(self) -> dict:
        return {
            "kind": "sweep",
            "e": list(self.pulled),
            "e_prime": list(self.blocking),
            "vertex": self.vertex,
            "page": self.page,
        }


@dataclass(frozen=True)
class SweepResult:
    valid: bool
    violation: SweepViolation | None = None


def _oriented_edges(layout: Layout):
    """Edges as (left position, right position, weight, key, page)."""
    pos = layout.ordering.position
    out = []
    for u, v, w in layout.graph.edges:
        pu, pv = pos[u], pos[v]
        if pu > pv:
            pu, pv = pv, pu
        out.append((pu, pv, w, (u, v), layout.pages[(u, v)]))
    return out


def simulate_sweep(layout: Layout) -> SweepResult:
    """Replay the sweep; stop at the first illegal pull."""
    n = layout.graph.n
    ending: list[list[tuple[Weight, EdgeKey, int]]] = [[] for _ in range(n)]
    starting: list[list[tuple[Weight, EdgeKey, int]]] = [[] for _ in range(n)]
    for pl, pr, w, key, page in _oriented_edges(layout):
        starting[pl].append((w, key, page))
        ending[pr].append((w, key, page))

    # active edges per page, as weight -> multiset of keys (plain dict of lists)
    active: list[dict[EdgeKey, Weight]] = [dict() for _ in range(max(layout.k, 1))]
    for i in range(n):
        pulled_here = ending[i]
        if pulled_here:
            by_page: dict[int, list[tuple[Weight, EdgeKey]]] = {}
            for w, key, page in pulled_here:
                by_page.setdefault(page, []).append((w, key))
            for page, pulls in by_page.items():
                w_max, key_max = max(pulls)
                for _, key in pulls:
                    del active[page][key]
                for key, w in active[page].items():
                    if w < w_max:
                        return SweepResult(
                            False,
                            SweepViolation(layout.ordering.order[i], page, key_max, key),
                        )
        for w, key, page in starting[i]:
            active[page][key] = w
    return SweepResult(True)


def find_forbidden_pairs(layout: Layout) -> list[ForbiddenPair]:
    """All forbidden same-page pairs, sorted for deterministic reporting."""
    edges = _oriented_edges(layout)
    order = layout.ordering.order
    found: list[ForbiddenPair] = []
    for i, (al, ar, aw, akey, apage) in enumerate(edges):
        for bl, br, bw, bkey, bpage in edges[i + 1 :]:
            if apage != bpage:
                continue
            # orient: e ends strictly first and is strictly heavier
            if ar < br and aw > bw and bl < ar:
                el, er, ekey = al, ar, akey
                ol, okey = bl, bkey
            elif br < ar and bw > aw and al < br:
                el, er, ekey = bl, br, bkey
                ol, okey = al, akey
            else:
                continue
            if ol < el:
                kind = "nesting"
            elif ol == el:
                kind = "pseudo-nesting"
            else:
                kind = "crossing"
            found.append(ForbiddenPair(ekey, okey, order[er], kind, apage))
    found.sort(key=lambda p: (p.vertex, p.edge, p.other))
    return found


def is_valid_layout(layout: Layout) -> bool:
    return simulate_sweep(layout).valid


@dataclass(frozen=True)
class ConflictGraph:
    """Conflicts between edges of a graph under a fixed vertex ordering.

    Two edges conflict when putting them on one page would create a forbidden
    pair. Proper colorings of this graph are exactly the valid page
    assignments for the ordering.
    """

    nodes: tuple[EdgeKey, ...]
    adjacency: tuple[frozenset[int], ...]   # indices into nodes

    @property
    def size(self) -> int:
        return len(self.nodes)

    def degree(self, i: int) -> int:
        return len(self.adjacency[i])


def conflicts(
    graph: WeightedGraph, ordering: VertexOrdering, a: EdgeKey, b: EdgeKey
) -> bool:
    pos = ordering.position
    wa, wb = graph.weight_map[a], graph.weight_map[b]
    al, ar = sorted((pos[a[0]], pos[a[1]]))
    bl, br = sorted((pos[b[0]], pos[b[1]]))
    if ar < br:
        return wa > wb and bl < ar
    if br < ar:
        return wb > wa and al < br
    return False


def build_conflict_graph(graph: WeightedGraph, ordering: VertexOrdering) -> ConflictGraph:
    pos = ordering.position
    oriented = []
    for u, v, w in graph.edges:
        pu, pv = pos[u], pos[v]
        if pu > pv:
            pu, pv = pv, pu
        oriented.append((pu, pv, w))
    keys = graph.edge_keys()
    n = len(keys)
    adj: list[set[int]] = [set() for _ in range(n)]
    for i in range(n):
        al, ar, aw = oriented[i]
        for j in range(i + 1, n):
            bl, br, bw = oriented[j]
            hit = (ar < br and aw > bw and bl < ar) or (br < ar and bw > aw and al < br)
            if hit:
                adj[i].add(j)
                adj[j].add(i)
    return ConflictGraph(keys, tuple(frozenset(s) for s in adj))


@dataclass(frozen=True)
class Inversion:
    """Edges e_1..e_k with right endpoints strictly from right to left,
    strictly increasing weights, and every left endpoint before the leftmost
    right endpoint. Its length lower-bounds the pages any layout with this
    ordering needs."""

    edges: tuple[EdgeKey, ...]

    def __len__(self) -> int:
        return len(self.edges)


def longest_inversion(graph: WeightedGraph, ordering: VertexOrdering) -> Inversion:
    """Longest inversion under the ordering, by LIS over candidate tails.

    For each candidate last edge f (heaviest, leftmost right endpoint) the
    remaining members must end strictly right of f's right endpoint, start
    strictly left of it, and weigh strictly less; among those, a chain with
    right endpoints decreasing and weights increasing is a longest strictly
    increasing weight subsequence after sorting by right position descending.
    """
    pos = ordering.position
    oriented = []
    for u, v, w in graph.edges:
        pu, pv = pos[u], pos[v]
        if pu > pv:
            pu, pv = pv, pu
        oriented.append((pu, pv, w, (u, v)))
    if not oriented:
        return Inversion(())

    best: tuple[EdgeKey, ...] = (oriented[0][3],)
    for fl, fr, fw, fkey in oriented:
        cands = [
            (bl, br, bw, bkey)
            for bl, br, bw, bkey in oriented
            if bw < fw and br > fr and bl < fr
        ]
        cands.sort(key=lambda t: t[1], reverse=True)
        seq = _strict_lis_weights(cands)
        if len(seq) + 1 > len(best):
            best = tuple(k for _, _, _, k in seq) + (fkey,)
    return Inversion(best)


def _strict_lis_weights(items: list[tuple[int, int, Weight, EdgeKey]]):
    """Longest subsequence with strictly increasing weight AND strictly
    decreasing right endpoint (items pre-sorted by right desc; rights may tie,
    so the right-strictness is enforced explicitly)."""
    n = len(items)
    if n == 0:
        return []
    best_len = [1] * n
    prev = [-1] * n
    for i in range(n):
        for j in range(i):
            if items[j][2] < items[i][2] and items[j][1] > items[i][1]:
                if best_len[j] + 1 > best_len[i]:
                    best_len[i] = best_len[j] + 1
                    prev[i] = j
    i = max(range(n), key=lambda t: best_len[t])
    out = []
    while i != -1:
        out.append(items[i])
        i = prev[i]
    out.reverse()
    return out


class StructureError(ValueError):
    """Raised when an operation's structural precondition fails."""


def cycle_order(graph: WeightedGraph) -> list[int]:
    """The vertices of a cycle graph in traversal order; error otherwise."""
    if graph.n < 3 or graph.m != graph.n:
        raise StructureError("graph is not a cycle")
    if any(graph.degree(v) != 2 for v in range(graph.n)) or not graph.is_connected():
        raise StructureError("graph is not a cycle")
    walk = [0, graph.adjacency[0][0]]
    while len(walk) < graph.n:
        a, b = walk[-2], walk[-1]
        nxt = [x for x in graph.adjacency[b] if x != a]
        walk.append(nxt[0])
    return walk


def last_vertex_heavy_check(graph: WeightedGraph, ordering: VertexOrdering) -> bool:
    """For a cycle: is the rightmost vertex incident to a maximum-weight edge?

    Every valid 1-page layout of a cycle has this property, so it is a cheap
    necessary condition (and a handy exhaustive-test target). Raises
    StructureError when the graph is not a cycle.
    """
    cycle_order(graph)  # structural check only
    last = ordering.order[-1]
    w_max = max(w for _, _, w in graph.edges)
    return any(
        w == w_max and last in (u, v) for u, v, w in graph.edges
    )
