"""Core data model: weighted graphs, vertex orderings, layouts, contraction.

Weights are exact rationals (fractions.Fraction) everywhere. Graphs are
undirected and simple, vertices are 0..n-1, and every edge is stored with its
endpoints in increasing order. JSON serialization round-trips bit-exactly:
integral weights stay ints, everything else becomes a "p/q" string.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any, Iterable, Mapping

Weight = Fraction

EdgeKey = tuple[int, int]


class GraphFormatError(ValueError):
    """Raised when a graph, weight, or edge fails structural validation."""


class LayoutFormatError(ValueError):
    """Raised when an ordering or layout is malformed or inconsistent."""


def as_weight(value: int | str | Fraction) -> Weight:
    """Coerce an int, Fraction, or "p/q" string to an exact rational weight."""
    if isinstance(value, bool):
        raise GraphFormatError(f"weight {value!r} is not a number")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise GraphFormatError(f"bad weight string {value!r}") from exc
    raise GraphFormatError(f"bad weight {value!r} (want int or 'p/q' string)")


def weight_to_json(w: Weight) -> int | str:
    if w.denominator == 1:
        return int(w)
    return f"{w.numerator}/{w.denominator}"


def edge_key(u: int, v: int) -> EdgeKey:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class WeightedGraph:
    """An edge-weighted undirected simple graph on vertices 0..n-1."""

    n: int
    edges: tuple[tuple[int, int, Weight], ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphFormatError(f"vertex count {self.n} is negative")
        canon = []
        seen: set[EdgeKey] = set()
        for idx, e in enumerate(self.edges):
            try:
                u, v, w = e
            except (TypeError, ValueError) as exc:
                raise GraphFormatError(f"edge #{idx} {e!r} is not a triple") from exc
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphFormatError(
                    f"edge #{idx} ({u},{v}) has an endpoint outside 0..{self.n - 1}"
                )
            if u == v:
                raise GraphFormatError(f"edge #{idx} ({u},{v}) is a loop")
            k = edge_key(u, v)
            if k in seen:
                raise GraphFormatError(f"edge #{idx} ({u},{v}) duplicates an earlier edge")
            seen.add(k)
            canon.append((k[0], k[1], as_weight(w)))
        object.__setattr__(self, "edges", tuple(canon))
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != self.n:
                raise GraphFormatError(
                    f"{len(labels)} labels for {self.n} vertices"
                )
            object.__setattr__(self, "labels", labels)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def weight_map(self) -> dict[EdgeKey, Weight]:
        return {(u, v): w for u, v, w in self.edges}

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v, _ in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(a)) for a in nbrs)

    def has_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self.weight_map

    def weight(self, u: int, v: int) -> Weight:
        try:
            return self.weight_map[edge_key(u, v)]
        except KeyError:
            raise GraphFormatError(f"no edge ({u},{v}) in graph") from None

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def edge_keys(self) -> tuple[EdgeKey, ...]:
        return tuple((u, v) for u, v, _ in self.edges)

    def label_of(self, v: int) -> str:
        if self.labels is not None:
            return self.labels[v]
        return str(v)

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y in self.adjacency[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == self.n

    def components(self) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        out: list[tuple[int, ...]] = []
        for s in range(self.n):
            if s in seen:
                continue
            comp = {s}
            stack = [s]
            while stack:
                x = stack.pop()
                for y in self.adjacency[x]:
                    if y not in comp:
                        comp.add(y)
                        stack.append(y)
            seen |= comp
            out.append(tuple(sorted(comp)))
        return out

    def induced(self, vertices: Iterable[int]) -> tuple["WeightedGraph", dict[int, int]]:
        """Induced subgraph plus the old-id -> new-id map."""
        verts = sorted(set(vertices))
        remap = {v: i for i, v in enumerate(verts)}
        edges = [
            (remap[u], remap[v], w)
            for u, v, w in self.edges
            if u in remap and v in remap
        ]
        labels = tuple(self.label_of(v) for v in verts) if self.labels else None
        return WeightedGraph(len(verts), tuple(edges), labels), remap

    def without_edges(self, drop: Iterable[EdgeKey]) -> "WeightedGraph":
        gone = {edge_key(*e) for e in drop}
        return WeightedGraph(
            self.n,
            tuple(e for e in self.edges if (e[0], e[1]) not in gone),
            self.labels,
        )


def parse_graph(obj: Any) -> WeightedGraph:
    """Build a graph from its JSON object form, naming any offending element."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    if not isinstance(obj, dict):
        raise GraphFormatError("graph JSON must be an object")
    if "n" not in obj:
        raise GraphFormatError("graph JSON missing 'n'")
    n = obj["n"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise GraphFormatError(f"'n' must be an int, got {n!r}")
    raw_edges = obj.get("edges", [])
    if not isinstance(raw_edges, list):
        raise GraphFormatError("'edges' must be a list")
    edges = []
    for idx, item in enumerate(raw_edges):
        if not isinstance(item, list) or len(item) != 3:
            raise GraphFormatError(f"edge #{idx} {item!r} must be [u, v, w]")
        u, v, w = item
        if not isinstance(u, int) or not isinstance(v, int):
            raise GraphFormatError(f"edge #{idx} has non-integer endpoints {item!r}")
        edges.append((u, v, as_weight(w)))
    labels = obj.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or not all(isinstance(s, str) for s in labels):
            raise GraphFormatError("'labels' must be a list of strings")
        labels = tuple(labels)
    return WeightedGraph(n, tuple(edges), labels)


def graph_to_json(g: WeightedGraph) -> dict[str, Any]:
    out: dict[str, Any] = {
        "n": g.n,
        "edges": [[u, v, weight_to_json(w)] for u, v, w in g.edges],
    }
    if g.labels is not None:
        out["labels"] = list(g.labels)
    return out


@dataclass(frozen=True)
class VertexOrdering:
    """A total order on the vertices: order[i] is the vertex at position i."""

    order: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "order", tuple(self.order))
        n = len(self.order)
        if sorted(self.order) != list(range(n)):
            raise LayoutFormatError(
                f"ordering {list(self.order)} is not a permutation of 0..{n - 1}"
            )

    @cached_property
    def position(self) -> tuple[int, ...]:
        pos = [0] * len(self.order)
        for i, v in enumerate(self.order):
            pos[v] = i
        return tuple(pos)

    def pos(self, v: int) -> int:
        return self.position[v]

    def __len__(self) -> int:
        return len(self.order)

    def reversed(self) -> "VertexOrdering":
        return VertexOrdering(tuple(reversed(self.order)))


def parse_ordering(obj: Any, n: int | None = None) -> VertexOrdering:
    if isinstance(obj, str):
        obj = json.loads(obj)
    if isinstance(obj, dict):
        obj = obj.get("order")
    if not isinstance(obj, list) or not all(isinstance(x, int) for x in obj):
        raise LayoutFormatError(f"ordering must be a list of ints, got {obj!r}")
    if n is not None and len(obj) != n:
        raise LayoutFormatError(f"ordering has {len(obj)} entries for {n} vertices")
    return VertexOrdering(tuple(obj))


@dataclass(frozen=True)
class Layout:
    """A vertex ordering plus an assignment of every edge to one of k pages."""

    graph: WeightedGraph
    ordering: VertexOrdering
    pages: Mapping[EdgeKey, int]
    k: int

    def __post_init__(self) -> None:
        if len(self.ordering) != self.graph.n:
            raise LayoutFormatError(
                f"ordering over {len(self.ordering)} vertices for a graph on {self.graph.n}"
            )
        if self.k < 0:
            raise LayoutFormatError(f"page count {self.k} is negative")
        pages = {}
        for key, page in dict(self.pages).items():
            k2 = edge_key(*key)
            if k2 not in self.graph.weight_map:
                raise LayoutFormatError(f"page entry for non-edge {key}")
            if not isinstance(page, int) or isinstance(page, bool):
                raise LayoutFormatError(f"page for edge {key} must be an int")
            if not (0 <= page < self.k):
                raise LayoutFormatError(
                    f"edge {key} assigned page {page}, outside 0..{self.k - 1}"
                )
            pages[k2] = page
        missing = [e for e in self.graph.edge_keys() if e not in pages]
        if missing:
            raise LayoutFormatError(f"edge {missing[0]} has no page assignment")
        object.__setattr__(self, "pages", pages)

    def page_of(self, u: int, v: int) -> int:
        return self.pages[edge_key(u, v)]

    def edges_on_page(self, page: int) -> list[tuple[int, int, Weight]]:
        return [e for e in self.graph.edges if self.pages[(e[0], e[1])] == page]


def single_page_layout(g: WeightedGraph, ordering: VertexOrdering) -> Layout:
    """Wrap an ordering as a 1-page layout (the common case for constructions)."""
    return Layout(g, ordering, {k: 0 for k in g.edge_keys()}, 1 if g.m else 0)


def parse_layout(obj: Any, graph: WeightedGraph) -> Layout:
    if isinstance(obj, str):
        obj = json.loads(obj)
    if not isinstance(obj, dict):
        raise LayoutFormatError("layout JSON must be an object")
    ordering = parse_ordering(obj.get("order"), graph.n)
    k = obj.get("k")
    if not isinstance(k, int) or isinstance(k, bool):
        raise LayoutFormatError(f"'k' must be an int, got {k!r}")
    raw_pages = obj.get("pages", {})
    if not isinstance(raw_pages, dict):
        raise LayoutFormatError("'pages' must be an object")
    pages: dict[EdgeKey, int] = {}
    for key, page in raw_pages.items():
        parts = key.split("-")
        if len(parts) != 2:
            raise LayoutFormatError(f"bad page key {key!r} (want 'u-v')")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise LayoutFormatError(f"bad page key {key!r} (non-integer endpoint)") from None
        if u >= v:
            raise LayoutFormatError(f"page key {key!r} must have u < v")
        pages[(u, v)] = page
    return Layout(graph, ordering, pages, k)


def layout_to_json(layout: Layout) -> dict[str, Any]:
    return {
        "order": list(layout.ordering.order),
        "k": layout.k,
        "pages": {f"{u}-{v}": p for (u, v), p in sorted(layout.pages.items())},
    }


@dataclass(frozen=True)
class ParallelMerge:
    """One pair of parallel edges collapsed during a contraction."""

    neighbor: int          # new id of the shared neighbor
    kept: Weight           # representative weight (the max of the two)
    dropped: Weight


@dataclass(frozen=True)
class ContractResult:
    graph: WeightedGraph
    merged: int                          # new id of the merged vertex
    vertex_map: tuple[int, ...]          # old id -> new id (entry for the removed endpoint points at merged)
    parallel_merges: tuple[ParallelMerge, ...] = field(default_factory=tuple)


def contract_edge(g: WeightedGraph, a: int, b: int) -> ContractResult:
    """Contract edge (a, b), keeping a's identity for the merged vertex.

    Vertex b disappears and ids above b shift down by one. Parallel edges
    created by the merge keep a single representative whose weight is the max
    of the two; each such merge is declared in the result metadata.
    """
    if not g.has_edge(a, b):
        raise GraphFormatError(f"cannot contract non-edge ({a},{b})")

    def remap(x: int) -> int:
        if x == b:
            x = a
        return x - 1 if x > b else x

    vertex_map = tuple(remap(x) for x in range(g.n))
    merged = remap(a)
    new_weights: dict[EdgeKey, Weight] = {}
    merges: list[ParallelMerge] = []
    for u, v, w in g.edges:
        if edge_key(u, v) == edge_key(a, b):
            continue
        nu, nv = remap(u), remap(v)
        k = edge_key(nu, nv)
        if k in new_weights:
            prev = new_weights[k]
            kept, dropped = (prev, w) if prev >= w else (w, prev)
            new_weights[k] = kept
            other = k[0] if k[1] == merged else k[1]
            merges.append(ParallelMerge(other, kept, dropped))
        else:
            new_weights[k] = w
    labels = None
    if g.labels is not None:
        labels = tuple(g.labels[x] for x in range(g.n) if x != b)
    graph = WeightedGraph(
        g.n - 1,
        tuple((u, v, w) for (u, v), w in sorted(new_weights.items())),
        labels,
    )
    return ContractResult(graph, merged, vertex_map, tuple(merges))
