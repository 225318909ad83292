"""Hypergraph data model, derived views and the line-oriented text format.

Vertex ids are dense and 0-based in memory; the text format is 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence


class HypergraphError(ValueError):
    """Raised for malformed hypergraphs or malformed instance files."""


@dataclass(frozen=True)
class Hypergraph:
    n: int
    edges: tuple[tuple[int, ...], ...]
    allow_duplicates: bool = False
    _incidence: tuple[tuple[int, ...], ...] = field(
        default=(), repr=False, compare=False
    )

    def __post_init__(self):
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for idx, e in enumerate(self.edges):
            for v in e:
                inc[v].append(idx)
        object.__setattr__(self, "_incidence", tuple(tuple(x) for x in inc))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(self.n)

    def incident(self, v: int) -> tuple[int, ...]:
        """Indices of the edges containing ``v``."""
        _check_vertex(self, v)
        return self._incidence[v]

    def degree(self, v: int) -> int:
        return len(self.incident(v))

    @property
    def max_degree(self) -> int:
        return max((len(x) for x in self._incidence), default=0)

    @property
    def dim(self) -> int:
        return max((len(e) for e in self.edges), default=0)

    def avg_degree(self) -> Fraction:
        if self.n == 0:
            return Fraction(0)
        return Fraction(sum(len(e) for e in self.edges), self.n)


def build(n: int, edges: Iterable[Iterable[int]], allow_duplicates: bool = False) -> Hypergraph:
    """Normalize an edge family into a :class:`Hypergraph`.

    Each edge is sorted and stripped of repeated ids. Duplicate edges are
    collapsed (first occurrence wins) unless ``allow_duplicates`` is set.
    """
    if n < 0:
        raise HypergraphError(f"negative vertex count {n}")
    out: list[tuple[int, ...]] = []
    seen: set[tuple[int, ...]] = set()
    for raw in edges:
        e = tuple(sorted(set(raw)))
        if not e:
            raise HypergraphError("empty hyperedge")
        for v in e:
            if not isinstance(v, int) or v < 0 or v >= n:
                raise HypergraphError(f"vertex id {v!r} out of range for n={n}")
        if not allow_duplicates:
            if e in seen:
                continue
            seen.add(e)
        out.append(e)
    return Hypergraph(n, tuple(out), allow_duplicates)


def _check_vertex(h: Hypergraph, v: int) -> None:
    if v < 0 or v >= h.n:
        raise HypergraphError(f"vertex id {v} out of range for n={h.n}")


def degree(h: Hypergraph, v: int) -> int:
    return h.degree(v)


def stats(h: Hypergraph) -> tuple[int, int, Fraction]:
    """Return ``(max degree, dimension, average degree)``; the average is exact."""
    return h.max_degree, h.dim, h.avg_degree()


@dataclass(frozen=True)
class ServerGraph:
    """Co-occurrence graph: u ~ v iff some hyperedge holds both."""

    n: int
    adj: tuple[frozenset[int], ...]

    @property
    def edges(self) -> set[tuple[int, int]]:
        return {(u, v) for u in range(self.n) for v in self.adj[u] if u < v}

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]


def server_graph(h: Hypergraph) -> ServerGraph:
    adj: list[set[int]] = [set() for _ in range(h.n)]
    for e in h.edges:
        for u in e:
            adj[u].update(e)
    for u in range(h.n):
        adj[u].discard(u)
    return ServerGraph(h.n, tuple(frozenset(a) for a in adj))


@dataclass(frozen=True)
class BipartiteView:
    """Server-client realization: server ``u`` per vertex, client ``j`` per edge."""

    n_servers: int
    n_clients: int
    links: tuple[tuple[int, int], ...]  # (server, client index)


def bipartite_view(h: Hypergraph) -> BipartiteView:
    links = tuple((u, j) for j, e in enumerate(h.edges) for u in e)
    return BipartiteView(h.n, h.m, links)


@dataclass(frozen=True)
class SubHypergraphView:
    base: Hypergraph
    kept_vertices: frozenset[int]
    kept_edges: tuple[int, ...]  # indices into base.edges

    def edge_sets(self) -> list[frozenset[int]]:
        return [frozenset(self.base.edges[i]) for i in self.kept_edges]


def induced(h: Hypergraph, keep: Iterable[int]) -> SubHypergraphView:
    """Sub-hypergraph on ``keep``: only edges fully inside ``keep`` survive."""
    kv = frozenset(keep)
    for v in kv:
        _check_vertex(h, v)
    kept = tuple(i for i, e in enumerate(h.edges) if kv.issuperset(e))
    return SubHypergraphView(h, kv, kept)


# -- text format -------------------------------------------------------------

def _content_lines(text: str) -> list[list[str]]:
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    return rows


def _ints(row: Sequence[str], lineno: int) -> list[int]:
    try:
        return [int(x) for x in row]
    except ValueError:
        raise HypergraphError(f"non-integer token on line {lineno}: {' '.join(row)}") from None


def parse(text: str, allow_duplicates: bool = False) -> Hypergraph:
    """Parse ``"n m"`` followed by ``m`` lines ``"k v1 .. vk"`` (1-based ids)."""
    rows = _content_lines(text)
    if not rows or len(rows[0]) != 2:
        raise HypergraphError("malformed header: expected 'n m'")
    n, m = _ints(rows[0], 1)
    if n < 0 or m < 0:
        raise HypergraphError("malformed header: negative count")
    if len(rows) - 1 != m:
        raise HypergraphError(f"header announces {m} edges, found {len(rows) - 1}")
    edges = []
    for i, row in enumerate(rows[1:], start=2):
        vals = _ints(row, i)
        k, ids = vals[0], vals[1:]
        if k != len(ids):
            raise HypergraphError(f"edge length mismatch on line {i}: declared {k}, got {len(ids)}")
        for v in ids:
            if v < 1 or v > n:
                raise HypergraphError(f"vertex id {v} out of range on line {i}")
        edges.append([v - 1 for v in ids])
    return build(n, edges, allow_duplicates=allow_duplicates)


def serialize(h: Hypergraph) -> str:
    lines = [f"{h.n} {h.m}"]
    for e in h.edges:
        lines.append(" ".join([str(len(e))] + [str(v + 1) for v in e]))
    return "\n".join(lines) + "\n"


# -- standard graphs -----------------------------------------------------------

@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; used by the dominating-set applications."""

    n: int
    adj: tuple[frozenset[int], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise HypergraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise HypergraphError(f"self-loop at {u}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, tuple(frozenset(a) for a in adj))

    @property
    def edges(self) -> list[tuple[int, int]]:
        return sorted((u, v) for u in range(self.n) for v in self.adj[u] if u < v)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def closed_nbhd(self, v: int) -> frozenset[int]:
        return self.adj[v] | {v}

    def to_hypergraph(self) -> Hypergraph:
        return build(self.n, self.edges)


def parse_graph(text: str) -> Graph:
    """Parse ``"n m"`` followed by ``m`` lines ``"u v"`` (1-based ids)."""
    rows = _content_lines(text)
    if not rows or len(rows[0]) != 2:
        raise HypergraphError("malformed header: expected 'n m'")
    n, m = _ints(rows[0], 1)
    if len(rows) - 1 != m:
        raise HypergraphError(f"header announces {m} edges, found {len(rows) - 1}")
    edges = []
    for i, row in enumerate(rows[1:], start=2):
        vals = _ints(row, i)
        if len(vals) != 2:
            raise HypergraphError(f"graph edge on line {i} must have two endpoints")
        u, v = vals
        if not (1 <= u <= n and 1 <= v <= n):
            raise HypergraphError(f"vertex id out of range on line {i}")
        edges.append((u - 1, v - 1))
    return Graph.from_edges(n, edges)


def serialize_graph(g: Graph) -> str:
    es = g.edges
    return "\n".join([f"{g.n} {len(es)}"] + [f"{u + 1} {v + 1}" for u, v in es]) + "\n"


def small_example() -> Hypergraph:
    """The 4-vertex, 3-edge example hypergraph (u1..u4 as ids 0..3)."""
    return build(4, [(0, 1, 2), (1, 3), (2, 3)])
