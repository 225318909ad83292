"""Seeded instance families: random hypergraphs and graphs, the star, the
bridge ring, and the subdivision gadget used for the spanning-subgraph
reduction."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .hypergraph import Graph, Hypergraph, HypergraphError, build


class GeneratorError(ValueError):
    pass


def random_hypergraph(n: int, m: int, dmax: int = 3, seed: int = 0, dmin: int = 2) -> Hypergraph:
    """``m`` edges with sizes uniform on ``[dmin, dmax]``, members uniform
    without replacement. Duplicate draws are redrawn (bounded retries)."""
    if n < 1 or m < 0:
        raise GeneratorError("need n >= 1 and m >= 0")
    if dmin < 1 or dmin > dmax:
        raise GeneratorError(f"bad size range [{dmin}, {dmax}]")
    if dmax > n:
        raise GeneratorError(f"edge size {dmax} exceeds n={n}")
    rng = random.Random(seed)
    edges: set[tuple[int, ...]] = set()
    tries = 0
    while len(edges) < m and tries < 50 * (m + 1):
        k = rng.randint(dmin, dmax)
        edges.add(tuple(sorted(rng.sample(range(n), k))))
        tries += 1
    return build(n, sorted(edges))


def uniform_hypergraph(n: int, d: int, avg_degree: float, seed: int = 0) -> Hypergraph:
    """``d``-uniform instance with about ``avg_degree`` edges per vertex."""
    m = max(0, round(avg_degree * n / d))
    return random_hypergraph(n, m, d, seed, dmin=d)


def random_graph(n: int, p: float, seed: int = 0, connected: bool = False) -> Graph:
    """G(n, p); with ``connected`` a random spanning tree is laid down first."""
    if n < 1:
        raise GeneratorError("need n >= 1")
    rng = random.Random(seed)
    edges = set()
    if connected:
        order = list(range(n))
        rng.shuffle(order)
        for i in range(1, n):
            u, v = order[i], order[rng.randrange(i)]
            edges.add((min(u, v), max(u, v)))
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.add((u, v))
    return Graph.from_edges(n, sorted(edges))


def star(n: int) -> Graph:
    """Center 0 joined to leaves ``1..n-1``."""
    if n < 1:
        raise GeneratorError("need n >= 1")
    return Graph.from_edges(n, [(0, i) for i in range(1, n)])


def bridge_ring(n: int, D: int) -> Graph:
    """Ring of ``n' = 4dD`` vertices, ``d = n // 4D``; every ``d``-th vertex is a
    bridge joined to the ``2d`` vertices nearest to it. Remainder vertices are
    dropped."""
    if D < 1:
        raise GeneratorError("need D >= 1")
    d = n // (4 * D)
    if d < 2:
        raise GeneratorError(f"n={n}, D={D} gives d={d}; need d >= 2 for non-bridge vertices")
    size = 4 * d * D
    edges = set()
    for b in range(0, size, d):
        for k in range(1, d + 1):
            for w in ((b + k) % size, (b - k) % size):
                edges.add((min(b, w), max(b, w)))
    return Graph.from_edges(size, sorted(edges))


def bridge_vertices(g: Graph, d: int) -> list[int]:
    return list(range(0, g.n, d))


@dataclass(frozen=True)
class Subdivision:
    """``G'`` built from ``(G, H)``: ids ``0..n-1`` are the original vertices,
    ``n + k`` subdivides the k-th edge of ``G`` (sorted order), pendants follow."""

    graph: Graph
    n: int
    g_edges: tuple[tuple[int, int], ...]
    h_edges: frozenset[tuple[int, int]]
    pendants: tuple[int, ...]

    def subdivider(self, edge: tuple[int, int]) -> int:
        return self.n + self.g_edges.index(edge)

    @property
    def non_h_subdividers(self) -> frozenset[int]:
        return frozenset(self.n + k for k, e in enumerate(self.g_edges) if e not in self.h_edges)


def scs_subdivision(g: Graph, h_edges) -> Subdivision:
    ge = tuple(g.edges)
    he = frozenset((min(u, v), max(u, v)) for u, v in h_edges)
    if not he <= set(ge):
        raise GeneratorError("H must be a subgraph of G")
    n = g.n
    links = []
    for k, (u, v) in enumerate(ge):
        s = n + k
        links += [(u, s), (v, s)]
    nxt = n + len(ge)
    pendants = []
    anchors = list(range(n)) + [n + k for k, e in enumerate(ge) if e in he]
    for a in anchors:
        links.append((a, nxt))
        pendants.append(nxt)
        nxt += 1
    return Subdivision(Graph.from_edges(nxt, links), n, ge, he, tuple(pendants))


def spans_and_connects(g: Graph, h_edges) -> bool:
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in h_edges:
        parent[find(u)] = find(v)
    return len({find(v) for v in range(g.n)}) == 1


def scs_fixture(count: int = 50, max_vertices: int = 16, seed: int = 7) -> list[tuple[Graph, tuple]]:
    """Deterministic small ``(G, H)`` pairs, alternating spanning-connected and not."""
    rng = random.Random(seed)
    out: list[tuple[Graph, tuple]] = []
    want_conn = True
    while len(out) < count:
        k = rng.randint(2, 5)
        g = random_graph(k, 0.5, rng.randrange(1 << 30), connected=True)
        es = g.edges
        if want_conn:
            # spanning tree plus a random extra subset
            h = set(_spanning_tree(g, rng))
            h |= {e for e in es if rng.random() < 0.3}
        else:
            h = {e for e in es if rng.random() < 0.5}
            if spans_and_connects(g, h):
                continue
        if k + 2 * len(es) - (len(es) - len(h)) + k > max_vertices:
            continue
        out.append((g, tuple(sorted(h))))
        want_conn = not want_conn
    return out


def _spanning_tree(g: Graph, rng: random.Random) -> list[tuple[int, int]]:
    start = rng.randrange(g.n)
    seen = {start}
    frontier = [start]
    tree = []
    while frontier:
        u = frontier.pop(rng.randrange(len(frontier)))
        for w in sorted(g.adj[u]):
            if w not in seen:
                seen.add(w)
                frontier.append(w)
                tree.append((min(u, w), max(u, w)))
    return tree


def check_scs_reduction(g: Graph, h_edges):
    """Both sides of the equivalence, decided by exhaustive MCDS enumeration."""
    from .oracles import OracleGuardError, Verdict, enumerate_mcds

    if g.n > 10:
        raise OracleGuardError("reduction check limited to |V(G)| <= 10")
    sub = scs_subdivision(g, h_edges)
    bad = sub.non_h_subdividers
    mcds = enumerate_mcds(sub.graph)
    offending = [s for s in mcds if s & bad]
    left = not offending
    right = spans_and_connects(g, sub.h_edges)
    if left == right:
        return Verdict(True, None, "spanning" if right else "not spanning")
    witness = sorted(offending[0]) if offending else None
    return Verdict(False, witness, f"avoid-all={left} but spans-and-connects={right}")


FAMILIES = ("random", "star", "bridge-ring", "scs-subdivision")


def generate(family: str, n: int, m: int = 0, dmax: int = 3, D: int = 2, seed: int = 0,
             p: float = 0.3):
    """Dispatch used by the CLI; returns a Hypergraph or a Graph."""
    try:
        if family == "random":
            return random_hypergraph(n, m, dmax, seed)
        if family == "star":
            return star(n)
        if family == "bridge-ring":
            return bridge_ring(n, D)
        if family == "scs-subdivision":
            g = random_graph(n, p, seed, connected=True)
            rng = random.Random(seed)
            h = [e for e in g.edges if rng.random() < 0.7]
            return scs_subdivision(g, h).graph
    except HypergraphError as exc:
        raise GeneratorError(str(exc)) from None
    raise GeneratorError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
