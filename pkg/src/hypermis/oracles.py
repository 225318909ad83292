"""Centralized ground-truth checkers and brute-force enumerators.

Every check returns a :class:`Verdict`; a failing verdict always names a
concrete witness (an edge, a vertex, or a pair).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable

from .hypergraph import Graph, Hypergraph, SubHypergraphView, server_graph

MAX_ENUM = 20
MAX_MCDS = 40


class OracleGuardError(ValueError):
    """Instance too large for an exact oracle."""


@dataclass(frozen=True)
class Verdict:
    ok: bool
    witness: Any = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def as_dict(self) -> dict:
        w = self.witness
        if isinstance(w, (set, frozenset)):
            w = sorted(w)
        elif isinstance(w, tuple):
            w = [sorted(x) if isinstance(x, (set, frozenset)) else x for x in w]
        return {"pass": self.ok, "witness": w, "reason": self.reason}


PASS = Verdict(True)


def _family(h) -> tuple[frozenset[int], list[frozenset[int]]]:
    if isinstance(h, Hypergraph):
        return frozenset(range(h.n)), [frozenset(e) for e in h.edges]
    if isinstance(h, SubHypergraphView):
        return h.kept_vertices, h.edge_sets()
    vertices, edges = h
    return frozenset(vertices), [frozenset(e) for e in edges]


def is_independent(h, M: Iterable[int]) -> Verdict:
    _, edges = _family(h)
    M = frozenset(M)
    for e in edges:
        if e <= M:
            return Verdict(False, e, "edge inside the set")
    return PASS


def is_maximal_independent(h, M: Iterable[int]) -> Verdict:
    """``M`` contains no edge and every outside vertex would complete one."""
    vertices, edges = _family(h)
    M = frozenset(M)
    if not M <= vertices:
        return Verdict(False, min(M - vertices), "vertex outside the hypergraph")
    ind = is_independent((vertices, edges), M)
    if not ind:
        return ind
    for v in sorted(vertices - M):
        grown = M | {v}
        if not any(v in e and e <= grown for e in edges):
            return Verdict(False, v, "vertex extends the set")
    return PASS


def enumerate_mis(h) -> list[frozenset[int]]:
    """All maximal independent sets by subset enumeration (guarded)."""
    vertices, edges = _family(h)
    vs = sorted(vertices)
    if len(vs) > MAX_ENUM:
        raise OracleGuardError(f"enumeration limited to {MAX_ENUM} vertices")
    pos = {v: i for i, v in enumerate(vs)}
    masks = [sum(1 << pos[v] for v in e) for e in edges]
    out = []
    for s in range(1 << len(vs)):
        if any(em & s == em for em in masks):
            continue
        maximal = True
        for i in range(len(vs)):
            bit = 1 << i
            if s & bit:
                continue
            t = s | bit
            if not any(em & t == em and em & bit for em in masks):
                maximal = False
                break
        if maximal:
            out.append(frozenset(vs[i] for i in range(len(vs)) if s >> i & 1))
    return sorted(out, key=lambda x: sorted(x))


def is_minimal_hitting_set(h, T: Iterable[int]) -> Verdict:
    _, edges = _family(h)
    T = frozenset(T)
    for e in edges:
        if not e & T:
            return Verdict(False, e, "edge not hit")
    for t in sorted(T):
        rest = T - {t}
        if all(e & rest for e in edges):
            return Verdict(False, t, "removable vertex")
    return PASS


# -- standard graphs ---------------------------------------------------------

def is_dominating(g: Graph, M: Iterable[int]) -> Verdict:
    M = frozenset(M)
    for v in range(g.n):
        if v not in M and not g.adj[v] & M:
            return Verdict(False, v, "vertex not dominated")
    return PASS


def is_minimal_dominating(g: Graph, M: Iterable[int]) -> Verdict:
    M = frozenset(M)
    dom = is_dominating(g, M)
    if not dom:
        return dom
    for u in sorted(M):
        if is_dominating(g, M - {u}):
            return Verdict(False, u, "removable dominator")
    return PASS


def is_connected(g: Graph, M: Iterable[int]) -> Verdict:
    """``G[M]`` is connected (the empty set is not)."""
    M = frozenset(M)
    if not M:
        return Verdict(False, None, "empty set")
    start = min(M)
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in g.adj[u]:
            if w in M and w not in seen:
                seen.add(w)
                stack.append(w)
    if seen != M:
        return Verdict(False, min(M - seen), "vertex unreachable inside the set")
    return PASS


def is_cds(g: Graph, M: Iterable[int]) -> Verdict:
    M = frozenset(M)
    return is_dominating(g, M) and is_connected(g, M)


def is_mcds(g: Graph, M: Iterable[int]) -> Verdict:
    """Connected, dominating, and no single vertex can be dropped.

    Connected domination is upward closed in a connected graph, so testing
    single removals decides minimality.
    """
    if g.n > MAX_MCDS:
        raise OracleGuardError(f"MCDS oracle limited to {MAX_MCDS} vertices")
    M = frozenset(M)
    v = is_cds(g, M)
    if not v:
        return v
    for u in sorted(M):
        if is_cds(g, M - {u}):
            return Verdict(False, u, "removable vertex")
    return PASS


def enumerate_mcds(g: Graph) -> list[frozenset[int]]:
    """Every minimal connected dominating set, by bitmask enumeration."""
    if g.n > MAX_ENUM:
        raise OracleGuardError(f"enumeration limited to {MAX_ENUM} vertices")
    n = g.n
    closed = [(1 << v) | sum(1 << w for w in g.adj[v]) for v in range(n)]
    nbr = [sum(1 << w for w in g.adj[v]) for v in range(n)]
    full = (1 << n) - 1

    def cds(s: int) -> bool:
        if not s:
            return False
        cover = 0
        x = s
        while x:
            low = x & -x
            cover |= closed[low.bit_length() - 1]
            x ^= low
        if cover != full:
            return False
        seen = s & -s
        frontier = seen
        while frontier:
            grow = 0
            x = frontier
            while x:
                low = x & -x
                grow |= nbr[low.bit_length() - 1]
                x ^= low
            frontier = grow & s & ~seen
            seen |= frontier
        return seen == s

    ok = [False] * (1 << n)
    for s in range(1 << n):
        ok[s] = cds(s)
    out = []
    for s in range(1 << n):
        if ok[s] and all(not ok[s & ~(1 << i)] for i in range(n) if s >> i & 1):
            out.append(frozenset(i for i in range(n) if s >> i & 1))
    return out


# -- other symmetry-breaking outputs -----------------------------------------

def is_valid_coloring(h: Hypergraph, colors: dict[int, int] | list[int],
                      max_color: int | None = None) -> Verdict:
    """No monochromatic edge; colors in ``1..max_color`` (default Δ+1)."""
    if isinstance(colors, list):
        colors = dict(enumerate(colors))
    limit = h.max_degree + 1 if max_color is None else max_color
    for v in range(h.n):
        c = colors.get(v)
        if c is None or not 1 <= c <= limit:
            return Verdict(False, v, f"color {c} outside 1..{limit}")
    for e in h.edges:
        if len({colors[v] for v in e}) == 1:
            return Verdict(False, frozenset(e), "monochromatic edge")
    return PASS


def is_maximal_matching(h: Hypergraph, S: Iterable[int]) -> Verdict:
    S = sorted(set(S))
    used: dict[int, int] = {}
    for j in S:
        for v in h.edges[j]:
            if v in used:
                return Verdict(False, (used[v], j), "edges overlap")
            used[v] = j
    for j in range(h.m):
        if j not in S and not any(v in used for v in h.edges[j]):
            return Verdict(False, j, "edge could be added")
    return PASS


def is_maximal_clique(h: Hypergraph | Graph, L: Iterable[int]) -> Verdict:
    """Clique of the server graph (or of a plain graph) that nothing extends."""
    adj = server_graph(h).adj if isinstance(h, Hypergraph) else h.adj
    L = sorted(set(L))
    if not L:
        return Verdict(False, None, "empty set")
    for i, u in enumerate(L):
        for v in L[i + 1:]:
            if v not in adj[u]:
                return Verdict(False, (u, v), "non-adjacent pair")
    Ls = set(L)
    for v in range(len(adj)):
        if v not in Ls and Ls <= adj[v]:
            return Verdict(False, v, "vertex extends the clique")
    return PASS
