"""Round-level communication patterns shared by the MIS engines.

Each helper issues real :meth:`Network.exchange` rounds; what a node
computes afterwards depends only on what arrived in its inbox.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Iterable, Sequence

from .engine import SC, Network, NetworkError


@dataclass(frozen=True)
class WEdge:
    """A working hyperedge: its members plus the host edge whose client carries it."""

    carrier: int
    members: frozenset[int]


def edge_gather(net: Network, edges: Sequence[WEdge], values: dict[int, Any],
                reduce: Callable[..., Any], keyed: bool = False) -> list[Any]:
    """Every member of every edge learns ``reduce({member: value})`` of that edge.

    With ``keyed`` the reducer is called as ``reduce(edge, vals)``.

    Server-client: servers -> carrier client, client reduces, client ->
    servers (two rounds). Vertex-centric: members swap values directly (one
    round) and each reduces locally.
    """
    if not edges:
        net.charge(1)
        return []
    if keyed:
        fold = reduce
    else:
        def fold(_e, vals):
            return reduce(vals)
    if net.representation == SC:
        up = {}
        for e in edges:
            c = net.topo.client(e.carrier)
            for v in e.members:
                up[(v, c)] = values[v]
        inbox = net.exchange((v, c, val) for (v, c), val in up.items())
        by_client: dict[int, dict[int, Any]] = {c: dict(msgs) for c, msgs in inbox.items()}
        results = []
        down: dict[tuple[int, int], list] = {}
        for i, e in enumerate(edges):
            c = net.topo.client(e.carrier)
            seen = by_client.get(c, {})
            r = fold(e, {v: seen[v] for v in e.members})
            results.append(r)
            for v in e.members:
                down.setdefault((c, v), []).append(r)
        net.exchange((c, v, tuple(rs) if len(rs) > 1 else rs[0]) for (c, v), rs in down.items())
        return results
    sends = {}
    for e in edges:
        for v in e.members:
            for w in e.members:
                if w != v:
                    sends[(v, w)] = values[v]
    inbox = net.exchange((v, w, val) for (v, w), val in sends.items())
    heard = {v: dict(msgs) for v, msgs in inbox.items()}
    results = []
    for e in edges:
        # every member computes the same value; evaluate at the smallest member
        anchor = min(e.members)
        local = dict(heard.get(anchor, {}))
        local[anchor] = values[anchor]
        results.append(fold(e, {v: local[v] for v in e.members}))
    return results


def neighbor_send(net: Network, msgs: Iterable[tuple[int, int, Any]]) -> dict[int, list[tuple[int, Any]]]:
    """Deliver messages between server-graph neighbours.

    In server-client networks the payloads travel through a client shared
    by both endpoints (the lowest-index one), bundled per link.
    """
    msgs = list(msgs)
    if net.representation != SC:
        return net.exchange(msgs)
    h = net.topo.hypergraph
    inc = {}
    hop1: dict[tuple[int, int], list] = {}
    for u, v, p in msgs:
        if u not in inc:
            inc[u] = set(h.incident(u))
        if v not in inc:
            inc[v] = set(h.incident(v))
        common = inc[u] & inc[v]
        if not common:
            raise NetworkError(f"{u} and {v} share no hyperedge")
        c = net.topo.client(min(common))
        hop1.setdefault((u, c), []).append((v, p))
    inbox1 = net.exchange((u, c, tuple(items)) for (u, c), items in hop1.items())
    hop2: dict[tuple[int, int], list] = {}
    for c, arrived in inbox1.items():
        for u, items in arrived:
            for v, p in items:
                hop2.setdefault((c, v), []).append((u, p))
    inbox2 = net.exchange((c, v, tuple(items)) for (c, v), items in hop2.items())
    out: dict[int, list[tuple[int, Any]]] = {}
    for v, arrived in inbox2.items():
        for _, items in arrived:
            out.setdefault(v, []).extend(items)
    for lst in out.values():
        lst.sort(key=lambda t: t[0])
    return out


@dataclass
class Forest:
    """BFS forest of a network: one tree per connected component."""

    parent: dict[int, int | None]
    level: dict[int, int]
    root_of: dict[int, int]

    @property
    def depth(self) -> int:
        return max(self.level.values(), default=0)

    def layers(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.depth + 1)]
        for v, l in self.level.items():
            out[l].append(v)
        return [sorted(x) for x in out]


def build_forest(net: Network, roots: Iterable[int] | None = None) -> Forest:
    """Grow BFS trees by flooding; without ``roots`` each component first
    agrees on its minimum id by label propagation."""
    nodes = sorted(net.nodes)
    if roots is None:
        label = {v: v for v in nodes}
        fresh = set(nodes)
        while fresh:
            inbox = net.exchange((v, w, label[v]) for v in sorted(fresh) for w in net.adj[v])
            fresh = set()
            for w, msgs in inbox.items():
                best = min(p for _, p in msgs)
                if best < label[w]:
                    label[w] = best
                    fresh.add(w)
        roots = sorted({label[v] for v in nodes})
    parent: dict[int, int | None] = {}
    level: dict[int, int] = {}
    root_of: dict[int, int] = {}
    frontier = sorted(set(roots))
    for r in frontier:
        parent[r] = None
        level[r] = 0
        root_of[r] = r
    depth = 0
    while frontier:
        inbox = net.exchange((v, w, depth) for v in frontier for w in net.adj[v] if w not in parent)
        nxt = []
        for w in sorted(inbox):
            if w in parent:
                continue
            src = min(s for s, _ in inbox[w])
            parent[w] = src
            level[w] = depth + 1
            root_of[w] = root_of[src]
            nxt.append(w)
        # child acknowledgements
        if nxt:
            net.exchange((w, parent[w], True) for w in nxt)
        frontier = nxt
        depth += 1
    return Forest(parent, level, root_of)


def tree_aggregate(net: Network, forest: Forest, values: dict[int, Any],
                   op: Callable[[Any, Any], Any]) -> dict[int, Any]:
    """Convergecast ``op`` to each root, then broadcast the result back.

    Nodes absent from ``values`` contribute nothing. Returns the value every
    node ends up holding (its component's aggregate).
    """
    acc = {v: values[v] for v in forest.parent if v in values}
    layers = forest.layers()
    for lvl in range(len(layers) - 1, 0, -1):
        inbox = net.exchange((v, forest.parent[v], acc[v]) for v in layers[lvl] if v in acc)
        for p, msgs in inbox.items():
            for _, val in msgs:
                acc[p] = val if p not in acc else op(acc[p], val)
    result = {r: acc.get(r) for r in layers[0]} if layers else {}
    known = dict(result)
    for lvl in range(1, len(layers)):
        inbox = net.exchange((forest.parent[v], v, known[forest.parent[v]]) for v in layers[lvl])
        for v, msgs in inbox.items():
            known[v] = msgs[0][1]
    return known
