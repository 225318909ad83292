"""Coloring, maximal matching and maximal clique on hypergraphs, each driven
by a Luby-style MIS on a derived 2-dimensional graph."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

from .hypergraph import Graph, Hypergraph, HypergraphError, server_graph
from .netsim import (
    CONGEST_MODE,
    SC,
    Metrics,
    Mode,
    Network,
    build_topology,
    connected_components,
    graph_topology,
    neighbor_send,
    node_rng,
)


@dataclass
class ExtraResult:
    value: Any
    iterations: int
    metrics: Metrics = field(default_factory=Metrics)
    info: dict = field(default_factory=dict)


def _cap(n: int) -> int:
    return 50 * max(1, math.ceil(math.log2(max(2, n)))) + 50


# -- Luby on a standard graph ---------------------------------------------------------

def luby_mis_2dim(g: Graph, seed: int = 0, mode: Mode = CONGEST_MODE) -> ExtraResult:
    """Local priority maxima join; they and their neighbours leave."""
    net = Network(graph_topology(g), mode)
    hi = max(1, g.n ** 4)
    active = set(range(g.n))
    M: set[int] = set()
    it = 0
    while active:
        it += 1
        if it > _cap(g.n):
            raise RuntimeError(f"luby: no convergence after {it - 1} iterations")
        key = {v: (node_rng(seed, "luby", it, v).randint(1, hi), v) for v in active}
        inbox = net.exchange((v, w, key[v]) for v in sorted(active) for w in g.adj[v] if w in active)
        joined = {v for v in active if all(k < key[v] for _, k in inbox.get(v, []))}
        inbox = net.exchange((v, w, True) for v in sorted(joined) for w in g.adj[v] if w in active)
        M |= joined
        active -= joined | set(inbox)
    return ExtraResult(frozenset(M), it, net.metrics)


# -- coloring -------------------------------------------------------------------------

def reduced_pairs(h: Hypergraph) -> list[tuple[int, int]]:
    """Each edge collapses to its two smallest members."""
    out = set()
    for e in h.edges:
        if len(e) < 2:
            raise HypergraphError(f"singleton edge {e} cannot be properly colored")
        out.add((e[0], e[1]))
    return sorted(out)


def hyper_coloring(h: Hypergraph, seed: int = 0, representation: str = SC,
                   mode: Mode = CONGEST_MODE) -> ExtraResult:
    """Random trial coloring of the reduced graph.

    Node ``v`` draws from ``1..deg_H(v)+1`` minus its neighbours' final
    colors; the reduced degree never exceeds ``deg_H(v)`` so the palette
    stays non-empty and every color is at most ``Δ+1``.
    """
    pairs = reduced_pairs(h)
    nbr: dict[int, set[int]] = {v: set() for v in range(h.n)}
    for u, v in pairs:
        nbr[u].add(v)
        nbr[v].add(u)
    net = Network(build_topology(h, representation), mode)
    color: dict[int, int] = {}
    taken: dict[int, set[int]] = {v: set() for v in range(h.n)}
    left = set(range(h.n))
    it = 0
    while left:
        it += 1
        if it > _cap(h.n):
            raise RuntimeError(f"coloring: no convergence after {it - 1} iterations")
        pick = {}
        for v in sorted(left):
            free = [c for c in range(1, h.degree(v) + 2) if c not in taken[v]]
            pick[v] = node_rng(seed, "color", it, v).choice(free)
        inbox = neighbor_send(net, [(v, w, pick[v]) for v in sorted(left) for w in sorted(nbr[v])
                                    if w in left])
        won = {v for v in left if all(c != pick[v] for _, c in inbox.get(v, []))}
        inbox = neighbor_send(net, [(v, w, pick[v]) for v in sorted(won) for w in sorted(nbr[v])
                                    if w in left and w not in won])
        for v in won:
            color[v] = pick[v]
        for w, msgs in inbox.items():
            taken[w].update(c for _, c in msgs)
        left -= won
    for u, v in pairs:
        if color[u] == color[v]:
            raise AssertionError(f"reduced edge ({u}, {v}) monochromatic")
    return ExtraResult(dict(sorted(color.items())), it, net.metrics,
                       {"colors_used": len(set(color.values())), "palette": h.max_degree + 1})


# -- matching -------------------------------------------------------------------------

def maximal_matching(h: Hypergraph, seed: int = 0, mode: Mode = CONGEST_MODE) -> ExtraResult:
    """Luby on the line graph: clients draw priorities, servers relay the
    largest they hear, a client joins when it is the largest everywhere."""
    topo = build_topology(h, SC)
    net = Network(topo, mode)
    hi = max(1, h.m ** 4)
    active = set(range(h.m))
    matched: set[int] = set()
    chosen: set[int] = set()
    it = 0
    while active:
        it += 1
        if it > _cap(h.m):
            raise RuntimeError(f"matching: no convergence after {it - 1} iterations")
        key = {j: (node_rng(seed, "match", it, j).randint(1, hi), j) for j in active}
        up = net.exchange((topo.client(j), v, key[j]) for j in sorted(active) for v in h.edges[j])
        best = {v: max(k for _, k in msgs) for v, msgs in up.items()}
        down = net.exchange((v, topo.client(j), best[v]) for v in sorted(best)
                            for j in h.incident(v) if j in active)
        won = {j for j in active if all(k == key[j] for _, k in down.get(topo.client(j), []))}
        up = net.exchange((topo.client(j), v, True) for j in sorted(won) for v in h.edges[j])
        newly = set(up)
        down = net.exchange((v, topo.client(j), True) for v in sorted(newly)
                            for j in h.incident(v) if j in active and j not in won)
        matched |= newly
        chosen |= won
        active -= won | {c - topo.n for c in down}
    return ExtraResult(frozenset(chosen), it, net.metrics)


# -- clique ---------------------------------------------------------------------------

def maximal_clique(h: Hypergraph, seed: int = 0, representation: str = SC,
                   mode: Mode = CONGEST_MODE) -> ExtraResult:
    """Coordinator ``s`` (smallest id) runs Luby on the complement of the
    graph induced by its neighbourhood."""
    topo = build_topology(h, representation)
    net = Network(topo, mode)
    labels, tr = connected_components(topo, range(topo.size), mode, seed)
    net.charge(tr.rounds, "pick")
    net.metrics.messages += tr.messages
    net.metrics.max_bits = max(net.metrics.max_bits, tr.max_bits)
    if len(set(labels.values())) > 1:
        raise ValueError("network is disconnected")
    s = min(labels.values())
    sg = server_graph(h).adj
    A = sorted(sg[s])
    L = {s}
    it = 0
    while A:
        it += 1
        if it > _cap(h.n):
            raise RuntimeError(f"clique: no convergence after {it - 1} iterations")
        a = len(A)
        order = list(A)
        node_rng(seed, "perm", it).shuffle(order)
        prio = {v: i + 1 for i, v in enumerate(order)}
        neighbor_send(net, [(s, v, (prio[v], a)) for v in A])
        act = set(A)
        heard = neighbor_send(net, [(v, w, prio[v]) for v in A for w in sorted(sg[v]) if w in act])
        marked = {v for v in A
                  if sum(1 for _, p in heard.get(v, []) if p > prio[v]) == a - prio[v]}
        neighbor_send(net, [(v, s, v in marked) for v in A])
        neighbor_send(net, [(s, v, len(marked)) for v in A])
        told = neighbor_send(net, [(v, w, True) for v in sorted(marked) for w in sorted(sg[v])
                                   if w in act])
        c = len(marked)
        L |= marked
        A = [v for v in A if v not in marked and len(told.get(v, [])) == c]
    return ExtraResult(frozenset(L), it, net.metrics, {"coordinator": s})


__all__ = ["ExtraResult", "hyper_coloring", "luby_mis_2dim", "maximal_clique",
           "maximal_matching", "reduced_pairs"]
