"""Dominating-set problems on standard graphs, reduced to hypergraph MIS."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

from .hypergraph import Graph, build
from .mis import solve
from .netsim import (
    CONGEST_MODE,
    Metrics,
    Mode,
    NetworkError,
    bfs_tree,
    connected_components,
    converge_sum,
    elect_leader,
    graph_topology,
    node_rng,
    sub_seed,
)
from .oracles import is_dominating


class PreconditionError(ValueError):
    pass


@dataclass
class AppResult:
    algorithm: str
    dominating_set: frozenset[int]
    metrics: Metrics = field(default_factory=Metrics)
    info: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"algorithm": self.algorithm, "set": sorted(self.dominating_set),
                "metrics": self.metrics.as_dict(), **self.info}


def _charge(metrics: Metrics, rounds: int, messages: int, max_bits: int, phase: str,
            violations: int = 0) -> None:
    metrics.rounds += rounds
    metrics.messages += messages
    metrics.max_bits = max(metrics.max_bits, max_bits)
    metrics.violations += violations
    metrics.phases[phase] = metrics.phases.get(phase, 0) + rounds


# -- RMDS ---------------------------------------------------------------------------

def rmds(g: Graph, R: Iterable[int], engine: str = "kuw-sqrt", seed: int = 0,
         mode: Mode = CONGEST_MODE) -> AppResult:
    """Minimal dominating set inside the dominating set ``R``.

    Hypernodes are the members of ``R``; every vertex ``v`` contributes the
    edge ``N[v] ∩ R``. The complement of an MIS is a minimal hitting set,
    i.e. a minimal dominating set drawn from ``R``.
    """
    R = sorted(set(R))
    dom = is_dominating(g, R)
    if not dom:
        raise PreconditionError(f"R does not dominate vertex {dom.witness}")
    index = {u: i for i, u in enumerate(R)}
    edges = [[index[u] for u in sorted(g.closed_nbhd(v)) if u in index] for v in range(g.n)]
    h = build(len(R), edges, allow_duplicates=True)
    res = solve(h, engine, seed, "sc", mode)
    M = frozenset(R[i] for i in range(len(R)) if i not in res.independent_set)
    out = AppResult("rmds", M, Metrics(), {"engine": engine, "restricted": len(R)})
    out.metrics.add(res.metrics)
    return out


# -- BMDS ---------------------------------------------------------------------------

def bmds_parameters(delta: float) -> tuple[float | None, float]:
    """``(t, p)``: marking probability ``p = ln t / t`` for high-degree nodes.

    When ``delta <= e`` (or ``t <= 1``) the formula is undefined; high-degree
    nodes then stay unmarked and the low-degree majority carries the set.
    """
    if delta <= math.e:
        return None, 0.0
    t = 2 * delta * math.log(delta) / math.log(math.log(delta))
    if t <= 1:
        return t, 0.0
    return t, math.log(t) / t


def average_degree(g: Graph, S: Iterable[int]) -> float:
    """Mean degree in ``G`` of the members of ``S``."""
    S = list(S)
    return sum(g.degree(v) for v in S) / len(S) if S else 0.0


def induced_average_degree(g: Graph, S: Iterable[int]) -> float:
    S = set(S)
    return sum(len(g.adj[v] & S) for v in S) / len(S) if S else 0.0


def _graph_stats(g: Graph, mode: Mode, seed: int, metrics: Metrics):
    topo = graph_topology(g)
    try:
        leader, tr = elect_leader(topo, mode, seed)
    except NetworkError as exc:
        raise PreconditionError("graph is not connected") from exc
    _charge(metrics, tr.rounds, tr.messages, tr.max_bits, "leader", tr.violations)
    tree, depth, tr = bfs_tree(topo, leader, mode, seed)
    _charge(metrics, tr.rounds, tr.messages, tr.max_bits, "bfs", tr.violations)
    if len(tree.parent) != g.n:
        raise PreconditionError("graph is not connected")
    return topo, leader, tree, depth


def bmds(g: Graph, engine: str = "kuw-sqrt", seed: int = 0, mode: Mode = CONGEST_MODE) -> AppResult:
    if g.n == 0:
        raise PreconditionError("empty graph")
    metrics = Metrics()
    topo, _, tree, _ = _graph_stats(g, mode, seed, metrics)
    total, tr = converge_sum(topo, tree, {v: g.degree(v) for v in range(g.n)}, mode, seed)
    _charge(metrics, tr.rounds, tr.messages, tr.max_bits, "degree", tr.violations)
    delta = total / g.n
    t, p = bmds_parameters(delta)
    marked = set()
    for v in range(g.n):
        if g.degree(v) <= 2 * delta:
            marked.add(v)
        elif node_rng(seed, "bmds", v).random() < p:
            marked.add(v)
    # one round: marked nodes announce themselves
    _charge(metrics, 1, sum(g.degree(v) for v in marked), 1, "mark")
    marked |= {v for v in range(g.n) if v not in marked and not g.adj[v] & marked}
    if not is_dominating(g, marked):
        raise AssertionError("marked set does not dominate")
    inner = rmds(g, marked, engine, sub_seed(seed, "rmds"), mode)
    metrics.add(inner.metrics)
    M = inner.dominating_set
    info = {"engine": engine, "delta": delta, "t": t, "p": p, "marked": len(marked),
            "average_degree": average_degree(g, M),
            "induced_average_degree": induced_average_degree(g, M)}
    return AppResult("bmds", M, metrics, info)


# -- MCDS ---------------------------------------------------------------------------

@dataclass
class LevelHypergraph:
    """Servers are level ``i-1`` nodes; clients are super-nodes (the level-``i``
    part of a component of ``G[M]``) and level-``i`` nodes that ``M`` does not
    yet dominate. A client's edge holds every server adjacent to it."""

    level: int
    servers: list[int]
    clients: list[frozenset[int]]
    super_nodes: list[frozenset[int]]
    edges: list[frozenset[int]]

    def hypergraph(self):
        idx = {s: k for k, s in enumerate(self.servers)}
        return build(len(self.servers), [[idx[s] for s in e] for e in self.edges],
                     allow_duplicates=True)


def level_hypergraph(g: Graph, level: dict[int, int], i: int, M: set[int],
                     comp: dict[int, int]) -> LevelHypergraph:
    servers = sorted(v for v, l in level.items() if l == i - 1)
    groups: dict[int, set[int]] = {}
    for v in M:
        if level[v] == i:
            groups.setdefault(comp[v], set()).add(v)
    supers = [frozenset(groups[k]) for k in sorted(groups)]
    plain = [frozenset({v}) for v, l in sorted(level.items())
             if l == i and v not in M and not g.adj[v] & M]
    clients = supers + plain
    edges = []
    for c in clients:
        e = set()
        for v in c:
            e |= {w for w in g.adj[v] if level[w] == i - 1}
        edges.append(frozenset(e))
    return LevelHypergraph(i, servers, clients, supers, edges)


def _components(g: Graph, S: set[int]) -> dict[int, int]:
    label: dict[int, int] = {}
    for s in sorted(S):
        if s in label:
            continue
        label[s] = s
        stack = [s]
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if w in S and w not in label:
                    label[w] = s
                    stack.append(w)
    return label


def _component_depth(g: Graph, S: set[int], comp: dict[int, int]) -> int:
    """Largest hop distance from a component's leader (its largest id)."""
    best = 0
    leaders: dict[int, int] = {}
    for v in S:
        leaders[comp[v]] = max(leaders.get(comp[v], v), v)
    for ld in leaders.values():
        dist = {ld: 0}
        frontier = [ld]
        while frontier:
            nxt = []
            for u in frontier:
                for w in g.adj[u]:
                    if w in S and w not in dist:
                        dist[w] = dist[u] + 1
                        nxt.append(w)
            frontier = nxt
        best = max(best, max(dist.values()))
    return best


def check_level_invariant(g: Graph, level: dict[int, int], i: int, M: set[int]) -> None:
    """After levels ``i, i-1``: levels ``>= i`` are dominated and every component
    of ``M`` reaches level ``i-1``."""
    for v, l in level.items():
        if l >= i and v not in M and not g.adj[v] & M:
            raise AssertionError(f"level {l} vertex {v} undominated after level {i}")
    comp = _components(g, M)
    touching = {comp[v] for v in M if level[v] == i - 1}
    for v in M:
        if comp[v] not in touching:
            raise AssertionError(f"component of {v} does not reach level {i - 1}")


def mcds(g: Graph, engine: str = "dim-reduced", seed: int = 0, mode: Mode = CONGEST_MODE) -> AppResult:
    metrics = Metrics()
    if g.n == 1:
        return AppResult("mcds", frozenset({0}), metrics, {"levels": 0})
    topo, leader, tree, k = _graph_stats(g, mode, seed, metrics)
    level = dict(tree.level)
    M: set[int] = set()
    per_level = []
    for i in range(k, 0, -1):
        labels, tr = connected_components(topo, M, mode, sub_seed(seed, "cc", i),
                                          charge_quoted=True, diameter=k)
        _charge(metrics, tr.rounds, tr.messages, tr.max_bits, "components", tr.violations)
        # domination flags and component labels are folded up the BFS tree and back
        _charge(metrics, 2 * k, 2 * (g.n - 1), 1, "termination")
        if M and len(set(labels.values())) == 1 and is_dominating(g, M):
            break
        comp = labels
        lh = level_hypergraph(g, level, i, M, comp)
        if not lh.clients:
            check_level_invariant(g, level, i, M)
            continue
        res = solve(lh.hypergraph(), engine, sub_seed(seed, "mis", i), "sc", mode)
        depth = _component_depth(g, M, comp) if lh.super_nodes else 0
        # each engine round is relayed to and from the component leaders
        relay = res.metrics.rounds * 2 * depth
        _charge(metrics, res.metrics.rounds + relay, res.metrics.messages, res.metrics.max_bits,
                "level-mis", res.metrics.violations)
        O = {lh.servers[s] for s in range(len(lh.servers)) if s not in res.independent_set}
        M |= O
        check_level_invariant(g, level, i, M)
        per_level.append({"level": i, "clients": len(lh.clients), "super_nodes": len(lh.super_nodes),
                          "added": len(O), "relay_rounds": relay})
    return AppResult("mcds", frozenset(M), metrics, {"leader": leader, "levels": k,
                                                      "per_level": per_level})


__all__ = ["AppResult", "LevelHypergraph", "NetworkError", "PreconditionError", "average_degree",
           "bmds", "bmds_parameters", "check_level_invariant", "induced_average_degree",
           "level_hypergraph", "mcds", "rmds"]
