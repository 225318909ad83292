"""Random-priority MIS: a vertex joins when it is not the top of any edge."""

from __future__ import annotations

import math
from typing import Iterable

from ..netsim import Network, edge_gather, node_rng
from .core import EngineTimeout, MisInstance, MisResult, Work, commit, reject

Key = tuple[int, int]


def kuw_mark(vertices: Iterable[int], edges: Iterable[frozenset[int]],
             key: dict[int, Key]) -> tuple[set[int], set[int]]:
    """One round of the rule, computed centrally: ``(marked, eliminated)``."""
    edges = list(edges)
    tops = {max(e, key=key.__getitem__) for e in edges}
    marked = set(vertices) - tops
    elim = set()
    for e in edges:
        rest = e - marked
        if len(rest) == 1:
            elim |= rest
    return marked, elim


def sequential_prefix(vertices: Iterable[int], edges: Iterable[frozenset[int]],
                      key: dict[int, Key]) -> set[int]:
    """Greedy in ascending priority order, stopping at the first refusal."""
    edges = list(edges)
    taken: set[int] = set()
    for v in sorted(vertices, key=key.__getitem__):
        grown = taken | {v}
        if any(e <= grown for e in edges if v in e):
            break
        taken = grown
    return taken


def iteration_cap(n: int) -> int:
    return 50 * max(1, math.ceil(math.sqrt(n)))


def run_kuw(net: Network, work: Work, seed: int, forced: dict[int, int] | None = None,
            rounds_log: list | None = None) -> tuple[set[int], int]:
    n = net.topo.n
    hi = max(1, n * n)
    cap = iteration_cap(n)
    M: set[int] = set()
    it = 0
    while work.vertices:
        it += 1
        if it > cap:
            raise EngineTimeout("kuw-sqrt", cap, M)
        if forced is not None and it == 1:
            key = {v: (forced[v], v) for v in work.vertices}
        else:
            key = {v: (node_rng(seed, "kuw", it, v).randint(1, hi), v) for v in work.vertices}
        tops = edge_gather(net, work.edges, key, lambda vals: max(vals, key=vals.__getitem__))
        top_set = set(tops)
        marked = {v for v in work.vertices if v not in top_set}
        lone = edge_gather(net, work.edges, {v: v in marked for e in work.edges for v in e.members},
                           lambda vals: (lambda r: r[0] if len(r) == 1 else -1)(
                               [v for v, mk in vals.items() if not mk]))
        elim = {x for x in lone if x >= 0}
        if rounds_log is not None:
            rounds_log.append({"iteration": it, "marked": sorted(marked), "eliminated": sorted(elim),
                               "key": dict(key)})
        commit(net, work, M, marked)
        reject(net, work, elim)
    return M, it


def kuw_sqrt_mis(inst: MisInstance, seed: int = 0, forced: dict[int, int] | None = None) -> MisResult:
    """``forced`` pins the first-round priorities (used to replay hand traces)."""
    net = inst.network()
    net.phase = "kuw-sqrt"
    log: list = []
    M, it = run_kuw(net, Work.of(inst.vertices, inst.edges), seed, forced, log)
    return MisResult(frozenset(M), net.metrics.rounds, it, net.metrics,
                     {"first_round": {k: v for k, v in log[0].items() if k != "key"} if log else None})
