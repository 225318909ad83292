"""Turán-style sampling and the recursive algorithm built on it."""

from __future__ import annotations

import math

from ..netsim import Network, WEdge, build_forest, edge_gather, node_rng, sub_seed, tree_aggregate
from .beame_luby import run_beame_luby
from .core import EngineTimeout, MisInstance, MisResult, Work, cleanup


def turan_probability(d: int, delta_bound: float) -> float:
    if delta_bound < 1:
        raise ValueError(f"degree bound must be >= 1, got {delta_bound}")
    if d < 2:
        raise ValueError("d must be at least 2")
    return (1.0 / delta_bound) ** (1.0 / (d - 1))


def turan_expectation(n: int, d: int, delta_bound: float) -> float:
    """Lower bound on the expected size of the sample."""
    return n / delta_bound ** (1.0 / (d - 1)) * (1 - 1 / d)


def run_turan(net: Network, vertices, edges: list[WEdge], d: int, delta_bound,
              seed: int, tag=()) -> set[int]:
    """Sample, then every fully sampled edge drops its largest-id vertex.

    ``delta_bound`` is a number or a per-vertex mapping (each component
    uses the bound its own aggregation produced).
    """
    if isinstance(delta_bound, dict):
        p = {v: turan_probability(d, delta_bound[v]) for v in vertices}
    else:
        q = turan_probability(d, delta_bound)
        p = {v: q for v in vertices}
    S = {v for v in sorted(vertices) if node_rng(seed, "turan", *tag, v).random() < p[v]}
    live = [e for e in edges if e.members & S]
    hit = edge_gather(net, live, {v: v in S for e in live for v in e.members},
                      lambda vals: max(vals) if all(vals.values()) else -1)
    return S - {x for x in hit if x >= 0}


def turan_sample(inst: MisInstance, d: int, delta_bound: float, seed: int = 0) -> frozenset[int]:
    small = [e for e in inst.edges if len(e.members) < d]
    if small:
        raise ValueError(f"edge {sorted(small[0].members)} has fewer than d={d} members")
    return frozenset(run_turan(inst.network(), inst.vertices, list(inst.edges), d, delta_bound, seed))


def recursion_cap(delta: int, d: int) -> int:
    return 50 * max(1, math.ceil(max(1, delta) ** (1.0 / (d - 1))))


def run_delta_eps(net: Network, work: Work, d: int, seed: int) -> tuple[set[int], int]:
    M: set[int] = set()
    forest = build_forest(net)
    cap = recursion_cap(work.max_degree(), d)
    level = 0
    while True:
        level += 1
        if level > cap:
            raise EngineTimeout("turan-recursive", cap, M)
        cleanup(net, work, M)
        if not work.vertices:
            return M, level
        big = [e for e in work.edges if len(e.members) >= d]
        deg: dict[int, int] = {}
        for e in big:
            for v in e.members:
                deg[v] = deg.get(v, 0) + 1
        agg = tree_aggregate(net, forest, {v: deg.get(v, 0) for v in work.vertices}, max)
        delta = {v: max(1, agg[v]) for v in work.vertices}
        S = run_turan(net, work.vertices, big, d, delta, seed, (level,))
        inner = Work.of(S, [e for e in work.edges if e.members <= S])
        MS, _ = run_beame_luby(net, inner, max(2, d - 1), sub_seed(seed, "bl", level), forest)
        M |= MS
        # edges survive into the next level only if every sampled member joined
        status = {v: (v in S, v in MS) for e in work.edges for v in e.members}
        rest = edge_gather(net, work.edges, status,
                           lambda vals: None if any(s and not j for s, j in vals.values())
                           else tuple(sorted(v for v, (s, _) in vals.items() if not s)))
        work.vertices -= S
        work.edges = [WEdge(e.carrier, frozenset(r)) for e, r in zip(work.edges, rest) if r is not None]


def delta_eps_mis(inst: MisInstance, d: int, seed: int = 0) -> MisResult:
    if d < 2:
        raise ValueError("d must be at least 2")
    net = inst.network()
    net.phase = "turan-recursive"
    M, levels = run_delta_eps(net, Work.of(inst.vertices, inst.edges), d, seed)
    return MisResult(frozenset(M), net.metrics.rounds, levels, net.metrics, {"d": d})


def d_from_eps(eps: float) -> int:
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    return 1 + math.ceil(1 / eps)
