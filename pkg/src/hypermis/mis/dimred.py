"""Dimension reduction by halving samples around an inner MIS engine."""

from __future__ import annotations

import math
from typing import Callable

from ..netsim import Network, build_forest, edge_gather, node_rng, sub_seed, tree_aggregate
from .core import EngineTimeout, MisInstance, MisResult, Work, cleanup, commit, reject

Inner = Callable[[Network, Work, int], tuple[set[int], int]]


class DimensionRetryError(RuntimeError):
    pass


def dimension_threshold(n: int, m: int) -> float:
    return 3 * math.log2(max(2, n + m))


def run_dim_reduced(net: Network, work: Work, inner: Inner, seed: int,
                    events: list | None = None, retries: int = 20) -> tuple[set[int], int]:
    """``events`` (if given) receives one record per sampling attempt."""
    T = dimension_threshold(len(work.vertices), len(work.edges))
    forest = build_forest(net)
    cap = 50 * max(1, math.ceil(math.log2(max(2, net.topo.n))))
    M: set[int] = set()
    it = 0
    while True:
        cleanup(net, work, M)
        if not work.vertices:
            return M, it
        it += 1
        if it > cap:
            raise EngineTimeout("dim-reduced", cap, M)
        for attempt in range(retries + 1):
            S = {v for v in sorted(work.vertices)
                 if node_rng(seed, "half", it, attempt, v).random() < 0.5}
            inside = edge_gather(net, work.edges, {v: v in S for e in work.edges for v in e.members},
                                 lambda vals: len(vals) if all(vals.values()) else 0)
            local = {v: 0 for v in work.vertices}
            for e, k in zip(work.edges, inside):
                for v in e.members:
                    local[v] = max(local[v], k)
            agg = tree_aggregate(net, forest, local, max)
            dim = max((agg[v] for v in work.vertices), default=0)
            if events is not None:
                events.append({"iteration": it, "attempt": attempt, "dim": dim,
                               "threshold": T, "n": len(work.vertices), "m": len(work.edges)})
            if dim <= T:
                break
        else:
            raise DimensionRetryError(f"sampled dimension stayed above {T:.2f} after {retries} retries")
        sub = Work.of(S, [e for e, k in zip(work.edges, inside) if k])
        MS, _ = inner(net, sub, sub_seed(seed, "inner", it))
        rejected = S - MS
        reject(net, work, rejected)
        commit(net, work, M, MS)


def dim_reduced_mis(inst: MisInstance, inner: Inner | str = "kuw-sqrt", seed: int = 0,
                    events: list | None = None) -> MisResult:
    from . import inner_engine

    fn = inner_engine(inner) if isinstance(inner, str) else inner
    net = inst.network()
    net.phase = "dim-reduced"
    log: list = [] if events is None else events
    M, it = run_dim_reduced(net, Work.of(inst.vertices, inst.edges), fn, seed, log)
    return MisResult(frozenset(M), net.metrics.rounds, it, net.metrics,
                     {"sampling_events": len(log),
                      "oversize_events": sum(1 for e in log if e["dim"] > e["threshold"])})
