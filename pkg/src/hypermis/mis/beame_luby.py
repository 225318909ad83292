"""Randomized marking MIS for hypergraphs of bounded dimension."""

from __future__ import annotations

import math
from fractions import Fraction

from ..netsim import Network, build_forest, edge_gather, node_rng
from .core import EngineTimeout, MisInstance, MisResult, Work, cleanup, commit
from .zeta import compute_zeta


def marking_probability(zeta: tuple[int, int], d: int) -> float:
    count, j = zeta
    if count == 0:
        return 1.0
    return 1.0 / (2 ** (d + 1) * count ** (1.0 / j))


def iteration_cap(n: int) -> int:
    return 50 * max(1, math.ceil(math.log2(max(2, n)))) ** 3


def run_beame_luby(net: Network, work: Work, d: int, seed: int, forest=None,
                   trace: list | None = None) -> tuple[set[int], int]:
    """Solve ``work`` in place; returns ``(M, iterations)``."""
    M: set[int] = set()
    cleanup(net, work, M)
    if not work.vertices:
        return M, 0
    if forest is None:
        forest = build_forest(net)
    cap = iteration_cap(net.topo.n)
    it = 0
    while work.vertices:
        it += 1
        if it > cap:
            raise EngineTimeout("beame-luby", cap, M)
        prof = compute_zeta(net, work, d, forest)
        p = marking_probability(prof.zeta, d)
        if trace is not None:
            trace.append({"iteration": it, "zeta": prof.zeta, "p": p})
        marked = {v for v in sorted(work.vertices) if node_rng(seed, "mark", it, v).random() < p}
        full = edge_gather(net, work.edges, {v: v in marked for e in work.edges for v in e.members},
                           lambda vals: all(vals.values()))
        for e, f in zip(work.edges, full):
            if f:
                marked -= e.members
        commit(net, work, M, marked)
        cleanup(net, work, M)
    return M, it


def beame_luby_mis(inst: MisInstance, d: int | None = None, seed: int = 0) -> MisResult:
    """``d`` defaults to the instance dimension (at least 2)."""
    if d is None:
        d = max(2, inst.dim)
    if inst.dim > d:
        raise ValueError(f"instance dimension {inst.dim} exceeds d={d}")
    net = inst.network()
    net.phase = "beame-luby"
    trace: list = []
    M, it = run_beame_luby(net, Work.of(inst.vertices, inst.edges), d, seed, trace=trace)
    return MisResult(frozenset(M), net.metrics.rounds, it, net.metrics,
                     {"d": d, "first_p": str(Fraction(trace[0]["p"]).limit_denominator(10 ** 6))
                      if trace else None})
