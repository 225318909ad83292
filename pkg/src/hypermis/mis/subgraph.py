"""Color-by-color solving over a network decomposition.

Sets of one color touch no common hyperedge, so their sub-instances run
concurrently, each inside its container; the per-round link loads of those
runs are merged to price the shared links.
"""

from __future__ import annotations

from typing import Callable

from ..decomposition import Cluster, Decomposition, linial_saks
from ..netsim import LOCAL, SC, Network, WEdge, edge_gather, multiplex, sub_seed
from .core import EngineTimeout, MisInstance, MisResult, Work


def _container_net(net: Network, cluster: Cluster, edges: list[WEdge]) -> Network:
    """The container plus the incidence links of the edges solved in it."""
    nodes = set(cluster.nodes)
    links = set(cluster.links)
    topo = net.topo
    for e in edges:
        if topo.representation == SC:
            c = topo.client(e.carrier)
            nodes.add(c)
            for v in e.members:
                nodes.add(v)
                links.add((v, c))
        else:
            ms = sorted(e.members)
            nodes.update(ms)
            for i, u in enumerate(ms):
                for w in ms[i + 1:]:
                    links.add((u, w))
    return net.restrict(nodes, links, record_loads=True)


def _color_edges(net: Network, inst: MisInstance, color_of: dict[int, int],
                 rejected: set[int], pending: list[WEdge], c: int) -> list[WEdge]:
    """Members report (color, rejected); an edge takes part in color ``c``
    iff it has a color-``c`` member, no later-colored member and no
    rejected member."""
    vals = {v: (color_of[v], v in rejected) for e in pending for v in e.members}
    keep = edge_gather(net, pending, vals,
                       lambda xs: all(col <= c and not r for col, r in xs.values())
                       and any(col == c for col, _ in xs.values()))
    return [e for e, k in zip(pending, keep) if k]


def orchestrate(inst: MisInstance, decomp: Decomposition, net: Network,
                solve_set: Callable[[Network, Work, int, Cluster], tuple[set[int], int]],
                seed: int) -> tuple[set[int], dict]:
    owner = decomp.cluster_of()
    color_of = {v: decomp.clusters[owner[v]].color for v in range(inst.host.n)}
    M: set[int] = set()
    rejected: set[int] = set()
    pending = list(inst.edges)
    stats = {"colors": decomp.num_colors, "sets": len(decomp.clusters), "per_color_rounds": []}
    for c, idxs in decomp.by_color().items():
        net.phase = "collect"
        edges = _color_edges(net, inst, color_of, rejected, pending, c)
        per_set: dict[int, list[WEdge]] = {t: [] for t in idxs}
        for e in edges:
            here = [v for v in e.members if color_of[v] == c]
            t = owner[here[0]]
            per_set[t].append(WEdge(e.carrier, frozenset(here)))
        subnets = []
        for t in idxs:
            cl = decomp.clusters[t]
            verts = set(cl.members) & inst.vertices
            if not verts:
                continue
            sub = _container_net(net, cl, per_set[t])
            sub.phase = "solve"
            try:
                Mt, _ = solve_set(sub, Work.of(verts, per_set[t]), sub_seed(seed, "set", c, t), cl)
            except EngineTimeout as exc:
                raise EngineTimeout(exc.engine, exc.iterations, M | exc.partial,
                                    f"color {c}, set {t} centred at {cl.center}") from exc
            M |= Mt
            rejected |= verts - Mt
            subnets.append(sub)
        cost = multiplex(subnets, net.budget)
        cost.phases = {"solve": cost.rounds}
        net.metrics.add(cost)
        stats["per_color_rounds"].append(cost.rounds)
        pending = [e for e in pending if not (e.members & rejected)]
    return M, stats


def _inner_solver(inner):
    def solve(sub: Network, work: Work, seed: int, _cluster: Cluster):
        return inner(sub, work, seed)
    return solve


def solve_subgraph_mis(inst: MisInstance, inner="kuw-sqrt", seed: int = 0) -> MisResult:
    """Decompose the host network, then solve color classes in turn."""
    from . import inner_engine

    fn = inner_engine(inner) if isinstance(inner, str) else inner
    net = inst.network()
    decomp = linial_saks(net, sub_seed(seed, "decomposition"))
    M, stats = orchestrate(inst, decomp, net, _inner_solver(fn), seed)
    return MisResult(frozenset(M), net.metrics.rounds, decomp.num_colors, net.metrics, stats)


# -- LOCAL: collect each set's sub-instance at its center -------------------------

def _greedy(vertices, edges: list[WEdge]) -> set[int]:
    taken: set[int] = set()
    for v in sorted(vertices):
        grown = taken | {v}
        if not any(v in e.members and e.members <= grown for e in edges):
            taken = grown
    return taken


def _collect_and_solve(sub: Network, work: Work, seed: int, cl: Cluster):
    """Convergecast the edge lists up the forwarding tree, solve at the
    center, send every decision back down."""
    depth: dict[int, int] = {}
    for v in cl.nodes:
        d, u = 0, v
        while cl.parent.get(u) is not None:
            u = cl.parent[u]
            d += 1
        depth[v] = d
    top = max(depth.values(), default=0)
    # edges are known to their smallest member; each node forwards what it holds
    held: dict[int, list] = {v: [] for v in cl.nodes}
    for e in work.edges:
        held[min(e.members)].append(tuple(sorted(e.members)))
    for v in work.vertices:
        held[v].append((v,))
    for lvl in range(top, 0, -1):
        layer = [v for v in cl.nodes if depth[v] == lvl]
        inbox = sub.exchange((v, cl.parent[v], tuple(held[v])) for v in layer if held[v])
        for p, msgs in inbox.items():
            for _, items in msgs:
                held[p].extend(items)
    M = _greedy(work.vertices, work.edges)
    for lvl in range(1, top + 1):
        layer = [v for v in cl.nodes if depth[v] == lvl]
        sub.exchange((cl.parent[v], v, tuple(sorted(M))) for v in layer)
    return M, 1


def local_mis(inst: MisInstance, seed: int = 0) -> MisResult:
    if inst.mode.regime != LOCAL:
        raise ValueError("local-mis runs in the LOCAL regime only")
    net = inst.network()
    decomp = linial_saks(net, sub_seed(seed, "decomposition"))
    M, stats = orchestrate(inst, decomp, net, _collect_and_solve, seed)
    return MisResult(frozenset(M), net.metrics.rounds, decomp.num_colors, net.metrics, stats)
