"""Linial-Saks style network decomposition run over the hypergraph network.

Each color iteration lets every still-unclustered hypernode ``y`` draw a
radius ``r_y`` and flood its id; a hypernode ``v`` adopts the largest id
``C(v)`` that reached it and joins ``S_{C(v)}`` only if it lies strictly
inside that radius. Every node that forwards ``y``'s id pulls itself, its
neighbours and its links into the container ``G_y``.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field

from .hypergraph import Hypergraph
from .netsim import LOCAL, SC, Mode, Network, Topology, node_rng
from .netsim.engine import CONGEST_MODE

# Frozen after the n = 64 calibration (see calibrate_constants): observed
# ratios there were 4.0 and 0.05; the margin on C_E covers small n, where
# log^3 n is tiny but a link still sits in one container per color.
C_D = 6.0
C_E = 1.0


class DecompositionTimeout(RuntimeError):
    def __init__(self, unassigned: list[int], colors: int):
        super().__init__(f"{len(unassigned)} hypernodes unassigned after {colors} colors")
        self.unassigned = unassigned
        self.colors = colors


@dataclass
class Cluster:
    color: int
    center: int
    members: frozenset[int]
    nodes: frozenset[int]
    links: frozenset[tuple[int, int]]
    parent: dict[int, int | None] = field(default_factory=dict)

    def depth(self) -> int:
        best = 0
        for v in self.nodes:
            d = 0
            while self.parent.get(v) is not None:
                v = self.parent[v]
                d += 1
            best = max(best, d)
        return best


@dataclass
class Decomposition:
    n: int
    representation: str
    clusters: list[Cluster]
    rounds: int = 0

    @property
    def num_colors(self) -> int:
        return max((c.color for c in self.clusters), default=0)

    def cluster_of(self) -> dict[int, int]:
        return {v: i for i, c in enumerate(self.clusters) for v in c.members}

    def by_color(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for i, c in enumerate(self.clusters):
            out.setdefault(c.color, []).append(i)
        return dict(sorted(out.items()))

    def link_multiplicity(self) -> Counter:
        cnt: Counter = Counter()
        for c in self.clusters:
            cnt.update(c.links)
        return cnt

    def to_json(self) -> str:
        hist = Counter(self.link_multiplicity().values())
        return json.dumps({
            "sets": [{"color": c.color, "center": c.center, "members": sorted(c.members)}
                     for c in self.clusters],
            "link_multiplicity_histogram": {str(k): hist[k] for k in sorted(hist)},
        }, sort_keys=True)


def radius_sampler(n: int):
    """Truncated geometric radius law on ``1..B`` with ``B = ceil(log2 n)``."""
    B = max(1, math.ceil(math.log2(n))) if n > 1 else 1
    q = n ** (-1.0 / B) if n > 1 else 0.0

    def draw(rng) -> int:
        j = 1
        while j < B and rng.random() < q:
            j += 1
        return j

    return B, draw


def _link(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class _Container:
    __slots__ = ("nodes", "links", "parent")

    def __init__(self, center: int):
        self.nodes = {center}
        self.links: set[tuple[int, int]] = set()
        self.parent: dict[int, int | None] = {center: None}

    def forward(self, v: int, nbrs) -> None:
        self.nodes.add(v)
        for w in nbrs:
            self.nodes.add(w)
            self.links.add(_link(v, w))


def linial_saks(net: Network, seed: int = 0, max_colors: int | None = None) -> Decomposition:
    """Decompose the hypernodes of ``net``'s topology; rounds are charged to ``net``."""
    topo = net.topo
    n = topo.n
    hop = 2 if topo.representation == SC else 1
    B, draw = radius_sampler(n)
    if max_colors is None:
        max_colors = 50 * B
    unassigned = set(range(n))
    clusters: list[Cluster] = []
    start = net.metrics.rounds
    prev_phase, net.phase = net.phase, "decomposition"
    color = 0
    while unassigned:
        color += 1
        if color > max_colors:
            net.phase = prev_phase
            raise DecompositionTimeout(sorted(unassigned), color - 1)
        radius = {y: draw(node_rng(seed, "radius", color, y)) for y in sorted(unassigned)}
        if net.mode.regime == LOCAL:
            center, within, conts = _flood_all(net, radius, hop, B)
        else:
            center, within, conts = _flood_subiterations(net, radius, hop, B)
        groups: dict[int, set[int]] = {}
        for v in sorted(unassigned):
            y = center.get(v)
            if y is not None and within.get(v, False):
                groups.setdefault(y, set()).add(v)
        for y in sorted(groups):
            c = conts[y]
            clusters.append(Cluster(color, y, frozenset(groups[y]), frozenset(c.nodes),
                                    frozenset(c.links), dict(c.parent)))
            unassigned -= groups[y]
    net.phase = prev_phase
    return Decomposition(n, topo.representation, clusters, net.metrics.rounds - start)


def _flood_subiterations(net: Network, radius: dict[int, int], hop: int, B: int):
    """CONGEST schedule: one sub-iteration per radius value, max-id flooding."""
    n = net.topo.n
    conts: dict[int, _Container] = {y: _Container(y) for y in radius}
    best_le: dict[int, dict[int, int]] = {}
    best_lt: dict[int, dict[int, int]] = {}
    for j in range(1, B + 1):
        cur: dict[int, int] = {}
        sources = [y for y, r in radius.items() if r == j]
        fresh = set(sources)
        for y in sources:
            cur[y] = y
        snap_lt = {v: cur[v] for v in cur if v < n} if j == 1 else None
        for step in range(1, hop * j + 1):
            sends = []
            for v in sorted(fresh):
                y = cur[v]
                conts[y].forward(v, net.adj[v])
                sends.extend((v, w, y) for w in net.adj[v])
            inbox = net.exchange(sends)
            fresh = set()
            for w in sorted(inbox):
                for s, p in inbox[w]:
                    conts[p].parent.setdefault(w, s)
                top = max(p for _, p in inbox[w])
                if top > cur.get(w, -1):
                    cur[w] = top
                    fresh.add(w)
            if step == hop * (j - 1):
                snap_lt = {v: cur[v] for v in cur if v < n}
        best_lt[j] = snap_lt or {}
        best_le[j] = {v: cur[v] for v in cur if v < n}
    center: dict[int, int] = {}
    for j in range(1, B + 1):
        for v, y in best_le[j].items():
            if y > center.get(v, -1):
                center[v] = y
    within = {v: best_lt[radius[y]].get(v) == y for v, y in center.items()}
    return center, within, conts


def _flood_all(net: Network, radius: dict[int, int], hop: int, B: int):
    """LOCAL schedule: all centers flood ``(id, radius)`` at once."""
    n = net.topo.n
    conts: dict[int, _Container] = {y: _Container(y) for y in radius}
    dist: dict[int, dict[int, int]] = {}
    fresh: dict[int, list[int]] = {}
    for y in radius:
        dist.setdefault(y, {})[y] = 0
        fresh.setdefault(y, []).append(y)
    for step in range(1, hop * B + 1):
        sends = []
        for v in sorted(fresh):
            ids = tuple(sorted(y for y in fresh[v] if step <= hop * radius[y]))
            for y in ids:
                conts[y].forward(v, net.adj[v])
            if ids:
                sends.extend((v, w, ids) for w in net.adj[v])
        inbox = net.exchange(sends)
        fresh = {}
        for w in sorted(inbox):
            known = dist.setdefault(w, {})
            for src, ids in inbox[w]:
                for y in ids:
                    conts[y].parent.setdefault(w, src)
                    if y not in known:
                        known[y] = step
                        fresh.setdefault(w, []).append(y)
    center: dict[int, int] = {}
    within: dict[int, bool] = {}
    for v in range(n):
        reach = [y for y, d in dist.get(v, {}).items() if d <= hop * radius[y]]
        if reach:
            y = max(reach)
            center[v] = y
            within[v] = dist[v][y] <= hop * (radius[y] - 1)
    return center, within, conts


def decompose(topo: Topology, mode: Mode = CONGEST_MODE, seed: int = 0) -> Decomposition:
    return linial_saks(Network(topo, mode), seed)


# -- verification ---------------------------------------------------------------

def _log2n(n: int) -> float:
    return max(1.0, math.log2(n)) if n > 1 else 1.0


def _diameter(nodes: frozenset[int], links) -> int | None:
    adj: dict[int, list[int]] = {v: [] for v in nodes}
    for u, v in links:
        adj[u].append(v)
        adj[v].append(u)
    best = 0
    for s in nodes:
        seen = {s: 0}
        frontier = [s]
        while frontier:
            nxt = []
            for u in frontier:
                for w in adj[u]:
                    if w not in seen:
                        seen[w] = seen[u] + 1
                        nxt.append(w)
            frontier = nxt
        if len(seen) != len(nodes):
            return None
        best = max(best, max(seen.values()))
    return best


def verify_decomposition(d: Decomposition, h: Hypergraph, c_d: float = C_D,
                         c_e: float = C_E) -> list[dict]:
    """Return every violated property as a record; empty means valid."""
    out: list[dict] = []
    L = _log2n(h.n)
    owner: dict[int, int] = {}
    for i, c in enumerate(d.clusters):
        for v in c.members:
            if v in owner:
                out.append({"kind": "partition", "vertex": v, "sets": [owner[v], i]})
            owner[v] = i
    for v in range(h.n):
        if v not in owner:
            out.append({"kind": "partition", "vertex": v, "sets": []})
    for i, c in enumerate(d.clusters):
        if not c.members <= c.nodes:
            out.append({"kind": "containment", "set": i,
                        "missing": sorted(c.members - c.nodes)})
        depth = c.depth()
        if any(v not in c.parent for v in c.nodes) or depth > c_d * L:
            out.append({"kind": "reach", "set": i, "depth": depth})
        diam = _diameter(c.nodes, c.links)
        if diam is None:
            out.append({"kind": "diameter", "set": i, "diameter": None})
        elif diam > c_d * L:
            out.append({"kind": "diameter", "set": i, "diameter": diam,
                        "bound": c_d * L})
    seen_pairs = set()
    for j, e in enumerate(h.edges):
        by_color: dict[int, set[int]] = {}
        for v in e:
            if v in owner:
                by_color.setdefault(d.clusters[owner[v]].color, set()).add(owner[v])
        for col, sets in by_color.items():
            ss = sorted(sets)
            for a in range(len(ss)):
                for b in range(a + 1, len(ss)):
                    if (ss[a], ss[b]) not in seen_pairs:
                        seen_pairs.add((ss[a], ss[b]))
                        out.append({"kind": "disjointness", "color": col,
                                    "sets": [ss[a], ss[b]], "edge": j})
    bound = c_e * L ** 3
    for link, k in sorted(d.link_multiplicity().items()):
        if k > bound:
            out.append({"kind": "multiplicity", "link": list(link), "count": k,
                        "bound": bound})
    return out


def calibrate_constants(instances, representation: str = SC, seeds=range(5),
                        mode: Mode = CONGEST_MODE) -> tuple[float, float]:
    """Largest observed diameter/log2 n and multiplicity/log2^3 n ratios."""
    from .netsim import build_topology

    cd = ce = 0.0
    for h in instances:
        L = _log2n(h.n)
        topo = build_topology(h, representation)
        for s in seeds:
            d = decompose(topo, mode, s)
            for c in d.clusters:
                diam = _diameter(c.nodes, c.links) or 0
                cd = max(cd, diam / L)
            mult = max(d.link_multiplicity().values(), default=0)
            ce = max(ce, mult / L ** 3)
    return cd, ce
