"""Shared plumbing for the MIS engines: instances, results, the working
hypergraph and the cleanup pass every engine runs between iterations."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from ..hypergraph import Hypergraph, SubHypergraphView
from ..netsim import SC, CONGEST_MODE, Metrics, Mode, Network, WEdge, build_topology, edge_gather
from ..netsim.engine import REPR_ALIASES


class EngineTimeout(RuntimeError):
    """An iteration cap was hit; ``partial`` holds the set built so far."""

    def __init__(self, engine: str, iterations: int, partial: Iterable[int], context: str = ""):
        msg = f"{engine}: iteration cap {iterations} exceeded"
        if context:
            msg += f" ({context})"
        super().__init__(msg)
        self.engine = engine
        self.iterations = iterations
        self.partial = frozenset(partial)
        self.context = context


@dataclass(frozen=True)
class MisInstance:
    """The sub-hypergraph ``H'`` to solve plus the host network it lives on."""

    host: Hypergraph
    vertices: frozenset[int]
    edges: tuple[WEdge, ...]
    representation: str = SC
    mode: Mode = CONGEST_MODE

    @classmethod
    def full(cls, h: Hypergraph, representation: str = SC, mode: Mode = CONGEST_MODE) -> "MisInstance":
        rep = REPR_ALIASES.get(representation, representation)
        return cls(h, frozenset(range(h.n)),
                   tuple(WEdge(i, frozenset(e)) for i, e in enumerate(h.edges)), rep, mode)

    @classmethod
    def from_view(cls, view: SubHypergraphView, representation: str = SC,
                  mode: Mode = CONGEST_MODE) -> "MisInstance":
        rep = REPR_ALIASES.get(representation, representation)
        return cls(view.base, view.kept_vertices,
                   tuple(WEdge(i, frozenset(view.base.edges[i])) for i in view.kept_edges), rep, mode)

    @cached_property
    def topology(self):
        return build_topology(self.host, self.representation)

    def network(self) -> Network:
        return Network(self.topology, self.mode)

    def family(self) -> tuple[frozenset[int], list[frozenset[int]]]:
        return self.vertices, [e.members for e in self.edges]

    @property
    def dim(self) -> int:
        return max((len(e.members) for e in self.edges), default=0)


@dataclass
class MisResult:
    independent_set: frozenset[int]
    rounds: int
    iterations: int
    metrics: Metrics = field(default_factory=Metrics)
    extra: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        d = self.metrics.as_dict()
        d.update({"independent_set": sorted(self.independent_set), "iterations": self.iterations})
        d.update(self.extra)
        return d


@dataclass
class Work:
    """Mutable working hypergraph: live vertices and live edges."""

    vertices: set[int]
    edges: list[WEdge]

    @classmethod
    def of(cls, vertices: Iterable[int], edges: Iterable[WEdge]) -> "Work":
        vs = set(vertices)
        return cls(vs, [e for e in edges if e.members <= vs])

    def copy(self) -> "Work":
        return Work(set(self.vertices), list(self.edges))

    @property
    def dim(self) -> int:
        return max((len(e.members) for e in self.edges), default=0)

    def incidence(self) -> dict[int, list[WEdge]]:
        inc: dict[int, list[WEdge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            for v in e.members:
                inc[v].append(e)
        return inc

    def max_degree(self) -> int:
        return max((len(x) for x in self.incidence().values()), default=0)


def commit(net: Network, work: Work, M: set[int], joined: set[int]) -> None:
    """Move ``joined`` into ``M`` and shrink every edge by it; each edge's
    members learn the new member list."""
    if not joined:
        return
    touched = [e for e in work.edges if e.members & joined]
    shrunk = edge_gather(net, touched, {v: v in joined for e in touched for v in e.members},
                         lambda vals: tuple(sorted(v for v, j in vals.items() if not j)))
    new = {e.carrier: WEdge(e.carrier, frozenset(s)) for e, s in zip(touched, shrunk)}
    work.edges = [new.get(e.carrier, e) for e in work.edges]
    M |= joined
    work.vertices -= joined


def reject(net: Network, work: Work, removed: set[int]) -> None:
    """Drop ``removed`` vertices and every edge containing one of them."""
    if not removed:
        return
    work.vertices -= removed
    hit = [e for e in work.edges if e.members & removed]
    if hit:
        edge_gather(net, hit, {v: v in removed for e in hit for v in e.members}, any)
    work.edges = [e for e in work.edges if not e.members & removed]


def cleanup(net: Network, work: Work, M: set[int]) -> None:
    """Drop edges properly containing another edge (and all but the lowest-id
    copy of duplicates), reject vertices sitting in singleton edges, then
    move every isolated vertex into ``M``.

    Each member reports ``(edge id, size)`` of its incident edges to every
    incident edge; ``e`` contains ``f`` exactly when all ``|f|`` members of
    ``f`` report ``f`` to ``e``.
    """
    if work.edges:
        inc = work.incidence()
        values = {v: tuple(sorted((f.carrier, len(f.members)) for f in inc[v])) for v in inc}
        singles = {next(iter(e.members)) for e in work.edges if len(e.members) == 1}

        def redundant(e: WEdge, vals: dict) -> bool:
            size = len(vals)
            seen: dict[tuple[int, int], int] = {}
            for reports in vals.values():
                for key in reports:
                    seen[key] = seen.get(key, 0) + 1
            for (fid, fsize), cnt in seen.items():
                if cnt == fsize and (fsize < size or (fsize == size and fid < e.carrier)):
                    return True
            return False

        drop = edge_gather(net, work.edges, values, redundant, keyed=True)
        work.edges = [e for e, dr in zip(work.edges, drop) if not dr]
        reject(net, work, singles)
    covered: set[int] = set()
    for e in work.edges:
        covered |= e.members
    iso = work.vertices - covered
    M |= iso
    work.vertices -= iso
