"""The ζ statistic that sets the Beame-Luby marking probability.

Values are kept exactly as pairs ``(count, j)`` meaning ``count ** (1/j)``;
comparing ``a^(1/j)`` with ``b^(1/k)`` reduces to ``a^k`` vs ``b^j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from ..netsim import Forest, Network, edge_gather, tree_aggregate
from .core import Work

ZERO = (0, 1)


def zeta_value(z: tuple[int, int]) -> float:
    count, j = z
    return count ** (1.0 / j) if count else 0.0


def zeta_max(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
    (x, j), (y, k) = a, b
    lhs, rhs = x ** k, y ** j
    if lhs != rhs:
        return a if lhs > rhs else b
    return min(a, b, key=lambda t: t[1])  # equal value: canonical representative


class ZetaError(ValueError):
    pass


@dataclass
class ZetaProfile:
    d: int
    per_node: dict[int, dict[int, tuple[int, int]]]  # v -> i -> zeta_i(v)
    zeta: tuple[int, int]

    @property
    def value(self) -> float:
        return zeta_value(self.zeta)


def _counts(edge_sets: Iterable[frozenset[int]]) -> dict[tuple[frozenset[int], int], int]:
    """Number of size-``i`` edges containing each proper non-empty subset ``x``."""
    cnt: dict[tuple[frozenset[int], int], int] = {}
    for e in edge_sets:
        i = len(e)
        members = sorted(e)
        for r in range(1, i):
            for x in combinations(members, r):
                key = (frozenset(x), i)
                cnt[key] = cnt.get(key, 0) + 1
    return cnt


def local_zeta(incident: Iterable[frozenset[int]], v: int, d: int) -> dict[int, tuple[int, int]]:
    """``zeta_i(v)`` for ``i = 2..d`` from the member lists of ``v``'s edges."""
    out = {i: ZERO for i in range(2, d + 1)}
    for (x, i), c in _counts(incident).items():
        if v in x and i <= d:
            out[i] = zeta_max(out[i], (c, i - len(x)))
    return out


def compute_zeta(net: Network, work: Work, d: int, forest: Forest) -> ZetaProfile:
    """Every node learns its incident member lists, evaluates ``zeta_i(v)``
    locally, and the maximum is aggregated over ``forest``."""
    if work.dim > d:
        raise ZetaError(f"working dimension {work.dim} exceeds d={d}")
    lists = edge_gather(net, work.edges, {v: v for e in work.edges for v in e.members},
                        lambda vals: tuple(sorted(vals)))
    incident: dict[int, list[frozenset[int]]] = {v: [] for v in work.vertices}
    for members in lists:
        fs = frozenset(members)
        for v in members:
            incident[v].append(fs)
    per_node = {v: local_zeta(incident[v], v, d) for v in sorted(work.vertices)}
    best = {}
    for v, zs in per_node.items():
        z = ZERO
        for val in zs.values():
            z = zeta_max(z, val)
        best[v] = z
    agg = tree_aggregate(net, forest, best, zeta_max)
    zs = [agg[v] for v in work.vertices if agg.get(v) is not None]
    z = ZERO
    for val in zs:
        z = zeta_max(z, val)
    return ZetaProfile(d, per_node, z)


def zeta_bruteforce(vertices: Iterable[int], edges: Iterable[Iterable[int]], d: int) -> float:
    """Direct evaluation: every ``x`` with ``0 < |x| < i`` and every disjoint
    ``y`` of size ``i - |x|``, counting those with ``x | y`` an edge."""
    vs = sorted(set(vertices))
    es = {frozenset(e) for e in edges}
    best = 0.0
    for i in range(2, d + 1):
        for r in range(1, i):
            j = i - r
            for x in combinations(vs, r):
                xs = set(x)
                rest = [v for v in vs if v not in xs]
                n_j = sum(1 for y in combinations(rest, j) if xs.union(y) in es)
                if n_j:
                    best = max(best, n_j ** (1.0 / j))
    return best
