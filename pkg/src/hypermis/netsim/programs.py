"""Reusable node programs: leader election, BFS tree, tree aggregation,
broadcast and label-propagation components."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

from .engine import CONGEST_MODE, Mode, NetworkError, RunTrace, Topology, run


@dataclass
class Tree:
    root: int
    parent: dict[int, int | None]
    level: dict[int, int]
    children: dict[int, list[int]] = field(default_factory=dict)

    def __post_init__(self):
        if not self.children:
            self.children = {v: [] for v in self.parent}
            for v, p in self.parent.items():
                if p is not None:
                    self.children[p].append(v)
            for c in self.children.values():
                c.sort()

    @property
    def depth(self) -> int:
        return max(self.level.values(), default=0)

    @property
    def nodes(self) -> list[int]:
        return sorted(self.parent)


# -- leader election -------------------------------------------------------------

class MaxIdFlood:
    """Every node floods the largest id it has seen; quiescence ends the run."""

    def init(self, node, role, knowledge, rng):
        return {"id": node, "best": node, "fresh": True, "nbrs": None}

    def step(self, state, rnd, inbox):
        for _, val in inbox:
            if val > state["best"]:
                state["best"] = val
                state["fresh"] = True
        out = []
        if state["fresh"]:
            out = [(w, state["best"]) for w in state["nbrs"]]
            state["fresh"] = False
        return state, out, True, state["best"]


class _Bound:
    """Wrap a program so every node learns its neighbour list at init."""

    def __init__(self, program, topo: Topology, members: Iterable[int] | None = None):
        self.program = program
        self.topo = topo
        self.members = None if members is None else frozenset(members)

    def init(self, node, role, knowledge, rng):
        st = self.program.init(node, role, knowledge, rng)
        nb = self.topo.adj[node]
        if self.members is not None:
            nb = tuple(w for w in nb if w in self.members)
        st["nbrs"] = nb
        return st

    def step(self, state, rnd, inbox):
        return self.program.step(state, rnd, inbox)


def elect_leader(topo: Topology, mode: Mode = CONGEST_MODE, seed: int = 0,
                 nodes: Iterable[int] | None = None) -> tuple[int, RunTrace]:
    """Max-id flooding; every node outputs the id of the elected leader."""
    trace = run(topo, _Bound(MaxIdFlood(), topo, nodes), mode, seed, nodes=nodes)
    leaders = set(trace.outputs.values())
    if trace.timed_out or len(leaders) != 1:
        raise NetworkError(f"leader election did not converge (candidates {sorted(leaders)})")
    return leaders.pop(), trace


# -- BFS tree ---------------------------------------------------------------------

class BFSProgram:
    """BFS from ``root``; then max level is convergecast and re-broadcast.

    Messages: ("L", level) announce, ("C",) child ack, ("U", x) report up,
    ("D", x) final broadcast. Output per node: (level, parent, max level).
    """

    def __init__(self, root: int):
        self.root = root

    def init(self, node, role, knowledge, rng):
        return {"id": node, "level": None, "parent": None, "children": [],
                "ready_at": None, "reports": {}, "sent_up": False, "done": False,
                "maxlevel": None, "nbrs": None}

    def step(self, st, rnd, inbox):
        out = []
        if rnd == 1 and st["id"] == self.root:
            st["level"] = 0
            st["ready_at"] = 3
            out += [(w, ("L", 0)) for w in st["nbrs"]]
        announce = [(src, p[1]) for src, p in inbox if p[0] == "L"]
        if announce and st["level"] is None:
            src, lvl = min(announce)
            st["level"] = lvl + 1
            st["parent"] = src
            st["ready_at"] = rnd + 2
            out.append((src, ("C",)))
            out += [(w, ("L", st["level"])) for w in st["nbrs"] if w != src]
        for src, p in inbox:
            if p[0] == "C":
                st["children"].append(src)
            elif p[0] == "U":
                st["reports"][src] = p[1]
            elif p[0] == "D":
                st["maxlevel"] = p[1]
                out += [(c, ("D", p[1])) for c in sorted(st["children"])]
                st["done"] = True
        if (st["level"] is not None and not st["sent_up"] and rnd >= st["ready_at"]
                and len(st["reports"]) == len(st["children"])):
            best = max([st["level"]] + list(st["reports"].values()))
            st["sent_up"] = True
            if st["parent"] is None:
                st["maxlevel"] = best
                st["done"] = True
                out += [(c, ("D", best)) for c in sorted(st["children"])]
            else:
                out.append((st["parent"], ("U", best)))
        halted = st["level"] is None or st["done"]
        output = None
        if st["level"] is not None:
            output = (st["level"], st["parent"], st["maxlevel"])
        return st, out, halted, output


def bfs_tree(topo: Topology, root: int, mode: Mode = CONGEST_MODE, seed: int = 0,
             nodes: Iterable[int] | None = None) -> tuple[Tree, int, RunTrace]:
    """Return the BFS tree, the max level (known at every node) and the trace.

    Nodes not reached from ``root`` are absent from the tree; callers that
    need a spanning tree check ``len(tree.parent)``.
    """
    trace = run(topo, _Bound(BFSProgram(root), topo, nodes), mode, seed, nodes=nodes)
    parent = {v: o[1] for v, o in trace.outputs.items()}
    level = {v: o[0] for v, o in trace.outputs.items()}
    maxes = {o[2] for o in trace.outputs.values()}
    if len(maxes) != 1 or None in maxes:
        raise NetworkError("max level was not disseminated to every reached node")
    return Tree(root, parent, level), maxes.pop(), trace


def unreached(topo: Topology, tree: Tree, nodes: Iterable[int] | None = None) -> list[int]:
    pool = range(topo.size) if nodes is None else nodes
    return sorted(v for v in pool if v not in tree.parent)


# -- convergecast / broadcast ------------------------------------------------------

class Convergecast:
    def __init__(self, tree: Tree, values: dict[int, Any], op: Callable[[Any, Any], Any]):
        self.tree = tree
        self.values = values
        self.op = op

    def init(self, node, role, knowledge, rng):
        return {"id": node, "acc": self.values[node], "got": 0, "sent": False}

    def step(self, st, rnd, inbox):
        for _, val in inbox:
            st["acc"] = self.op(st["acc"], val)
            st["got"] += 1
        out = []
        v = st["id"]
        if not st["sent"] and st["got"] == len(self.tree.children[v]):
            st["sent"] = True
            p = self.tree.parent[v]
            if p is not None:
                out.append((p, st["acc"]))
                return st, out, True, None
            return st, out, True, st["acc"]
        return st, out, st["sent"], None


class Broadcast:
    def __init__(self, tree: Tree, value: Any):
        self.tree = tree
        self.value = value

    def init(self, node, role, knowledge, rng):
        return {"id": node, "val": self.value if node == self.tree.root else None}

    def step(self, st, rnd, inbox):
        for _, val in inbox:
            st["val"] = val
        out = []
        if st["val"] is not None:
            out = [(c, st["val"]) for c in self.tree.children[st["id"]]]
        return st, out, True, st["val"]


def converge(topo: Topology, tree: Tree, values: dict[int, Any], op: Callable = max,
             mode: Mode = CONGEST_MODE, seed: int = 0) -> tuple[Any, RunTrace]:
    trace = run(topo, Convergecast(tree, values, op), mode, seed, nodes=tree.nodes)
    return trace.outputs[tree.root], trace


def converge_max(topo, tree, values, mode=CONGEST_MODE, seed=0):
    return converge(topo, tree, values, max, mode, seed)


def converge_sum(topo, tree, values, mode=CONGEST_MODE, seed=0):
    return converge(topo, tree, values, lambda a, b: a + b, mode, seed)


def broadcast(topo: Topology, tree: Tree, value: Any, mode: Mode = CONGEST_MODE,
              seed: int = 0) -> RunTrace:
    return run(topo, Broadcast(tree, value), mode, seed, nodes=tree.nodes)


# -- connected components ------------------------------------------------------------

class MinLabel:
    def init(self, node, role, knowledge, rng):
        return {"label": node, "fresh": True, "nbrs": None}

    def step(self, st, rnd, inbox):
        for _, val in inbox:
            if val < st["label"]:
                st["label"] = val
                st["fresh"] = True
        out = []
        if st["fresh"]:
            out = [(w, st["label"]) for w in st["nbrs"]]
            st["fresh"] = False
        return st, out, True, st["label"]


def connected_components(topo: Topology, active: Iterable[int], mode: Mode = CONGEST_MODE,
                         seed: int = 0, charge_quoted: bool = False,
                         diameter: int | None = None) -> tuple[dict[int, int], RunTrace]:
    """Label every active node with the minimum id of its active component.

    With ``charge_quoted`` the trace's round count is replaced by the
    ``D + ceil(sqrt(n)) * ceil(log2 n)`` cost quoted for the classical
    sub-linear components algorithm (``diameter`` supplies ``D``).
    """
    act = sorted(set(active))
    if not act:
        return {}, RunTrace()
    trace = run(topo, _Bound(MinLabel(), topo, act), mode, seed, nodes=act)
    if charge_quoted:
        n = topo.size
        d = diameter if diameter is not None else trace.rounds
        lg = max(1, math.ceil(math.log2(max(2, n))))
        trace.rounds = d + math.ceil(math.sqrt(n)) * lg
    return dict(trace.outputs), trace
