"""Synchronous round engine with LOCAL / CONGEST bandwidth accounting."""

from __future__ import annotations

import hashlib
import json
import math
import random
from dataclasses import dataclass, field
from typing import Any, Iterable, Protocol

from ..hypergraph import Graph, Hypergraph

SERVER = "server"
CLIENT = "client"
PLAIN = "plain"

SC = "server-client"
VC = "vertex-centric"
REPR_ALIASES = {"sc": SC, "vc": VC, SC: SC, VC: VC}

LOCAL = "LOCAL"
CONGEST = "CONGEST"


class NetworkError(RuntimeError):
    pass


class BandwidthExceeded(NetworkError):
    pass


def node_rng(seed: int, *key: Any) -> random.Random:
    """Independent stream keyed by ``(seed, *key)``; independent of call order."""
    digest = hashlib.blake2b(repr((seed,) + key).encode(), digest_size=8).digest()
    return random.Random(int.from_bytes(digest, "big"))


def sub_seed(seed: int, *key: Any) -> int:
    digest = hashlib.blake2b(repr(("sub", seed) + key).encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big") >> 1


def payload_bits(x: Any) -> int:
    """Wire size of a payload: integers at their binary length plus a sign bit."""
    if x is None or isinstance(x, bool):
        return 1
    if isinstance(x, int):
        return max(1, x.bit_length()) + 1
    if isinstance(x, float):
        return 64
    if isinstance(x, str):
        return 8 * max(1, len(x))
    if isinstance(x, (tuple, list, frozenset, set)):
        total = 0
        for y in x:
            if type(y) is int:
                total += max(1, y.bit_length()) + 1
            else:
                total += payload_bits(y)
        return max(1, total)
    if isinstance(x, dict):
        return max(1, sum(payload_bits(k) + payload_bits(v) for k, v in x.items()))
    raise TypeError(f"unsupported payload type {type(x).__name__}")


@dataclass(frozen=True)
class Topology:
    """Communication graph plus each node's static local knowledge.

    Server-client: nodes ``0..n-1`` are servers, ``n..n+m-1`` clients.
    Vertex-centric: nodes ``0..n-1`` linked along the server graph.
    """

    representation: str
    roles: tuple[str, ...]
    adj: tuple[tuple[int, ...], ...]
    knowledge: tuple[Any, ...]
    n: int
    m: int
    hypergraph: Hypergraph | None = None

    @property
    def size(self) -> int:
        return len(self.roles)

    @property
    def links(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.size) for v in self.adj[u] if u < v]

    def client(self, edge_index: int) -> int:
        return self.n + edge_index


def build_topology(h: Hypergraph, representation: str = SC) -> Topology:
    rep = REPR_ALIASES.get(representation)
    if rep is None:
        raise ValueError(f"unknown representation {representation!r}")
    if rep == SC:
        size = h.n + h.m
        adj: list[list[int]] = [[] for _ in range(size)]
        for j, e in enumerate(h.edges):
            for u in e:
                adj[u].append(h.n + j)
                adj[h.n + j].append(u)
        roles = (SERVER,) * h.n + (CLIENT,) * h.m
        knowledge = tuple(h.incident(u) for u in range(h.n)) + h.edges
    else:
        nb: list[set[int]] = [set() for _ in range(h.n)]
        for e in h.edges:
            for u in e:
                nb[u].update(e)
        for u in range(h.n):
            nb[u].discard(u)
        adj = [sorted(s) for s in nb]
        roles = (SERVER,) * h.n
        knowledge = tuple(tuple(h.edges[j] for j in h.incident(u)) for u in range(h.n))
    return Topology(rep, roles, tuple(tuple(sorted(a)) for a in adj), knowledge, h.n, h.m, h)


def graph_topology(g: Graph) -> Topology:
    """Plain network whose links are the edges of a standard graph."""
    adj = tuple(tuple(sorted(g.adj[v])) for v in range(g.n))
    return Topology("graph", (PLAIN,) * g.n, adj, adj, g.n, len(g.edges), None)


@dataclass(frozen=True)
class Mode:
    regime: str = CONGEST
    c0: int = 4
    enforce: str = "flag"  # "flag" records violations, "error" raises
    pipeline: bool = True  # split oversize logical messages across rounds

    def __post_init__(self):
        if self.regime not in (LOCAL, CONGEST):
            raise ValueError(f"unknown regime {self.regime!r}")
        if self.enforce not in ("flag", "error"):
            raise ValueError(f"unknown enforcement {self.enforce!r}")

    def budget(self, n: int, m: int) -> int | None:
        if self.regime == LOCAL:
            return None
        return max(1, self.c0 * math.ceil(math.log2(n + m + 2)))


LOCAL_MODE = Mode(LOCAL)
CONGEST_MODE = Mode(CONGEST)


@dataclass
class Metrics:
    rounds: int = 0
    messages: int = 0
    max_bits: int = 0
    violations: int = 0
    phases: dict[str, int] = field(default_factory=dict)

    def add(self, other: "Metrics") -> None:
        self.rounds += other.rounds
        self.messages += other.messages
        self.max_bits = max(self.max_bits, other.max_bits)
        self.violations += other.violations
        for k, v in other.phases.items():
            self.phases[k] = self.phases.get(k, 0) + v

    def as_dict(self) -> dict:
        return {
            "rounds": self.rounds,
            "messages": self.messages,
            "max_bits": self.max_bits,
            "violations": self.violations,
            "phases": dict(sorted(self.phases.items())),
        }


class Network:
    """A topology (or a restriction of it) with a running cost meter.

    Algorithms drive it one synchronous round at a time through
    :meth:`exchange`; a node only ever learns what arrives in its inbox.
    """

    def __init__(self, topo: Topology, mode: Mode = CONGEST_MODE, nodes=None, links=None,
                 record_loads: bool = False):
        self.topo = topo
        self.mode = mode
        self.budget = mode.budget(topo.n, topo.m)
        if nodes is None:
            self.nodes = frozenset(range(topo.size))
            self.adj = {v: topo.adj[v] for v in range(topo.size)}
        else:
            self.nodes = frozenset(nodes)
            adj: dict[int, set[int]] = {v: set() for v in self.nodes}
            for u, v in links:
                if u not in self.nodes or v not in self.nodes:
                    raise NetworkError(f"link ({u}, {v}) leaves the node set")
                adj[u].add(v)
                adj[v].add(u)
            self.adj = {v: tuple(sorted(a)) for v, a in adj.items()}
        self._adjset = {v: frozenset(a) for v, a in self.adj.items()}
        self.metrics = Metrics()
        self.record_loads = record_loads
        self.loads: list[dict[tuple[int, int], int]] = []
        self.phase = "main"

    @property
    def representation(self) -> str:
        return self.topo.representation

    def restrict(self, nodes: Iterable[int], links: Iterable[tuple[int, int]],
                 record_loads: bool = True) -> "Network":
        net = Network(self.topo, self.mode, nodes, links, record_loads)
        net.phase = self.phase
        return net

    def is_link(self, u: int, v: int) -> bool:
        return v in self._adjset.get(u, ())

    def exchange(self, sends: Iterable[tuple[int, int, Any]]) -> dict[int, list[tuple[int, Any]]]:
        """One synchronous round: deliver ``(src, dst, payload)`` triples.

        Several payloads on one directed link share it; under CONGEST an
        oversize load is pipelined over ``ceil(bits / B)`` rounds.
        """
        load: dict[tuple[int, int], int] = {}
        inbox: dict[int, list[tuple[int, Any]]] = {}
        count = 0
        sizes: dict[int, tuple[Any, int]] = {}  # the same object is often sent to many neighbours
        for src, dst, payload in sends:
            if not self.is_link(src, dst):
                raise NetworkError(f"no link {src} -> {dst}")
            hit = sizes.get(id(payload))
            if hit is None or hit[0] is not payload:
                hit = sizes[id(payload)] = (payload, payload_bits(payload))
            b = hit[1]
            load[(src, dst)] = load.get((src, dst), 0) + b
            inbox.setdefault(dst, []).append((src, payload))
            count += 1
        self._charge_round(load, count)
        for msgs in inbox.values():
            msgs.sort(key=lambda t: t[0])
        return inbox

    def _charge_round(self, load: dict[tuple[int, int], int], count: int) -> None:
        m = self.metrics
        rounds = 1
        peak = max(load.values(), default=0)
        if self.budget is not None and peak > self.budget:
            if self.mode.pipeline:
                rounds = -(-peak // self.budget)
                peak = self.budget
            elif self.mode.enforce == "error":
                raise BandwidthExceeded(f"{peak} bits on one link exceeds B={self.budget}")
            else:
                m.violations += 1
        m.rounds += rounds
        m.messages += count
        m.max_bits = max(m.max_bits, peak)
        m.phases[self.phase] = m.phases.get(self.phase, 0) + rounds
        if self.record_loads:
            self.loads.append(load)

    def charge(self, rounds: int, phase: str | None = None) -> None:
        """Account rounds of a step whose cost is modelled rather than executed."""
        self.metrics.rounds += rounds
        key = phase or self.phase
        self.metrics.phases[key] = self.metrics.phases.get(key, 0) + rounds


def multiplex(nets: list[Network], budget: int | None) -> Metrics:
    """Cost of running several round logs concurrently over shared links.

    Round ``r`` of every log executes together; a link carrying the
    combined load of all logs takes ``ceil(bits / B)`` rounds.
    """
    out = Metrics()
    depth = max((len(n.loads) for n in nets), default=0)
    for r in range(depth):
        combined: dict[tuple[int, int], int] = {}
        for n in nets:
            if r < len(n.loads):
                for k, b in n.loads[r].items():
                    combined[k] = combined.get(k, 0) + b
        peak = max(combined.values(), default=0)
        rounds = 1
        if budget is not None and peak > budget:
            rounds = -(-peak // budget)
            peak = budget
        out.rounds += rounds
        out.max_bits = max(out.max_bits, peak)
    for n in nets:
        out.messages += n.metrics.messages
        out.violations += n.metrics.violations
        # modelled (non-exchange) charges are concurrent too: take the maximum
    extra = max((n.metrics.rounds - _exchange_rounds(n) for n in nets), default=0)
    out.rounds += max(0, extra)
    return out


def _exchange_rounds(net: Network) -> int:
    total = 0
    for load in net.loads:
        peak = max(load.values(), default=0)
        if net.budget is not None and peak > net.budget and net.mode.pipeline:
            total += -(-peak // net.budget)
        else:
            total += 1
    return total


# -- node programs -------------------------------------------------------------

class NodeProgram(Protocol):
    """A distributed algorithm, one copy per node.

    ``step`` must be a pure function of its arguments; all randomness comes
    from the ``rng`` handed to ``init``.
    """

    def init(self, node: int, role: str, knowledge: Any, rng: random.Random) -> Any: ...

    def step(self, state: Any, rnd: int, inbox: list[tuple[int, Any]]
             ) -> tuple[Any, list[tuple[int, Any]], bool, Any]: ...


@dataclass
class RunTrace:
    rounds: int = 0
    messages: int = 0
    max_bits: int = 0
    violations: int = 0
    timed_out: bool = False
    outputs: dict[int, Any] = field(default_factory=dict)
    events: list[dict] | None = None

    def record(self, algo: str, topo: Topology, mode: Mode, seed: int) -> dict:
        return {
            "algo": algo,
            "representation": topo.representation,
            "regime": mode.regime,
            "seed": seed,
            "n": topo.n,
            "m": topo.m,
            "rounds": self.rounds,
            "messages": self.messages,
            "max_bits": self.max_bits,
            "violations": self.violations,
            "output": {str(k): _jsonable(v) for k, v in sorted(self.outputs.items())},
        }

    def event_log(self) -> str:
        return "".join(json.dumps(e, sort_keys=True) + "\n" for e in self.events or [])


def _jsonable(x: Any) -> Any:
    if isinstance(x, (set, frozenset)):
        return sorted(_jsonable(y) for y in x)
    if isinstance(x, (tuple, list)):
        return [_jsonable(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return x


def run(topo: Topology, program: NodeProgram, mode: Mode = CONGEST_MODE, seed: int = 0,
        max_rounds: int | None = None, nodes: Iterable[int] | None = None,
        log: bool = False) -> RunTrace:
    """Execute ``program`` on every node (or on ``nodes``) in lock-step rounds.

    A halted node is skipped until a message reaches it. The run ends when
    every node is halted and nothing is in flight, or at ``max_rounds``.
    ``rounds`` is the last round in which any message was sent.
    """
    members = sorted(range(topo.size) if nodes is None else set(nodes))
    member_set = set(members)
    if max_rounds is None:
        max_rounds = 50 * max(1, len(members)) ** 2
    if max_rounds < 1:
        raise ValueError("max_rounds must be at least 1")
    budget = mode.budget(topo.n, topo.m)
    states = {
        v: program.init(v, topo.roles[v], topo.knowledge[v], node_rng(seed, "node", v))
        for v in members
    }
    halted = {v: False for v in members}
    trace = RunTrace(events=[] if log else None)
    inboxes: dict[int, list[tuple[int, Any]]] = {}
    rnd = 0
    while True:
        rnd += 1
        if rnd > max_rounds:
            trace.timed_out = True
            break
        pending: dict[int, list[tuple[int, Any]]] = {}
        sent = 0
        for v in members:
            inbox = inboxes.get(v, [])
            if halted[v] and not inbox:
                continue
            state, outbox, stop, output = program.step(states[v], rnd, inbox)
            states[v] = state
            halted[v] = bool(stop)
            if output is not None:
                trace.outputs[v] = output
            per_link: dict[int, int] = {}
            for dst, payload in outbox:
                if dst not in member_set or dst not in topo.adj[v]:
                    raise NetworkError(f"node {v} sent to non-neighbor {dst}")
                b = payload_bits(payload)
                per_link[dst] = per_link.get(dst, 0) + b
                pending.setdefault(dst, []).append((v, payload))
                sent += 1
            for dst, b in per_link.items():
                if budget is not None and b > budget:
                    if mode.enforce == "error":
                        raise BandwidthExceeded(
                            f"round {rnd}: {v}->{dst} carries {b} bits > B={budget}")
                    trace.violations += 1
                trace.max_bits = max(trace.max_bits, b)
        if sent:
            trace.rounds = rnd
            trace.messages += sent
        if log:
            trace.events.append({"round": rnd, "messages": sent,
                                 "halted": sum(halted.values())})
        for msgs in pending.values():
            msgs.sort(key=lambda t: t[0])
        inboxes = pending
        if not pending and all(halted.values()):
            break
    return trace
