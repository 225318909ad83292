"""Experiment grid runner and result persistence.

JSON is the authoritative record format; CSV is a fixed-column projection
of it. Vertex ids in recorded outputs are 1-based, like the instance files.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable

from .hypergraph import Graph, Hypergraph, HypergraphError, serialize
from .netsim import CONGEST, CONGEST_MODE, LOCAL, LOCAL_MODE, Mode
from .netsim.engine import REPR_ALIASES

MIS_ALGOS = ("local-mis", "beame-luby", "turan-recursive", "kuw-sqrt", "dim-reduced")
GRAPH_ALGOS = ("rmds", "bmds", "mcds")
EXTRA_ALGOS = ("coloring", "matching", "clique")

CSV_COLUMNS = ("fingerprint", "algorithm", "representation", "regime", "seed", "rounds",
               "messages", "max_bits", "violations", "iterations", "output_size", "verdict",
               "wall_time", "error")

MCDS_ORACLE_LIMIT = 40


def fingerprint(h: Hypergraph) -> str:
    return hashlib.sha256(serialize(h).encode()).hexdigest()


@dataclass
class ExperimentRecord:
    fingerprint: str
    algorithm: str
    representation: str
    regime: str
    seed: int
    rounds: int | None = None
    messages: int | None = None
    max_bits: int | None = None
    violations: int | None = None
    iterations: int | None = None
    output_size: int | None = None
    verdict: str = "error"
    wall_time: float = 0.0
    error: str | None = None
    output: list | None = None
    instance: str | None = None

    def as_dict(self, wall_time: bool = True) -> dict:
        d = asdict(self)
        if not wall_time:
            d.pop("wall_time")
        return d


def as_graph(h: Hypergraph) -> Graph:
    if any(len(e) != 2 for e in h.edges):
        raise HypergraphError("graph algorithms need a 2-uniform instance")
    return Graph.from_edges(h.n, h.edges)


def mode_for(regime: str) -> Mode:
    regime = regime.lower()
    if regime == LOCAL.lower():
        return LOCAL_MODE
    if regime == CONGEST.lower():
        return CONGEST_MODE
    raise ValueError(f"unknown regime {regime!r}")


def algo_family(algo: str) -> str:
    base = algo.partition(":")[0]
    if base in MIS_ALGOS or base == "subgraph":
        return "mis"
    if base in GRAPH_ALGOS:
        return "graph"
    if base in EXTRA_ALGOS:
        return "extra"
    raise ValueError(f"unknown algorithm {algo!r}")


def execute(h: Hypergraph, algo: str, representation: str, regime: str, seed: int,
            restrict: Iterable[int] | None = None):
    """Run one algorithm; returns ``(output, verdict, metrics, iterations)``.

    The output is in 0-based ids. The verdict is "pass", "fail" or
    "skipped" (oracle size guard).
    """
    from . import apps, extras, oracles
    from .mis import solve

    mode = mode_for(regime)
    fam = algo_family(algo)
    base = algo.partition(":")[0]
    if fam == "mis":
        res = solve(h, algo, seed, representation, mode)
        out = sorted(res.independent_set)
        ok = oracles.is_maximal_independent(h, out)
        return out, "pass" if ok else "fail", res.metrics, res.iterations
    if fam == "graph":
        g = as_graph(h)
        if base == "rmds":
            R = range(g.n) if restrict is None else restrict
            res = apps.rmds(g, R, seed=seed, mode=mode)
            ok = oracles.is_minimal_dominating(g, res.dominating_set) and \
                res.dominating_set <= frozenset(R)
        elif base == "bmds":
            res = apps.bmds(g, seed=seed, mode=mode)
            ok = oracles.is_minimal_dominating(g, res.dominating_set)
        else:
            res = apps.mcds(g, seed=seed, mode=mode)
            if g.n > MCDS_ORACLE_LIMIT:
                return sorted(res.dominating_set), "skipped", res.metrics, None
            ok = oracles.is_mcds(g, res.dominating_set)
        return sorted(res.dominating_set), "pass" if ok else "fail", res.metrics, None
    if base == "coloring":
        res = extras.hyper_coloring(h, seed, representation, mode)
        ok = oracles.is_valid_coloring(h, res.value)
        return [res.value[v] for v in range(h.n)], "pass" if ok else "fail", res.metrics, res.iterations
    if base == "matching":
        res = extras.maximal_matching(h, seed, mode)
        ok = oracles.is_maximal_matching(h, res.value)
    else:
        res = extras.maximal_clique(h, seed, representation, mode)
        ok = oracles.is_maximal_clique(h, res.value)
    return sorted(res.value), "pass" if ok else "fail", res.metrics, res.iterations


def run_one(h: Hypergraph, algo: str, representation: str = "sc", regime: str = "congest",
            seed: int = 0, name: str | None = None, restrict=None) -> ExperimentRecord:
    rep = REPR_ALIASES.get(representation, representation)
    regime = regime.lower()
    rec = ExperimentRecord(fingerprint(h), algo, rep, regime, seed, instance=name)
    t0 = time.perf_counter()
    try:
        out, verdict, metrics, iters = execute(h, algo, rep, regime, seed, restrict)
    except Exception as exc:  # per-run failures are data; the grid continues
        rec.error = f"{type(exc).__name__}: {exc}"
        rec.verdict = "error"
    else:
        rec.rounds = metrics.rounds
        rec.messages = metrics.messages
        rec.max_bits = metrics.max_bits
        rec.violations = metrics.violations
        rec.iterations = iters
        rec.verdict = verdict
        if algo == "coloring":
            rec.output = out
            rec.output_size = len(set(out))
        else:
            rec.output = [x + 1 for x in out]
            rec.output_size = len(out)
    rec.wall_time = round(time.perf_counter() - t0, 6)
    return rec


@dataclass
class ExperimentConfig:
    instances: list[tuple[str, Hypergraph]]
    algorithms: list[str]
    seeds: list[int]
    representations: list[str] = field(default_factory=lambda: ["sc"])
    regimes: list[str] = field(default_factory=lambda: ["congest"])


def default_regime(algo: str, requested: str) -> str:
    return "local" if algo == "local-mis" else requested.lower()


def run_experiment(cfg: ExperimentConfig) -> list[ExperimentRecord]:
    records = []
    for name, h in cfg.instances:
        for algo in cfg.algorithms:
            for rep in cfg.representations:
                regimes = sorted({default_regime(algo, r) for r in cfg.regimes})
                for regime in regimes:
                    for seed in cfg.seeds:
                        records.append(run_one(h, algo, rep, regime, seed, name))
    return records


def all_pass(records: Iterable[ExperimentRecord]) -> bool:
    return all(r.verdict in ("pass", "skipped") for r in records)


# -- persistence ------------------------------------------------------------------

def records_json(records: Iterable[ExperimentRecord], wall_time: bool = True) -> str:
    return json.dumps({"records": [r.as_dict(wall_time) for r in records]},
                      sort_keys=True, indent=1) + "\n"


def records_csv(records: Iterable[ExperimentRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        d = r.as_dict()
        w.writerow(["" if d[c] is None else d[c] for c in CSV_COLUMNS])
    return buf.getvalue()


def load_records(path: str | Path) -> list[ExperimentRecord]:
    data = json.loads(Path(path).read_text())
    return [ExperimentRecord(**r) for r in data["records"]]


# -- sweep configuration ------------------------------------------------------------

class ConfigError(ValueError):
    pass


def parse_keyvalue(text: str) -> dict[str, str]:
    """``key = value`` lines; ``#`` starts a comment; optional quotes stripped."""
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line or line.startswith("["):
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        k, v = (x.strip() for x in line.split("=", 1))
        out[k] = v.strip("\"'")
    return out


def _list(value: str) -> list[str]:
    return [x.strip().strip("\"'") for x in value.strip("[]").split(",") if x.strip()]


def _ints(value: str) -> list[int]:
    out: list[int] = []
    for part in _list(value):
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def sweep_config(kv: dict[str, str]) -> ExperimentConfig:
    """Build a grid from a key/value sweep description.

    Keys: family, n, m (or m_per_n), dmax, D, instance_seed, algos, repr,
    regime, seeds.
    """
    from .generators import generate

    known = {"family", "n", "m", "m_per_n", "dmax", "D", "instance_seed", "algos", "repr",
             "regime", "seeds", "out", "csv"}
    extra = set(kv) - known
    if extra:
        raise ConfigError(f"unknown keys: {', '.join(sorted(extra))}")
    family = kv.get("family", "random")
    ns = _ints(kv.get("n", "16"))
    ms = _ints(kv["m"]) if "m" in kv else None
    per = float(kv.get("m_per_n", "1"))
    dmax = int(kv.get("dmax", "3"))
    D = int(kv.get("D", "2"))
    iseeds = _ints(kv.get("instance_seed", "0"))
    instances = []
    for i, n in enumerate(ns):
        m = ms[i] if ms and i < len(ms) else round(per * n)
        for s in iseeds:
            g = generate(family, n, m=m, dmax=dmax, D=D, seed=s)
            h = g if isinstance(g, Hypergraph) else g.to_hypergraph()
            instances.append((f"{family}-n{n}-m{m}-s{s}", h))
    algos = _list(kv.get("algos", "kuw-sqrt"))
    for a in algos:
        algo_family(a)
    return ExperimentConfig(instances, algos, _ints(kv.get("seeds", "0")),
                            _list(kv.get("repr", "sc")), _list(kv.get("regime", "congest")))
