"""Command line: ``hypermis gen|run|verify|sweep``. Exit status 0 means every
verdict passed."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bench, oracles
from .generators import FAMILIES, GeneratorError, generate
from .hypergraph import Hypergraph, HypergraphError, parse, serialize


def _load(path: str) -> Hypergraph:
    return parse(Path(path).read_text())


def _ids(text: str) -> list[int]:
    return [int(x) for x in text.split()]


def _candidate(path: str) -> list[int]:
    """Output of ``run`` (first record) or a whitespace list of 1-based ids."""
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        return _ids(text)
    if isinstance(data, dict) and "records" in data:
        data = data["records"][0]
    if isinstance(data, dict):
        for key in ("output", "set", "independent_set"):
            if data.get(key) is not None:
                return list(data[key])
        raise ValueError("candidate JSON has no output field")
    return list(data)


def cmd_gen(a) -> int:
    obj = generate(a.family, a.n, m=a.m, dmax=a.dmax, D=a.D, seed=a.seed)
    h = obj if isinstance(obj, Hypergraph) else obj.to_hypergraph()
    text = f"# {a.family} n={a.n} seed={a.seed}\n" + serialize(h)
    if a.output == "-":
        sys.stdout.write(text)
    else:
        Path(a.output).write_text(text)
    return 0


def cmd_run(a) -> int:
    h = _load(a.input)
    restrict = [x - 1 for x in _ids(Path(a.restrict).read_text())] if a.restrict else None
    regime = bench.default_regime(a.algo, a.regime)
    recs = [bench.run_one(h, a.algo, a.repr, regime, a.seed + t, a.input, restrict)
            for t in range(a.trials)]
    payload = bench.records_json(recs)
    if a.out:
        Path(a.out).write_text(payload)
    if a.csv:
        Path(a.csv).write_text(bench.records_csv(recs))
    for r in recs:
        line = f"{r.algorithm} seed={r.seed} rounds={r.rounds} verdict={r.verdict}"
        print(line + (f" error={r.error}" if r.error else ""))
    return 0 if bench.all_pass(recs) else 1


def cmd_verify(a) -> int:
    h = _load(a.input)
    cand = _candidate(a.candidate)
    check = a.check
    if check == "coloring":
        v = oracles.is_valid_coloring(h, {i: c for i, c in enumerate(cand)})
    else:
        S = [x - 1 for x in cand]
        if check == "mis":
            v = oracles.is_maximal_independent(h, S)
        elif check == "matching":
            v = oracles.is_maximal_matching(h, S)
        elif check == "clique":
            v = oracles.is_maximal_clique(h, S)
        else:
            g = bench.as_graph(h)
            if check == "mcds":
                v = oracles.is_mcds(g, S)
            else:
                v = oracles.is_minimal_dominating(g, S)
                if v and a.restrict:
                    R = {x - 1 for x in _ids(Path(a.restrict).read_text())}
                    outside = sorted(set(S) - R)
                    if outside:
                        v = oracles.Verdict(False, outside[0] + 1, "vertex outside R")
    print(json.dumps({"check": check, **v.as_dict()}, sort_keys=True))
    return 0 if v else 1


def cmd_sweep(a) -> int:
    kv = bench.parse_keyvalue(Path(a.config).read_text())
    cfg = bench.sweep_config(kv)
    recs = bench.run_experiment(cfg)
    out = a.out or kv.get("out")
    csv_path = a.csv or kv.get("csv")
    if out:
        Path(out).write_text(bench.records_json(recs))
    if csv_path:
        Path(csv_path).write_text(bench.records_csv(recs))
    passed = sum(r.verdict in ("pass", "skipped") for r in recs)
    print(f"{len(recs)} runs, {passed} passed")
    return 0 if bench.all_pass(recs) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hypermis", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate an instance file")
    g.add_argument("--family", required=True, choices=FAMILIES)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--m", type=int, default=0)
    g.add_argument("--dmax", type=int, default=3)
    g.add_argument("--D", type=int, default=2)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output", default="-")
    g.set_defaults(func=cmd_gen)

    r = sub.add_parser("run", help="run an algorithm on an instance")
    r.add_argument("--algo", required=True)
    r.add_argument("--repr", default="sc", choices=["sc", "vc"])
    r.add_argument("--regime", default="congest", choices=["local", "congest"])
    r.add_argument("--input", required=True)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--trials", type=int, default=1)
    r.add_argument("--restrict", help="file of 1-based ids (rmds)")
    r.add_argument("--out")
    r.add_argument("--csv")
    r.set_defaults(func=cmd_run)

    v = sub.add_parser("verify", help="check a candidate output with the oracles")
    v.add_argument("--input", required=True)
    v.add_argument("--candidate", required=True)
    v.add_argument("--check", required=True,
                   choices=["mis", "rmds", "mcds", "coloring", "matching", "clique"])
    v.add_argument("--restrict", help="file of 1-based ids (rmds)")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", help="run a grid described by a key = value file")
    s.add_argument("--config", required=True)
    s.add_argument("--out")
    s.add_argument("--csv")
    s.set_defaults(func=cmd_sweep)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GeneratorError, HypergraphError, bench.ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
