"""Hypergraph MIS engines and the name registry used by the CLI."""

from __future__ import annotations

from ..hypergraph import Hypergraph
from ..netsim import CONGEST_MODE, LOCAL_MODE, Mode, Network, SC
from .beame_luby import beame_luby_mis, marking_probability, run_beame_luby
from .core import EngineTimeout, MisInstance, MisResult, Work, cleanup
from .dimred import DimensionRetryError, dim_reduced_mis, dimension_threshold, run_dim_reduced
from .kuw import kuw_mark, kuw_sqrt_mis, run_kuw, sequential_prefix
from .subgraph import local_mis, solve_subgraph_mis
from .turan import (
    d_from_eps,
    delta_eps_mis,
    run_delta_eps,
    run_turan,
    turan_expectation,
    turan_probability,
    turan_sample,
)
from .zeta import ZetaProfile, compute_zeta, zeta_bruteforce, zeta_value

ENGINES = ("local-mis", "beame-luby", "turan-recursive", "kuw-sqrt", "dim-reduced")
DEFAULT_D = 3


def inner_engine(name: str, d: int = DEFAULT_D):
    """Engine usable on a working hypergraph inside a (sub)network."""
    if name == "kuw-sqrt":
        return lambda net, work, seed: run_kuw(net, work, seed)
    if name == "beame-luby":
        return lambda net, work, seed: run_beame_luby(net, work, max(2, work.dim), seed)
    if name == "turan-recursive":
        return lambda net, work, seed: run_delta_eps(net, work, d, seed)
    if name.startswith("dim-reduced"):
        inner = inner_engine(name.partition(":")[2] or "kuw-sqrt", d)
        return lambda net, work, seed: run_dim_reduced(net, work, inner, seed)
    raise ValueError(f"unknown inner engine {name!r}")


def default_mode(algo: str) -> Mode:
    return LOCAL_MODE if algo == "local-mis" else CONGEST_MODE


def solve(h: Hypergraph | MisInstance, algo: str, seed: int = 0, representation: str = SC,
          mode: Mode | None = None, d: int | None = None, eps: float | None = None) -> MisResult:
    """Run engine ``algo`` on the whole of ``h`` (or on a prepared instance)."""
    if isinstance(h, MisInstance):
        inst = h
    else:
        inst = MisInstance.full(h, representation, mode or default_mode(algo))
    if eps is not None:
        d = d_from_eps(eps)
    if algo == "local-mis":
        return local_mis(inst, seed)
    if algo == "beame-luby":
        return beame_luby_mis(inst, d, seed)
    if algo == "turan-recursive":
        return delta_eps_mis(inst, d or DEFAULT_D, seed)
    if algo == "kuw-sqrt":
        return kuw_sqrt_mis(inst, seed)
    if algo.startswith("dim-reduced"):
        return dim_reduced_mis(inst, algo.partition(":")[2] or "kuw-sqrt", seed)
    if algo.startswith("subgraph"):
        return solve_subgraph_mis(inst, algo.partition(":")[2] or "kuw-sqrt", seed)
    raise ValueError(f"unknown engine {algo!r}; choose from {', '.join(ENGINES)}")


__all__ = [
    "ENGINES", "EngineTimeout", "DimensionRetryError", "MisInstance", "MisResult", "Network",
    "Work", "ZetaProfile", "beame_luby_mis", "cleanup", "compute_zeta", "d_from_eps",
    "delta_eps_mis", "dim_reduced_mis", "dimension_threshold", "inner_engine", "kuw_mark",
    "kuw_sqrt_mis", "local_mis", "marking_probability", "run_beame_luby", "run_delta_eps",
    "run_dim_reduced", "run_kuw", "run_turan", "sequential_prefix", "solve",
    "solve_subgraph_mis", "turan_expectation", "turan_probability", "turan_sample",
    "zeta_bruteforce", "zeta_value",
]
