import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypermis.generators import random_hypergraph, uniform_hypergraph
from hypermis.hypergraph import build, small_example, induced
from hypermis.mis import (
    ENGINES,
    DimensionRetryError,
    EngineTimeout,
    MisInstance,
    Work,
    cleanup,
    compute_zeta,
    d_from_eps,
    dim_reduced_mis,
    dimension_threshold,
    kuw_mark,
    kuw_sqrt_mis,
    marking_probability,
    run_beame_luby,
    sequential_prefix,
    solve,
    turan_expectation,
    turan_probability,
    turan_sample,
    zeta_bruteforce,
    zeta_value,
)
from hypermis.mis.zeta import ZERO, ZetaError, zeta_max
from hypermis.netsim import CONGEST_MODE, LOCAL_MODE, SC, VC, build_forest, node_rng
from hypermis.oracles import enumerate_mis, is_independent, is_maximal_independent

from conftest import hypergraphs


def zeta_of(h, d):
    inst = MisInstance.full(h)
    net = inst.network()
    return compute_zeta(net, Work.of(inst.vertices, inst.edges), d, build_forest(net))


# -- zeta ------------------------------------------------------------------------

def test_small_example_zeta_is_two():
    prof = zeta_of(small_example(), 3)
    assert prof.zeta == (2, 1) and prof.value == 2.0
    assert zeta_bruteforce(range(4), small_example().edges, 3) == 2.0
    assert Fraction(marking_probability(prof.zeta, 3)).limit_denominator(1000) == Fraction(1, 32)


def test_zeta_pairs_compare_exactly():
    assert zeta_max((8, 3), (2, 1)) == (2, 1)  # equal values: smaller exponent
    assert zeta_max((9, 2), (2, 1)) == (9, 2)
    assert zeta_value(ZERO) == 0.0
    assert marking_probability(ZERO, 3) == 1.0


@settings(max_examples=60, deadline=None)
@given(hypergraphs(max_n=8, max_m=10, max_dim=4), st.sampled_from([SC, VC]))
def test_distributed_zeta_matches_enumeration(h, rep):
    d = max(2, h.dim)
    inst = MisInstance.full(h, rep)
    net = inst.network()
    prof = compute_zeta(net, Work.of(inst.vertices, inst.edges), d, build_forest(net))
    assert math.isclose(prof.value, zeta_bruteforce(range(h.n), h.edges, d))


def test_zeta_rejects_high_dimension():
    with pytest.raises(ZetaError):
        zeta_of(build(4, [(0, 1, 2, 3)]), 3)


# -- KUW ---------------------------------------------------------------------------

def test_kuw_forced_first_round_on_small_example():
    forced = {0: 1, 1: 4, 2: 3, 3: 2}
    res = kuw_sqrt_mis(MisInstance.full(small_example()), seed=0, forced=forced)
    assert res.independent_set == {0, 3}
    assert res.extra["first_round"]["marked"] == [0, 3]
    assert res.extra["first_round"]["eliminated"] == [1, 2]


@settings(max_examples=60, deadline=None)
@given(hypergraphs(max_n=8, min_dim=2), st.integers(0, 1000))
def test_kuw_round_matches_sequential_prefix(h, seed):
    edges = [frozenset(e) for e in h.edges]
    key = {v: (node_rng(seed, v).randint(1, 64), v) for v in range(h.n)}
    marked, elim = kuw_mark(range(h.n), edges, key)
    assert is_independent(h, marked)
    assert not marked & elim
    for v in elim:
        assert not is_independent(h, marked | {v})


def test_sequential_prefix_stops_at_first_refusal():
    edges = [frozenset({0, 1})]
    key = {0: (1, 0), 1: (2, 1), 2: (3, 2)}
    assert sequential_prefix(range(3), edges, key) == {0}


# -- Turan and helpers --------------------------------------------------------------

def test_turan_formulas():
    assert turan_probability(3, 4) == 0.5
    assert turan_expectation(60, 3, 4) == pytest.approx(20.0)
    assert d_from_eps(0.5) == 3 and d_from_eps(1) == 2
    with pytest.raises(ValueError):
        turan_probability(3, 0.5)
    with pytest.raises(ValueError):
        d_from_eps(0)


def test_turan_sample_is_independent():
    h = uniform_hypergraph(60, 3, 4, seed=2)
    inst = MisInstance.full(h)
    for s in range(20):
        assert is_independent(h, turan_sample(inst, 3, 4, s))
    with pytest.raises(ValueError):
        turan_sample(MisInstance.full(build(3, [(0, 1)])), 3, 4)


def test_dimension_threshold():
    assert dimension_threshold(6, 2) == 9.0


def test_cleanup_rules():
    h = build(5, [(0, 1), (0, 1, 2), (3,)])
    inst = MisInstance.full(h)
    net = inst.network()
    work = Work.of(inst.vertices, inst.edges)
    M = set()
    cleanup(net, work, M)
    assert [sorted(e.members) for e in work.edges] == [[0, 1]]
    assert 3 not in work.vertices and M == {2, 4}


# -- engines -------------------------------------------------------------------------

ALL = list(ENGINES) + ["dim-reduced:beame-luby", "subgraph:kuw-sqrt", "subgraph:beame-luby"]


@pytest.mark.parametrize("algo", ALL)
@pytest.mark.parametrize("rep", [SC, VC])
@settings(max_examples=15, deadline=None)
@given(h=hypergraphs(max_n=9, max_m=12), seed=st.integers(0, 10**6))
def test_engines_return_maximal_independent_sets(algo, rep, h, seed):
    mode = LOCAL_MODE if algo == "local-mis" else CONGEST_MODE
    res = solve(h, algo, seed, rep, mode)
    assert is_maximal_independent(h, res.independent_set)
    if mode is CONGEST_MODE:
        assert res.metrics.violations == 0
        assert res.metrics.max_bits <= mode.budget(h.n, h.m)


@pytest.mark.parametrize("algo", ALL)
def test_engines_on_small_example_land_in_family(algo):
    fam = set(enumerate_mis(small_example()))
    mode = LOCAL_MODE if algo == "local-mis" else CONGEST_MODE
    for s in range(10):
        assert solve(small_example(), algo, s, SC, mode).independent_set in fam


@pytest.mark.parametrize("algo", ["kuw-sqrt", "beame-luby", "turan-recursive", "subgraph:kuw-sqrt"])
def test_sub_hypergraph_instances(algo):
    h = random_hypergraph(20, 25, seed=3)
    view = induced(h, range(0, 20, 2))
    inst = MisInstance.from_view(view)
    res = solve(inst, algo, 1)
    assert is_maximal_independent(view, res.independent_set)


def test_local_mis_requires_local_regime():
    with pytest.raises(ValueError):
        solve(small_example(), "local-mis", 0, SC, CONGEST_MODE)


def test_unknown_engine():
    with pytest.raises(ValueError):
        solve(small_example(), "bogus")


def test_beame_luby_dimension_guard():
    with pytest.raises(ValueError):
        solve(build(4, [(0, 1, 2, 3)]), "beame-luby", d=3)


def test_same_seed_same_output():
    h = random_hypergraph(30, 40, seed=11)
    for algo in ENGINES:
        mode = LOCAL_MODE if algo == "local-mis" else CONGEST_MODE
        a, b = solve(h, algo, 5, SC, mode), solve(h, algo, 5, SC, mode)
        assert a.as_dict() == b.as_dict()


def test_iteration_cap_raises_with_partial():
    h = random_hypergraph(12, 20, seed=1)
    inst = MisInstance.full(h)
    net = inst.network()
    work = Work.of(inst.vertices, inst.edges)
    import hypermis.mis.beame_luby as bl
    orig = bl.iteration_cap
    bl.iteration_cap = lambda n: 0
    try:
        with pytest.raises(EngineTimeout) as ei:
            run_beame_luby(net, work, 3, 0)
    finally:
        bl.iteration_cap = orig
    assert ei.value.engine == "beame-luby"
    assert is_independent(h, ei.value.partial)


def test_dim_reduced_records_events_and_retries():
    h = random_hypergraph(16, 20, seed=2, dmax=5)
    events = []
    res = dim_reduced_mis(MisInstance.full(h), seed=3, events=events)
    assert res.extra["sampling_events"] == len(events) > 0
    import hypermis.mis.dimred as dr
    orig = dr.dimension_threshold
    dr.dimension_threshold = lambda n, m: -1
    try:
        with pytest.raises(DimensionRetryError):
            dim_reduced_mis(MisInstance.full(h), seed=3)
    finally:
        dr.dimension_threshold = orig
