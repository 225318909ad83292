import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypermis.decomposition import (
    C_D,
    C_E,
    Cluster,
    Decomposition,
    calibrate_constants,
    decompose,
    radius_sampler,
    verify_decomposition,
)
from hypermis.generators import random_hypergraph
from hypermis.hypergraph import build, small_example
from hypermis.netsim import CONGEST_MODE, LOCAL_MODE, SC, VC, build_topology


@pytest.mark.parametrize("rep", [SC, VC])
@settings(max_examples=25, deadline=None)
@given(n=st.integers(3, 40), seed=st.integers(0, 10**6))
def test_random_decompositions_are_valid(rep, n, seed):
    h = random_hypergraph(n, n, dmax=min(3, n), seed=seed)
    d = decompose(build_topology(h, rep), CONGEST_MODE, seed)
    assert verify_decomposition(d, h) == []


def test_two_vertices_exceed_unit_multiplicity_bound():
    # log2(2) = 1, so the bound is C_E itself, while both sets share a link
    h = build(2, [(0, 1)])
    d = decompose(build_topology(h, SC), CONGEST_MODE, 0)
    kinds = {v["kind"] for v in verify_decomposition(d, h)}
    assert kinds <= {"multiplicity"}


def test_local_and_congest_give_the_same_sets():
    h = random_hypergraph(30, 40, seed=5)
    topo = build_topology(h, SC)
    a = decompose(topo, CONGEST_MODE, 2)
    b = decompose(topo, LOCAL_MODE, 2)
    key = lambda d: sorted((c.color, sorted(c.members)) for c in d.clusters)
    assert key(a) == key(b)
    assert b.rounds <= a.rounds


def test_radius_law_is_bounded():
    B, draw = radius_sampler(64)
    assert B == 6
    rng = random.Random(0)
    vals = [draw(rng) for _ in range(2000)]
    assert min(vals) == 1 and max(vals) <= 6


def test_verifier_reports_each_kind():
    h = build(4, [(0, 1), (2, 3)])
    bad = Decomposition(4, SC, [
        Cluster(1, 0, frozenset({0}), frozenset({0}), frozenset(), {0: None}),
        Cluster(1, 1, frozenset({1, 0}), frozenset({1, 7}), frozenset(), {1: None}),
        Cluster(1, 2, frozenset({2}), frozenset({2}), frozenset(), {2: None}),
        Cluster(1, 3, frozenset({3}), frozenset({3}), frozenset(), {3: None}),
    ])
    kinds = {v["kind"] for v in verify_decomposition(bad, h)}
    assert {"partition", "containment", "diameter", "disjointness", "reach"} <= kinds
    mult = Decomposition(4, SC, [
        Cluster(1, v, frozenset({v}), frozenset({0, 1}), frozenset({(0, 1)}), {0: None, 1: 0})
        for v in range(4)
    ])
    assert any(v["kind"] == "multiplicity" for v in verify_decomposition(mult, h, c_e=0.25))


def test_json_export():
    d = decompose(build_topology(small_example(), SC), CONGEST_MODE, 0)
    assert '"sets"' in d.to_json() and d.num_colors >= 1


def test_frozen_constants_cover_calibration():
    insts = [random_hypergraph(64, 64, 3, seed=s) for s in range(3)]
    cd, ce = calibrate_constants(insts, seeds=range(2))
    assert cd <= C_D and ce <= C_E
