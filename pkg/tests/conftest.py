import random

import pytest
from hypothesis import strategies as st

from hypermis.generators import random_hypergraph
from hypermis.hypergraph import build


@st.composite
def hypergraphs(draw, max_n=8, max_m=10, max_dim=4, min_dim=1):
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(0, max_m))
    edges = []
    for _ in range(m):
        k = draw(st.integers(min(min_dim, n), min(max_dim, n)))
        edges.append(draw(st.lists(st.integers(0, n - 1), min_size=k, max_size=k, unique=True)))
    return build(n, edges)


def small_instances(count, seed=0, max_n=12, max_m=20):
    """Seeded mix of small hypergraphs with edges of size 1..4."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = rng.randint(2, max_n)
        m = rng.randint(1, max_m)
        dmin = rng.choice([1, 2, 2, 3])
        dmax = rng.randint(max(dmin, 2), 4)
        out.append(random_hypergraph(n, m, dmax=min(dmax, n), seed=rng.randrange(10**9),
                                     dmin=min(dmin, n)))
    return out


@pytest.fixture
def example_h():
    from hypermis.hypergraph import small_example
    return small_example()


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
