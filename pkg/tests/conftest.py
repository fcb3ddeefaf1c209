import numpy as np
import pytest
from hypothesis import strategies as st

from ordfix import SelfMap, line_space
from ordfix.lab import GeneratorConfig, generate_instance


@st.composite
def spaces(draw, min_n=1, max_n=6, kind="partial"):
    """Small spaces: distinct integer points on a line, random i<j order pairs."""
    n = draw(st.integers(min_n, max_n))
    pts = draw(st.lists(st.integers(-20, 20), min_size=n, max_size=n, unique=True))
    idx = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(idx), unique=True)) if idx else []
    return line_space(pts, chosen, kind)


@st.composite
def spaces_with_maps(draw, min_n=1, max_n=6):
    sp = draw(spaces(min_n, max_n))
    img = draw(st.lists(st.integers(0, sp.size - 1), min_size=sp.size, max_size=sp.size))
    return sp, SelfMap(img)


@pytest.fixture
def three_point():
    """Points 0, 1, 3 on a line, totally ordered, T: 0->0, 1->0, 3->1."""
    return line_space([0, 1, 3], [(0, 1), (1, 2)]), SelfMap([0, 0, 1])


@pytest.fixture
def vee():
    """a=0, b=5, c=1 on a line with a <= b and c <= b only."""
    return line_space([0, 5, 1], [(0, 1), (2, 1)])


def mixed_configs(count, base=0):
    """Deterministic mix of generator models used by several suites."""
    out = []
    orders = ["total", "random_dag", "lattice", "antichain", "random_dag"]
    metrics = ["line", "embedding", "random_repaired"]
    for s in range(base, base + count):
        rng = np.random.default_rng([s, 17])
        out.append((GeneratorConfig(
            n=int(rng.integers(1, 9)),
            order_model=orders[s % 5],
            p=float(rng.uniform(0.15, 0.6)),
            metric_model=metrics[s % 3],
            norm=["euclidean", "manhattan", "chebyshev"][s % 3],
            map_model="random",
        ), s))
    return out


def generated(cfg_seed_pairs):
    return [generate_instance(c, s) for c, s in cfg_seed_pairs]


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
