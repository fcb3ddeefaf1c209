"""Comparability graph, chain components and the chain metric.

The chain metric between ``x`` and ``y`` is the cheapest way to walk from
``x`` to ``y`` through consecutively comparable points, paying the original
distance at every step. It is an all-pairs shortest path problem on the
comparability graph, and it is infinite between different components.

Path lengths are computed exactly. Float weights are dyadic rationals, so
scaling them to a common power-of-two denominator turns every path sum into
an integer; each entry of the result is that exact minimum rounded once.
The brute-force oracle sums each chain with :func:`math.fsum` (also a single
correct rounding of the exact sum), so the two agree bit for bit regardless
of edge order.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .errors import SpaceTooLarge
from .space import OrderedMetricSpace

INF = math.inf
BRUTE_FORCE_CAP = 9


@dataclass(frozen=True)
class ComparabilityGraph:
    size: int
    edges: dict  # {(i, j): weight} with i < j

    def neighbours(self) -> list[list[tuple[int, float]]]:
        adj: list[list[tuple[int, float]]] = [[] for _ in range(self.size)]
        for (i, j), w in sorted(self.edges.items()):
            adj[i].append((j, w))
            adj[j].append((i, w))
        return adj


@dataclass(frozen=True)
class ChainComponents:
    labels: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]

    @property
    def connected(self) -> bool:
        """Whether every pair of points is joined by a chain."""
        return len(self.components) <= 1


@dataclass(frozen=True, eq=False)
class ChainMetric:
    """Extended metric; ``math.inf`` marks pairs in different components."""

    e: np.ndarray

    @property
    def size(self) -> int:
        return self.e.shape[0]

    @property
    def matrix(self) -> np.ndarray:
        return self.e

    @property
    def finite(self) -> bool:
        return bool(np.all(np.isfinite(self.e)))


def comparability_graph(space: OrderedMetricSpace) -> ComparabilityGraph:
    C = space.comparability()
    D = space.dist
    n = space.size
    edges = {(i, j): float(D[i, j]) for i in range(n) for j in range(i + 1, n) if C[i, j]}
    return ComparabilityGraph(n, edges)


def chain_components(space: OrderedMetricSpace) -> ChainComponents:
    """Connected components of the comparability graph, numbered by smallest member."""
    n = space.size
    C = space.comparability()
    labels = [-1] * n
    comps = []
    for s in range(n):
        if labels[s] >= 0:
            continue
        label = len(comps)
        labels[s] = label
        stack, members = [s], [s]
        while stack:
            u = stack.pop()
            for v in np.flatnonzero(C[u]):
                v = int(v)
                if labels[v] < 0:
                    labels[v] = label
                    stack.append(v)
                    members.append(v)
        comps.append(tuple(sorted(members)))
    return ChainComponents(tuple(labels), tuple(comps))


def _integer_weights(graph: ComparabilityGraph):
    ratios = {k: w.as_integer_ratio() for k, w in graph.edges.items()}
    denom = max((q for _, q in ratios.values()), default=1)
    return {k: p * (denom // q) for k, (p, q) in ratios.items()}, denom


def chain_metric(space: OrderedMetricSpace) -> ChainMetric:
    """All-pairs shortest paths on the comparability graph (Dijkstra per source)."""
    graph = comparability_graph(space)
    n = graph.size
    weights, denom = _integer_weights(graph)
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for (i, j), w in sorted(weights.items()):
        adj[i].append((j, w))
        adj[j].append((i, w))

    e = np.full((n, n), INF)
    for s in range(n):
        best = {s: 0}
        done = set()
        heap = [(0, s)]
        while heap:
            dist, u = heapq.heappop(heap)
            if u in done:
                continue
            done.add(u)
            for v, w in adj[u]:
                nd = dist + w
                if v not in best or nd < best[v]:
                    best[v] = nd
                    heapq.heappush(heap, (nd, v))
        for v, total in best.items():
            e[s, v] = total / denom  # int / int rounds correctly
    e.setflags(write=False)
    return ChainMetric(e)


def brute_force_chain_metric(space: OrderedMetricSpace, cap: int = BRUTE_FORCE_CAP) -> ChainMetric:
    """Minimum chain length over every simple chain, by exhaustive enumeration.

    Intended as an oracle for :func:`chain_metric`; factorial in ``n``.
    """
    n = space.size
    if n > cap:
        raise SpaceTooLarge(n, cap)
    C = space.comparability()
    D = space.dist
    e = np.full((n, n), INF)
    for s in range(n):
        e[s, s] = 0.0
        path = [s]
        on_path = [False] * n
        on_path[s] = True
        steps: list[float] = []

        def extend(u):
            for v in range(n):
                if on_path[v] or not C[u, v]:
                    continue
                steps.append(float(D[u, v]))
                length = math.fsum(sorted(steps))
                if length < e[s, v]:
                    e[s, v] = length
                on_path[v] = True
                path.append(v)
                extend(v)
                path.pop()
                on_path[v] = False
                steps.pop()

        extend(s)
    e.setflags(write=False)
    return ChainMetric(e)
