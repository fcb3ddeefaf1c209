"""Finite metric spaces, (quasi-)orders and self-maps.

All containers are frozen and hold read-only numpy arrays, so they can be
shared freely between threads and across checks.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    AntisymmetryViolation,
    Asymmetric,
    DuplicatePoint,
    InvalidPoint,
    NegativeDistance,
    NonFiniteDistance,
    NonzeroDiagonal,
    NotAnOrder,
    NotSquare,
    SizeMismatch,
    TriangleViolation,
    ZeroDistanceDistinct,
)

DEFAULT_TOL = 1e-9


class OrderKind(str, Enum):
    QUASI = "quasi"
    PARTIAL = "partial"


class Norm(str, Enum):
    EUCLIDEAN = "euclidean"
    MANHATTAN = "manhattan"
    CHEBYSHEV = "chebyshev"


def _frozen(a, dtype):
    a = np.array(a, dtype=dtype, copy=True)
    a.setflags(write=False)
    return a


def check_point(n: int, x) -> int:
    """Return ``x`` as an int, or raise InvalidPoint if it is not an id in ``range(n)``."""
    if isinstance(x, (bool, np.bool_)) or not isinstance(x, (int, np.integer)):
        raise InvalidPoint(x, n)
    if not 0 <= x < n:
        raise InvalidPoint(int(x), n)
    return int(x)


@dataclass(frozen=True, eq=False)
class FiniteMetric:
    """A validated distance matrix. Build it with :func:`validate_metric`."""

    dist: np.ndarray
    tol: float = DEFAULT_TOL

    @property
    def size(self) -> int:
        return self.dist.shape[0]

    @property
    def matrix(self) -> np.ndarray:
        return self.dist

    def __call__(self, i: int, j: int) -> float:
        return float(self.dist[i, j])


@dataclass(frozen=True, eq=False)
class OrderRelation:
    """Dense boolean matrix ``leq[i, j] == (i <= j)``. Build it with :func:`close_order`."""

    leq: np.ndarray
    kind: OrderKind = OrderKind.PARTIAL

    @property
    def size(self) -> int:
        return self.leq.shape[0]

    def pairs(self) -> list[tuple[int, int]]:
        """All related pairs ``(i, j)`` with ``i != j``, in lexicographic order."""
        ii, jj = np.nonzero(self.leq)
        return [(int(i), int(j)) for i, j in zip(ii, jj) if i != j]


@dataclass(frozen=True, eq=False)
class OrderedMetricSpace:
    metric: FiniteMetric
    order: OrderRelation
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.metric.size != self.order.size:
            raise SizeMismatch("order", self.metric.size, self.order.size)
        if self.names is not None:
            if len(self.names) != self.metric.size:
                raise SizeMismatch("names", self.metric.size, len(self.names))
            object.__setattr__(self, "names", tuple(str(s) for s in self.names))

    @property
    def size(self) -> int:
        return self.metric.size

    @property
    def dist(self) -> np.ndarray:
        return self.metric.dist

    @property
    def leq(self) -> np.ndarray:
        return self.order.leq

    @property
    def tol(self) -> float:
        return self.metric.tol

    def name(self, i: int) -> str:
        return self.names[i] if self.names is not None else str(i)

    def comparability(self) -> np.ndarray:
        """Boolean matrix of the comparability relation."""
        return self.leq | self.leq.T


class SelfMap:
    """A total map on ``range(size)``, stored as a read-only image array."""

    __slots__ = ("image",)

    def __init__(self, image: Iterable[int], size: int | None = None):
        img = np.asarray(list(image), dtype=np.int64)
        n = len(img) if size is None else size
        if len(img) != n:
            raise SizeMismatch("map", n, len(img))
        for v in img:
            check_point(n, int(v))
        img.setflags(write=False)
        object.__setattr__(self, "image", img)

    def __setattr__(self, name, value):
        raise AttributeError("SelfMap is immutable")

    @property
    def size(self) -> int:
        return len(self.image)

    def __call__(self, x: int) -> int:
        return int(self.image[x])

    def __eq__(self, other):
        return isinstance(other, SelfMap) and np.array_equal(self.image, other.image)

    def __hash__(self):
        return hash(tuple(self.image.tolist()))

    def __repr__(self):
        return f"SelfMap({self.image.tolist()})"

    @classmethod
    def identity(cls, n: int) -> "SelfMap":
        return cls(range(n))

    @classmethod
    def constant(cls, n: int, c: int) -> "SelfMap":
        check_point(n, c)
        return cls([c] * n)


def check_map(space: OrderedMetricSpace, T: SelfMap) -> None:
    if T.size != space.size:
        raise SizeMismatch("map", space.size, T.size)


def validate_metric(matrix, tol: float = DEFAULT_TOL) -> FiniteMetric:
    """Check the metric axioms and wrap ``matrix`` as a :class:`FiniteMetric`.

    Checks run in a fixed order (shape, finiteness, diagonal, sign, symmetry,
    sufficiency, triangle) and the first failing axiom is raised. For the
    triangle inequality the worst defect is reported, ties going to the
    lexicographically smallest ``(i, j, k)``.
    """
    D = np.asarray(matrix, dtype=float)
    if D.ndim != 2 or D.shape[0] != D.shape[1]:
        raise NotSquare(D.shape)
    n = D.shape[0]
    bad = np.argwhere(~np.isfinite(D))
    if len(bad):
        i, j = map(int, bad[0])
        raise NonFiniteDistance(i, j, float(D[i, j]))
    for i in range(n):
        if D[i, i] != 0.0:
            raise NonzeroDiagonal(i, float(D[i, i]))
    bad = np.argwhere(D < 0)
    if len(bad):
        i, j = map(int, bad[0])
        raise NegativeDistance(i, j, float(D[i, j]))
    bad = np.argwhere(D != D.T)
    if len(bad):
        i, j = map(int, bad[0])
        raise Asymmetric(i, j, float(D[i, j]), float(D[j, i]))
    bad = np.argwhere((D == 0) & ~np.eye(n, dtype=bool))
    if len(bad):
        i, j = map(int, bad[0])
        raise ZeroDistanceDistinct(i, j)
    if n:
        # worst[i, j] = max_k d(i,j) - d(i,k) - d(k,j), first maximising k kept
        worst = np.full((n, n), -np.inf)
        arg = np.zeros((n, n), dtype=np.int64)
        for k in range(n):
            defect = D - D[:, k : k + 1] - D[k : k + 1, :]
            better = defect > worst
            worst[better] = defect[better]
            arg[better] = k
        flat = int(np.argmax(worst))
        i, j = divmod(flat, n)
        if worst[i, j] > tol:
            raise TriangleViolation(i, j, int(arg[i, j]), float(worst[i, j]))
    return FiniteMetric(_frozen(D, float), float(tol))


def metric_from_embedding(coords, norm: Norm | str = Norm.EUCLIDEAN, tol: float = DEFAULT_TOL) -> FiniteMetric:
    """Metric induced by a norm on the rows of ``coords`` (shape ``n x k``)."""
    X = np.asarray(coords, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    if X.ndim != 2 or (len(X) and X.shape[1] < 1):
        raise ValueError(f"coords must be an n x k array with k >= 1, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise ValueError("coords must be finite")
    norm = Norm(norm)
    n = len(X)
    for i in range(n):
        for j in range(i + 1, n):
            if np.array_equal(X[i], X[j]):
                raise DuplicatePoint(i, j)
    diff = np.abs(X[:, None, :] - X[None, :, :])
    if norm is Norm.EUCLIDEAN:
        D = np.sqrt(np.sum(diff * diff, axis=-1))
    elif norm is Norm.MANHATTAN:
        D = np.sum(diff, axis=-1)
    else:
        D = np.max(diff, axis=-1) if n else np.zeros((0, 0))
    D = np.maximum(D, D.T)  # exact symmetry despite rounding
    np.fill_diagonal(D, 0.0)
    return validate_metric(D, tol)


def transitive_closure(rel: np.ndarray) -> np.ndarray:
    """Reflexive-transitive closure of a boolean relation (Warshall)."""
    R = np.array(rel, dtype=bool, copy=True)
    n = len(R)
    R[np.arange(n), np.arange(n)] = True
    for k in range(n):
        R |= R[:, k : k + 1] & R[k : k + 1, :]
    return R


def close_order(pairs: Iterable[Sequence[int]], n: int, kind: OrderKind | str = OrderKind.PARTIAL) -> OrderRelation:
    """Smallest quasi-order on ``range(n)`` containing ``pairs`` (read as ``i <= j``).

    With ``kind="partial"`` a closure that relates two distinct points both
    ways is rejected with :class:`AntisymmetryViolation`.
    """
    kind = OrderKind(kind)
    R = np.zeros((n, n), dtype=bool)
    for p in pairs:
        i, j = p
        R[check_point(n, i), check_point(n, j)] = True
    R = transitive_closure(R)
    if kind is OrderKind.PARTIAL:
        both = np.argwhere(R & R.T & ~np.eye(n, dtype=bool))
        if len(both):
            i, j = map(int, both[0])
            raise AntisymmetryViolation(i, j)
    return OrderRelation(_frozen(R, bool), kind)


def order_from_matrix(leq, kind: OrderKind | str = OrderKind.PARTIAL) -> OrderRelation:
    """Wrap an explicit relation matrix, checking it is already a (quasi-/partial) order."""
    kind = OrderKind(kind)
    R = np.asarray(leq, dtype=bool)
    if R.ndim != 2 or R.shape[0] != R.shape[1]:
        raise NotSquare(R.shape)
    n = len(R)
    for i in range(n):
        if not R[i, i]:
            raise NotAnOrder("not reflexive", i=i)
    closed = transitive_closure(R)
    bad = np.argwhere(closed & ~R)
    if len(bad):
        i, k = map(int, bad[0])
        raise NotAnOrder("not transitive", i=i, k=k)
    if kind is OrderKind.PARTIAL:
        both = np.argwhere(R & R.T & ~np.eye(n, dtype=bool))
        if len(both):
            i, j = map(int, both[0])
            raise AntisymmetryViolation(i, j)
    return OrderRelation(_frozen(R, bool), kind)


def comparable(space: OrderedMetricSpace, x: int, y: int) -> bool:
    """``x <> y``: either ``x <= y`` or ``y <= x``."""
    n = space.size
    x, y = check_point(n, x), check_point(n, y)
    return bool(space.leq[x, y] or space.leq[y, x])


def make_space(
    dist,
    pairs: Iterable[Sequence[int]] = (),
    kind: OrderKind | str = OrderKind.PARTIAL,
    names: Sequence[str] | None = None,
    tol: float = DEFAULT_TOL,
) -> OrderedMetricSpace:
    """Convenience constructor: validate ``dist`` and close ``pairs``."""
    metric = validate_metric(dist, tol)
    return OrderedMetricSpace(metric, close_order(pairs, metric.size, kind), names)


def line_space(
    points: Sequence[float],
    pairs: Iterable[Sequence[int]] = (),
    kind: OrderKind | str = OrderKind.PARTIAL,
    tol: float = DEFAULT_TOL,
    names: Sequence[str] | None = None,
) -> OrderedMetricSpace:
    """Points on the real line with ``|a - b|``; handy for examples and tests."""
    metric = metric_from_embedding(np.asarray(points, dtype=float)[:, None], Norm.EUCLIDEAN, tol)
    return OrderedMetricSpace(metric, close_order(pairs, metric.size, kind), names)


def total_order_pairs(order: Sequence[int]) -> list[tuple[int, int]]:
    """Consecutive pairs making ``order[0] <= order[1] <= ...`` a chain."""
    return [(order[i], order[i + 1]) for i in range(len(order) - 1)]
