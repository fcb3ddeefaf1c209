"""Picard iteration on finite spaces.

On a finite set every orbit is eventually periodic, so "convergent" means
eventually constant and the limit is either a fixed point or a cycle.
Convergence is decided on point ids, never on distances.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .space import OrderedMetricSpace, SelfMap, check_map, check_point

FINITE_SPACE_NOTE = "auto-satisfied (finite space)"
# witness entries holding point ids; anything else (e.g. counts) is left as is
_POINT_WITNESSES = frozenset({"plain_no_fixed_limit", "comparable_fixed_points", "ordered_bad_start", "maximality"})


@dataclass(frozen=True)
class Cycle:
    points: tuple[int, ...]

    def __len__(self):
        return len(self.points)


@dataclass(frozen=True)
class PicardResult:
    start: int
    orbit: tuple[int, ...]  # distinct iterates, stops before the first repeat
    limit: int | Cycle
    reached_fixed_point: bool
    steps_to_limit: int
    ascending: bool
    limit_dominates: bool

    @property
    def fixed_point(self) -> int | None:
        return self.limit if self.reached_fixed_point else None

    def to_dict(self, names=None) -> dict:
        nm = (lambda i: names[i]) if names else (lambda i: i)
        limit = nm(self.limit) if self.reached_fixed_point else {"cycle": [nm(p) for p in self.limit.points]}
        return {
            "start": nm(self.start),
            "orbit": [nm(p) for p in self.orbit],
            "limit": limit,
            "reached_fixed_point": self.reached_fixed_point,
            "steps_to_limit": self.steps_to_limit,
            "ascending": self.ascending,
            "limit_dominates": self.limit_dominates,
        }


def picard_orbit(space: OrderedMetricSpace, T: SelfMap, x0: int) -> PicardResult:
    """Iterate ``T`` from ``x0`` until a point repeats (at most ``n`` steps)."""
    check_map(space, T)
    x0 = check_point(space.size, x0)
    seen: dict[int, int] = {}
    orbit: list[int] = []
    x = x0
    while x not in seen:
        seen[x] = len(orbit)
        orbit.append(x)
        x = T(x)
    entry = seen[x]
    L = space.leq
    # the infinite sequence is orbit followed by orbit[entry:] repeated, so
    # consecutive steps inside the prefix plus the wrap-around step suffice
    steps_ok = all(L[a, b] for a, b in zip(orbit, orbit[1:])) and bool(L[orbit[-1], x])
    if entry == len(orbit) - 1:
        z = orbit[-1]
        return PicardResult(
            start=x0,
            orbit=tuple(orbit),
            limit=z,
            reached_fixed_point=True,
            steps_to_limit=entry,
            ascending=steps_ok,
            limit_dominates=all(L[p, z] for p in orbit),
        )
    return PicardResult(
        start=x0,
        orbit=tuple(orbit),
        limit=Cycle(tuple(orbit[entry:])),
        reached_fixed_point=False,
        steps_to_limit=entry,
        ascending=steps_ok,
        limit_dominates=False,
    )


def fixed_points(T: SelfMap) -> frozenset[int]:
    return frozenset(int(i) for i in np.flatnonzero(T.image == np.arange(T.size)))


def lower_image_set(space: OrderedMetricSpace, T: SelfMap) -> tuple[int, ...]:
    """Points below their image: ``{x : x <= Tx}``."""
    check_map(space, T)
    return tuple(int(x) for x in range(space.size) if space.leq[x, T(x)])


def comparable_image_set(space: OrderedMetricSpace, T: SelfMap) -> tuple[int, ...]:
    """Points comparable with their image: ``{x : x <> Tx}``."""
    check_map(space, T)
    L = space.leq
    return tuple(int(x) for x in range(space.size) if L[x, T(x)] or L[T(x), x])


@dataclass(frozen=True)
class OperatorClassification:
    fixed_points: frozenset[int]
    picard_plain: bool
    picard_ordered: bool
    leq_singleton: bool
    maximality_ok: bool
    lower_image_set: tuple[int, ...]
    comparable_image_set: tuple[int, ...]
    orbits: tuple[PicardResult, ...]
    witnesses: dict = field(default_factory=dict)

    def to_dict(self, names=None) -> dict:
        nm = (lambda i: names[i]) if names else (lambda i: i)
        return {
            "fixed_points": [nm(p) for p in sorted(self.fixed_points)],
            "picard_plain": self.picard_plain,
            "picard_ordered": self.picard_ordered,
            "leq_singleton": self.leq_singleton,
            "maximality_ok": self.maximality_ok,
            "lower_image_set": [nm(p) for p in self.lower_image_set],
            "comparable_image_set": [nm(p) for p in self.comparable_image_set],
            "orbits_hit_limit": True,
            "witnesses": {k: _named(v, nm) if k in _POINT_WITNESSES else v for k, v in self.witnesses.items()},
        }


def _named(v, nm):
    if isinstance(v, (list, tuple)):
        return [_named(u, nm) for u in v]
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return nm(int(v))
    return v


def _classify(space: OrderedMetricSpace, T: SelfMap) -> OperatorClassification:
    check_map(space, T)
    n = space.size
    L = space.leq
    orbits = tuple(picard_orbit(space, T, x) for x in range(n))
    fix = fixed_points(T)
    witnesses: dict = {}

    not_converging = [r.start for r in orbits if not r.reached_fixed_point]
    if not_converging:
        witnesses["plain_no_fixed_limit"] = not_converging[0]
    if len(fix) != 1:
        witnesses["plain_fix_size"] = len(fix)
    picard_plain = not not_converging and len(fix) == 1

    pair = next(((z, w) for z in sorted(fix) for w in sorted(fix) if z != w and L[z, w]), None)
    leq_singleton = pair is None
    if pair:
        witnesses["comparable_fixed_points"] = list(pair)

    lower = lower_image_set(space, T)
    bad_start = next(
        (x for x in lower if not (orbits[x].reached_fixed_point and orbits[x].limit_dominates)), None
    )
    if bad_start is not None:
        witnesses["ordered_bad_start"] = bad_start
    picard_ordered = bad_start is None and leq_singleton

    # fixed points must be maximal among points below their image
    bad_max = next(
        ((z, u) for z in sorted(fix) for u in lower if L[z, u] and not L[u, z]), None
    )
    if bad_max:
        witnesses["maximality"] = list(bad_max)

    return OperatorClassification(
        fixed_points=fix,
        picard_plain=picard_plain,
        picard_ordered=picard_ordered,
        leq_singleton=leq_singleton,
        maximality_ok=bad_max is None,
        lower_image_set=lower,
        comparable_image_set=comparable_image_set(space, T),
        orbits=orbits,
        witnesses=witnesses,
    )


def classify_plain(space: OrderedMetricSpace, T: SelfMap) -> OperatorClassification:
    """Picard operator in the metric sense: every orbit reaches the unique fixed point.

    The returned classification also carries the ordered-sense fields.
    """
    return _classify(space, T)


def classify_ordered(space: OrderedMetricSpace, T: SelfMap) -> OperatorClassification:
    """Picard operator modulo the order.

    Every ``x <= Tx`` must have an orbit ending at a fixed point that
    dominates all its iterates (including ``x`` itself), and no two distinct
    fixed points may be comparable. ``maximality_ok`` reports separately
    whether each fixed point is maximal among ``{u : u <= Tu}``.
    """
    return _classify(space, T)


@dataclass(frozen=True)
class SelfClosedReport:
    holds: bool
    checked_orbits: tuple[int, ...]
    witness: tuple[int, int] | None = None  # (start, n) with T^n start not below the limit


def check_ao_self_closed(space: OrderedMetricSpace, T: SelfMap) -> SelfClosedReport:
    """Every ascending orbit that settles at ``z`` stays below ``z``."""
    check_map(space, T)
    L = space.leq
    checked = []
    for x in range(space.size):
        r = picard_orbit(space, T, x)
        if not (r.reached_fixed_point and r.ascending):
            continue
        checked.append(x)
        for k, p in enumerate(r.orbit):
            if not L[p, r.limit]:
                return SelfClosedReport(False, tuple(checked), (x, k))
    return SelfClosedReport(True, tuple(checked))


def check_a06(space: OrderedMetricSpace, sequences=()) -> tuple[bool, str]:
    """The subsequence condition on convergent comparability-ascending sequences.

    In a finite space a convergent sequence is eventually constant at its
    limit, and that constant tail is a subsequence comparable to the limit,
    so the condition always holds. Any sequences passed in are only checked
    for valid ids.
    """
    for seq in sequences:
        for p in seq:
            check_point(space.size, p)
    return True, FINITE_SPACE_NOTE
