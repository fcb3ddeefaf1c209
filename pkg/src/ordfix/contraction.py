"""Contraction and monotonicity checks for a self-map of a finite space.

Every check scans all relevant point pairs. Failures carry a
:class:`Witness`, the lexicographically first violating ``(x, y)``, which
:func:`recheck_witness` can re-evaluate independently of the scan.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, NonMonotoneProfile
from .space import DEFAULT_TOL, OrderedMetricSpace, SelfMap, check_map

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
INV_SQRT2 = 2.0 ** -0.5


class ContractionKind(str, Enum):
    ORDERED_D = "ordered_d"
    GLOBAL_E = "global_e"
    SUZUKI_F = "suzuki_F"
    WEAK_G = "weak_G"
    COMPARISON_PROFILE = "comparison_profile"


class Monotonicity(str, Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"
    NEITHER = "neither"
    BOTH = "both"

    @property
    def monotone(self) -> bool:
        return self is not Monotonicity.NEITHER


@dataclass(frozen=True)
class Witness:
    """A pair ``(x, y)`` where ``lhs <= rhs`` was required but fails.

    ``reason`` is ``"ratio"`` for factor checks, ``"conclusion"`` for the
    conditional checks (then ``premise`` holds the premise's two sides) and
    ``"extended"`` when ``rhs`` is infinite because x and y are in different
    chain components.
    """

    x: int
    y: int
    lhs: float
    rhs: float
    reason: str = "ratio"
    premise: tuple[float, float] | None = None

    def to_dict(self) -> dict:
        d = {"x": self.x, "y": self.y, "lhs": self.lhs, "rhs": self.rhs, "reason": self.reason}
        if self.premise is not None:
            d["premise"] = list(self.premise)
        return d


@dataclass(frozen=True)
class ContractionReport:
    kind: ContractionKind
    alpha_star: float
    eligible_pairs: int
    verdict: bool
    alpha: float | None = None
    witness: Witness | None = None
    tol: float = DEFAULT_TOL
    extended_regime: bool = False
    # side-by-side reading of the weak G premise with d(y, Ty); None unless requested
    variant_verdict: bool | None = None
    variant_witness: Witness | None = None

    def to_dict(self) -> dict:
        d = {
            "kind": self.kind.value,
            "alpha_star": self.alpha_star,
            "eligible_pairs": self.eligible_pairs,
            "alpha": self.alpha,
            "verdict": self.verdict,
            "witness": self.witness.to_dict() if self.witness else None,
            "tol": self.tol,
            "extended_regime": self.extended_regime,
        }
        if self.variant_verdict is not None:
            d["variant_verdict"] = self.variant_verdict
            d["variant_witness"] = self.variant_witness.to_dict() if self.variant_witness else None
        return d


def _image_matrix(D: np.ndarray, T: SelfMap) -> np.ndarray:
    img = T.image
    return D[np.ix_(img, img)]


def _max_ratio(num: np.ndarray, den: np.ndarray, mask: np.ndarray):
    """Largest ``num/den`` over ``mask``; returns (ratio, (x, y)) with ties to the smallest pair."""
    if not mask.any():
        return 0.0, None
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(mask, num / den, -1.0)
    best = float(ratio.max())
    x, y = map(int, np.argwhere(ratio == best)[0])
    return best, (x, y)


def _factor_report(kind, D, DT, mask, alpha, tol, extended=None):
    alpha_star, pair = _max_ratio(DT, D, mask)
    if alpha is None:
        ok_ratio = alpha_star < 1.0
        scale = 1.0
    else:
        ok_ratio = alpha_star <= alpha + tol
        scale = alpha
    witness = None
    if not ok_ratio:
        x, y = pair
        witness = Witness(x, y, float(DT[x, y]), scale * float(D[x, y]))
    ext = extended is not None and bool(extended.any())
    if ok_ratio and ext:
        x, y = map(int, np.argwhere(extended)[0])
        witness = Witness(x, y, float(DT[x, y]), math.inf, reason="extended")
    return ContractionReport(
        kind=kind,
        alpha_star=alpha_star,
        eligible_pairs=int(mask.sum()),
        verdict=ok_ratio and not ext,
        alpha=alpha,
        witness=witness,
        tol=tol,
        extended_regime=ext,
    )


def ordered_contraction_factor(
    space: OrderedMetricSpace, T: SelfMap, alpha: float | None = None, tol: float | None = None
) -> ContractionReport:
    """Best ``alpha`` with ``d(Tx, Ty) <= alpha d(x, y)`` for all ``x <= y``.

    Without ``alpha`` the verdict says whether ``T`` is contractive on
    ordered pairs (``alpha_star < 1``); with ``alpha`` it says whether that
    particular factor works, up to ``tol``.
    """
    check_map(space, T)
    tol = space.tol if tol is None else tol
    D = space.dist
    mask = space.leq & (D > 0)
    return _factor_report(ContractionKind.ORDERED_D, D, _image_matrix(D, T), mask, alpha, tol)


def global_contraction_factor(metric, T: SelfMap, alpha: float | None = None, tol: float = DEFAULT_TOL) -> ContractionReport:
    """Best ``alpha`` with ``m(Tx, Ty) <= alpha m(x, y)`` over every pair.

    ``metric`` may be a :class:`~ordfix.space.FiniteMetric`, a
    :class:`~ordfix.chain.ChainMetric` or a bare matrix. Pairs at infinite
    distance put no bound on the factor but mark the report as being in the
    extended-metric regime, which makes the verdict false: contraction is
    only meaningful for a genuine metric.
    """
    M = np.asarray(getattr(metric, "matrix", metric), dtype=float)
    if T.size != len(M):
        raise ValueError(f"map size {T.size} does not match metric size {len(M)}")
    MT = _image_matrix(M, T)
    finite = np.isfinite(M)
    mask = finite & (M > 0)
    return _factor_report(ContractionKind.GLOBAL_E, M, MT, mask, alpha, tol, extended=~finite)


def is_monotone(space: OrderedMetricSpace, T: SelfMap) -> Monotonicity:
    check_map(space, T)
    L = space.leq
    LT = _image_matrix(L, T)
    inc = bool(np.all(LT[L]))
    dec = bool(np.all(LT.T[L]))
    if inc and dec:
        return Monotonicity.BOTH
    if inc:
        return Monotonicity.INCREASING
    if dec:
        return Monotonicity.DECREASING
    return Monotonicity.NEITHER


def comparability_violation(space: OrderedMetricSpace, T: SelfMap) -> tuple[int, int] | None:
    """First comparable pair whose images are incomparable, if any."""
    check_map(space, T)
    C = space.comparability()
    bad = np.argwhere(C & ~_image_matrix(C, T))
    return (int(bad[0][0]), int(bad[0][1])) if len(bad) else None


def is_comparability_increasing(space: OrderedMetricSpace, T: SelfMap) -> bool:
    """Whether comparable points always have comparable images."""
    return comparability_violation(space, T) is None


def suzuki_F(t: float) -> float:
    """Suzuki's threshold function: 1, then (1-t)/t**2, then 1/(1+t)."""
    if not t >= 0:
        raise DomainError("suzuki_F", t)
    if t <= GOLDEN:
        return 1.0
    if t <= INV_SQRT2:
        return (1.0 - t) / (t * t)
    return 1.0 / (1.0 + t)


def suzuki_G(t: float) -> float:
    if not t > 0:
        raise DomainError("suzuki_G", t)
    return 1.0 / (1.0 + t)


def _conditional_report(kind, D, DT, premise_lhs, premise, alpha, tol):
    concl = DT <= alpha * D + tol
    eligible = premise & (D > 0)
    alpha_star, _ = _max_ratio(DT, D, eligible)
    bad = np.argwhere(premise & ~concl)
    witness = None
    if len(bad):
        x, y = map(int, bad[0])
        witness = Witness(
            x, y, float(DT[x, y]), alpha * float(D[x, y]),
            reason="conclusion", premise=(float(premise_lhs[x, y]), float(D[x, y])),
        )
    return ContractionReport(
        kind=kind,
        alpha_star=alpha_star,
        eligible_pairs=int(premise.sum()),
        verdict=witness is None,
        alpha=alpha,
        witness=witness,
        tol=tol,
    )


def check_conditional_F_contractive(
    space: OrderedMetricSpace, T: SelfMap, alpha: float, tol: float | None = None
) -> ContractionReport:
    """Test ``F(a) d(x,Tx) <= d(x,y)  =>  d(Tx,Ty) <= a d(x,y)`` on every directed pair."""
    if not 0 <= alpha < 1:
        raise ValueError(f"alpha must lie in [0, 1), got {alpha}")
    check_map(space, T)
    tol = space.tol if tol is None else tol
    D = space.dist
    n = space.size
    to_image = D[np.arange(n), T.image]
    lhs = np.repeat((suzuki_F(alpha) * to_image)[:, None], n, axis=1)
    premise = lhs <= D + tol
    return _conditional_report(ContractionKind.SUZUKI_F, D, _image_matrix(D, T), lhs, premise, alpha, tol)


def check_weak_conditional_G_contractive(
    space: OrderedMetricSpace,
    T: SelfMap,
    alpha: float,
    tol: float | None = None,
    compare_variant: bool = False,
) -> ContractionReport:
    """Test the weak ordered condition on every directed comparable pair:

        x <> y  and  G(a) max{d(x,Tx), d(y,Tx)} <= d(x,y)  =>  d(Tx,Ty) <= a d(x,y)

    Both arguments of the max use ``Tx`` as written. With
    ``compare_variant=True`` the reading with ``d(y, Ty)`` in place of
    ``d(y, Tx)`` is evaluated too and returned in ``variant_verdict``.
    """
    if not 0 < alpha < 1:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    check_map(space, T)
    tol = space.tol if tol is None else tol
    D = space.dist
    n = space.size
    img = T.image
    C = space.comparability()
    DT = _image_matrix(D, T)
    g = suzuki_G(alpha)
    x_to_tx = D[np.arange(n), img][:, None]
    y_to_tx = D[:, img].T  # [x, y] -> d(y, Tx)
    lhs = g * np.maximum(x_to_tx, y_to_tx)
    report = _conditional_report(ContractionKind.WEAK_G, D, DT, lhs, C & (lhs <= D + tol), alpha, tol)
    if compare_variant:
        y_to_ty = D[np.arange(n), img][None, :]
        lhs2 = g * np.maximum(x_to_tx, y_to_ty)
        alt = _conditional_report(ContractionKind.WEAK_G, D, DT, lhs2, C & (lhs2 <= D + tol), alpha, tol)
        report = ContractionReport(
            **{**report.__dict__, "variant_verdict": alt.verdict, "variant_witness": alt.witness}
        )
    return report


def recheck_witness(report: ContractionReport, space: OrderedMetricSpace, T: SelfMap, metric=None) -> bool:
    """Recompute a witness from scratch; True iff it still shows a violation with the same sides.

    ``metric`` is needed for global reports computed over something other
    than the space's own distance.
    """
    w = report.witness
    if w is None:
        return False
    M = np.asarray(getattr(metric, "matrix", metric), dtype=float) if metric is not None else space.dist
    x, y = w.x, w.y
    Tx, Ty = T(x), T(y)
    lhs = float(M[Tx, Ty])
    if w.reason == "extended":
        return math.isinf(M[x, y]) and _close(lhs, w.lhs)
    a = 1.0 if report.alpha is None else report.alpha
    rhs = a * float(M[x, y])
    if not (_close(lhs, w.lhs) and _close(rhs, w.rhs)):
        return False
    if w.reason == "ratio":
        ratio = lhs / float(M[x, y])
        return ratio >= 1.0 if report.alpha is None else ratio > report.alpha + report.tol
    # conditional: premise must hold and conclusion fail
    d_xy = float(M[x, y])
    if report.kind is ContractionKind.SUZUKI_F:
        plhs = suzuki_F(a) * float(M[x, Tx])
    else:
        if not comparable_pair(space, x, y):
            return False
        plhs = suzuki_G(a) * max(float(M[x, Tx]), float(M[y, Tx]))
    return plhs <= d_xy + report.tol and lhs > rhs + report.tol


def comparable_pair(space: OrderedMetricSpace, x: int, y: int) -> bool:
    return bool(space.leq[x, y] or space.leq[y, x])


def _close(a: float, b: float, tol: float = 1e-12) -> bool:
    return a == b or abs(a - b) <= tol


def _passes(kind: ContractionKind, space, T, alpha, tol, chain=None) -> bool:
    if kind is ContractionKind.ORDERED_D:
        return ordered_contraction_factor(space, T, alpha, tol).verdict
    if kind is ContractionKind.GLOBAL_E:
        return global_contraction_factor(chain, T, alpha, space.tol if tol is None else tol).verdict
    if kind is ContractionKind.SUZUKI_F:
        return check_conditional_F_contractive(space, T, alpha, tol).verdict
    if kind is ContractionKind.WEAK_G:
        return check_weak_conditional_G_contractive(space, T, alpha, tol).verdict
    raise ValueError(f"minimal_alpha does not support kind {kind.value!r}")


def alpha_grid(step: float) -> list[float]:
    """``step, 2*step, ...`` up to ``1 - step``; exact fractions when ``1/step`` is whole."""
    if not step > 0:
        raise ValueError("grid_step must be positive")
    inv = 1.0 / step
    N = round(inv)
    if abs(inv - N) < 1e-9:
        return [k / N for k in range(1, N)]
    out, k = [], 1
    while k * step <= 1.0 - step + 1e-15:
        out.append(k * step)
        k += 1
    return out


def minimal_alpha(
    space: OrderedMetricSpace,
    T: SelfMap,
    kind: ContractionKind | str = ContractionKind.ORDERED_D,
    grid_step: float = 1e-3,
    tol: float | None = None,
) -> float | None:
    """Smallest grid value of ``alpha`` at which the chosen check passes, or None.

    One bisection step between the last failing and the first passing grid
    point refines the answer. This is a grid search: for the conditional
    checks feasibility is not monotone in ``alpha``, so no global minimality
    is claimed.
    """
    kind = ContractionKind(kind)
    chain = None
    if kind is ContractionKind.GLOBAL_E:
        from .chain import chain_metric

        chain = chain_metric(space)
    prev = None
    for a in alpha_grid(grid_step):
        if _passes(kind, space, T, a, tol, chain):
            if prev is not None:
                mid = 0.5 * (prev + a)
                if _passes(kind, space, T, mid, tol, chain):
                    return mid
            return a
        prev = a
    return None


@dataclass(frozen=True)
class StepFunction:
    """Right-continuous step function: ``values[k]`` on ``[breakpoints[k], breakpoints[k+1])``.

    Below the first breakpoint the function is 0.
    """

    breakpoints: tuple[float, ...]
    values: tuple[float, ...]

    def __post_init__(self):
        if len(self.breakpoints) != len(self.values):
            raise ValueError("breakpoints and values must have equal length")
        if any(b >= c for b, c in zip(self.breakpoints, self.breakpoints[1:])):
            raise ValueError("breakpoints must be strictly ascending")

    def __call__(self, t: float) -> float:
        k = int(np.searchsorted(self.breakpoints, t, side="right")) - 1
        return 0.0 if k < 0 else self.values[k]

    def is_monotone(self) -> bool:
        return all(a <= b for a, b in zip(self.values, self.values[1:]))


def comparison_profile(space: OrderedMetricSpace, T: SelfMap) -> StepFunction:
    """``f(t) = max{d(Tx,Ty) : x <= y, d(x,y) <= t}`` as an exact step function."""
    check_map(space, T)
    D = space.dist
    L = space.leq
    dists = D[L]
    imgs = _image_matrix(D, T)[L]
    order = np.argsort(dists, kind="stable")
    dists, imgs = dists[order], np.maximum.accumulate(imgs[order])
    bps, vals = [], []
    for d, v in zip(dists.tolist(), imgs.tolist()):
        if bps and bps[-1] == d:
            vals[-1] = v
        else:
            bps.append(d)
            vals.append(v)
    return StepFunction(tuple(bps), tuple(vals))


@dataclass(frozen=True)
class PropertyPResult:
    holds: bool
    iterations: tuple[int | None, ...]
    consistency_errors: tuple[float, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "iterations": list(self.iterations),
            "consistency_errors": list(self.consistency_errors),
        }


def check_property_P(
    f: StepFunction | Callable[[float], float],
    samples: Sequence[float],
    max_iters: int = 1000,
    tol: float = 1e-9,
) -> PropertyPResult:
    """Iterate ``t <- f(t)`` from each sample and see whether it drops below ``tol``.

    ``iterations[k]`` counts applications of ``f`` until the value is below
    ``tol`` (None if ``max_iters`` ran out). If all samples converge, every
    sample must also satisfy ``f(t) < t``; samples where it does not are
    listed in ``consistency_errors``, which would indicate a broken profile.
    """
    if isinstance(f, StepFunction) and not f.is_monotone():
        k = next(i for i, (a, b) in enumerate(zip(f.values, f.values[1:])) if a > b)
        raise NonMonotoneProfile(k + 1)
    counts: list[int | None] = []
    for t0 in samples:
        if not t0 > 0:
            raise ValueError(f"samples must be positive, got {t0}")
        t, k = t0, 0
        while t >= tol and k < max_iters:
            t = f(t)
            k += 1
        counts.append(k if t < tol else None)
    holds = all(c is not None for c in counts)
    errors = tuple(t for t in samples if f(t) >= t) if holds else ()
    return PropertyPResult(holds, tuple(counts), errors)
