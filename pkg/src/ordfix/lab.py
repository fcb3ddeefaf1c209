"""Theorem validators, seeded instance generation and hypothesis-ablation search.

A validator checks each hypothesis of a fixed-point theorem on one
instance, evaluates the conclusion, and raises an alarm when every
hypothesis holds but the conclusion fails. The theorems are true, so an
alarm always means a bug (or a tolerance loose enough to make a check
meaningless).
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field, replace
from enum import Enum

import numpy as np

from .chain import ChainMetric, chain_components, chain_metric
from .contraction import (
    ContractionReport,
    Monotonicity,
    check_weak_conditional_G_contractive,
    comparability_violation,
    global_contraction_factor,
    is_monotone,
    ordered_contraction_factor,
)
from .errors import GenerationBudgetExhausted, NotApplicable
from .picard import (
    FINITE_SPACE_NOTE,
    OperatorClassification,
    check_a06,
    check_ao_self_closed,
    classify_ordered,
    classify_plain,
)
from .space import (
    DEFAULT_TOL,
    OrderedMetricSpace,
    OrderKind,
    SelfMap,
    check_map,
    close_order,
    metric_from_embedding,
    validate_metric,
)

THEOREM_HYPOTHESES = {
    "T1": ("completeness", "a02", "a03", "a04", "a05", "a06"),
    "T2": ("completeness", "a02", "a06", "b02", "b03"),
    "T5": ("c03", "c04", "c05", "ao_complete", "ao_self_closed"),
}
CONCLUSIONS = {"T1": "picard_plain", "T2": "picard_plain", "T5": "picard_ordered"}
T5_ALPHA_GRID = tuple(k / 10 for k in range(1, 10))


class Status(str, Enum):
    HOLDS = "holds"
    FAILS = "fails"
    AUTO = "auto_satisfied"
    NOT_APPLICABLE = "not_applicable"

    @property
    def ok(self) -> bool:
        return self in (Status.HOLDS, Status.AUTO)


@dataclass(frozen=True)
class Instance:
    space: OrderedMetricSpace
    map: SelfMap
    label: str = ""
    seed: int | None = None

    def __post_init__(self):
        check_map(self.space, self.map)

    @property
    def size(self) -> int:
        return self.space.size


@dataclass(frozen=True)
class HypothesisEntry:
    id: str
    status: Status
    witness: object = None
    note: str = ""

    def to_dict(self) -> dict:
        d = {"id": self.id, "status": self.status.value}
        if self.witness is not None:
            d["witness"] = self.witness
        if self.note:
            d["note"] = self.note
        return d


@dataclass(frozen=True)
class HypothesisReport:
    entries: tuple[HypothesisEntry, ...]

    def __getitem__(self, hid: str) -> HypothesisEntry:
        for e in self.entries:
            if e.id == hid:
                return e
        raise KeyError(hid)

    def ids(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.entries)

    def all_hold(self, except_: str | None = None) -> bool:
        return all(e.status.ok for e in self.entries if e.id != except_)

    def failing(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.entries if not e.status.ok)

    def to_dict(self) -> list:
        return [e.to_dict() for e in self.entries]


@dataclass(frozen=True)
class TheoremCheck:
    theorem: str
    hypotheses: HypothesisReport
    conclusion: bool
    alarm: bool
    classification: OperatorClassification
    alpha: float | None = None
    reports: dict = field(default_factory=dict)
    derived: dict = field(default_factory=dict)

    @property
    def hypotheses_hold(self) -> bool:
        return self.hypotheses.all_hold()

    def to_dict(self, names=None) -> dict:
        return {
            "theorem": self.theorem,
            "hypotheses": self.hypotheses.to_dict(),
            "hypotheses_hold": self.hypotheses_hold,
            "failing_hypotheses": list(self.hypotheses.failing()),
            "conclusion": {CONCLUSIONS[self.theorem]: self.conclusion},
            "soundness_alarm": self.alarm,
            "alpha": self.alpha,
            "contraction_reports": {k: r.to_dict() for k, r in self.reports.items()},
            "derived": self.derived,
            "classification": self.classification.to_dict(names),
        }


def _entry(hid, ok, witness=None, note=""):
    return HypothesisEntry(hid, Status.HOLDS if ok else Status.FAILS, None if ok else witness, note)


def _auto(hid, note=FINITE_SPACE_NOTE):
    return HypothesisEntry(hid, Status.AUTO, note=note)


def _contractive_entry(space, T):
    rep = ordered_contraction_factor(space, T)
    w = rep.witness.to_dict() if rep.witness else None
    return _entry("a02", rep.verdict, w, note=f"alpha_star={rep.alpha_star!r}"), rep


def _b02_entry(space, T):
    bad = comparability_violation(space, T)
    return _entry("b02", bad is None, list(bad) if bad else None)


def _b03_entry(space):
    comps = chain_components(space)
    w = [comps.components[0][0], comps.components[1][0]] if not comps.connected else None
    return _entry("b03", comps.connected, w, note=f"components={len(comps.components)}")


def bounds_violation(space: OrderedMetricSpace) -> tuple[int, int] | None:
    """First pair lacking a common lower bound or a common upper bound."""
    L = space.leq.astype(np.int64)
    lower = (L.T @ L) > 0  # [x, y]: some u <= x and u <= y
    upper = (L @ L.T) > 0
    bad = np.argwhere(~(lower & upper))
    return (int(bad[0][0]), int(bad[0][1])) if len(bad) else None


def validate_theorem2(inst: Instance) -> TheoremCheck:
    space, T = inst.space, inst.map
    a02, rep = _contractive_entry(space, T)
    a06_ok, _ = check_a06(space)
    hyps = HypothesisReport((
        _auto("completeness"),
        a02,
        _auto("a06") if a06_ok else _entry("a06", False),
        _b02_entry(space, T),
        _b03_entry(space),
    ))
    cls = classify_plain(space, T)
    alarm = hyps.all_hold() and not cls.picard_plain
    return TheoremCheck("T2", hyps, cls.picard_plain, alarm, cls, reports={"ordered_d": rep})


def validate_theorem1(inst: Instance) -> TheoremCheck:
    """Also runs both sides of the implications monotone => comparability-increasing
    and bounded pairs => chain-connected; a broken implication raises the alarm."""
    space, T = inst.space, inst.map
    a02, rep = _contractive_entry(space, T)
    cls = classify_plain(space, T)
    mono = is_monotone(space, T)
    bad_bounds = bounds_violation(space)
    b02 = _b02_entry(space, T)
    b03 = _b03_entry(space)
    hyps = HypothesisReport((
        _auto("completeness"),
        a02,
        _entry("a03", bool(cls.comparable_image_set), note=f"size={len(cls.comparable_image_set)}"),
        _entry("a04", mono.monotone, note=mono.value),
        _entry("a05", bad_bounds is None, list(bad_bounds) if bad_bounds else None),
        _auto("a06"),
    ))
    derived = {
        "a04": mono.monotone, "b02": b02.status.ok,
        "a05": bad_bounds is None, "b03": b03.status.ok,
    }
    broken = (mono.monotone and not b02.status.ok) or (bad_bounds is None and not b03.status.ok)
    derived["implications_ok"] = not broken
    alarm = broken or (hyps.all_hold() and not cls.picard_plain)
    return TheoremCheck("T1", hyps, cls.picard_plain, alarm, cls, reports={"ordered_d": rep}, derived=derived)


def validate_theorem5(inst: Instance, alpha: float | None = None, grid=T5_ALPHA_GRID) -> TheoremCheck:
    """Without ``alpha`` the weak conditional condition is tried on ``grid`` and the
    smallest passing value is reported."""
    space, T = inst.space, inst.map
    alphas = [alpha] if alpha is not None else list(grid)
    first = best = None
    for a in alphas:
        r = check_weak_conditional_G_contractive(space, T, a)
        first = first or r
        if r.verdict:
            best = r
            break
    rep = best or first
    c03 = _entry("c03", best is not None, rep.witness.to_dict() if rep.witness else None,
                 note=f"alpha={rep.alpha!r}")
    cls = classify_ordered(space, T)
    mono = is_monotone(space, T)
    inc = mono in (Monotonicity.INCREASING, Monotonicity.BOTH)
    sc = check_ao_self_closed(space, T)
    hyps = HypothesisReport((
        c03,
        _entry("c04", bool(cls.lower_image_set), note=f"size={len(cls.lower_image_set)}"),
        _entry("c05", inc, note=mono.value),
        _auto("ao_complete"),
        _entry("ao_self_closed", sc.holds, list(sc.witness) if sc.witness else None),
    ))
    alarm = hyps.all_hold() and not cls.picard_ordered
    return TheoremCheck("T5", hyps, cls.picard_ordered, alarm, cls,
                        alpha=best.alpha if best else None, reports={"weak_G": rep})


def validate(theorem: str, inst: Instance, alpha: float | None = None) -> TheoremCheck:
    if theorem == "T1":
        return validate_theorem1(inst)
    if theorem == "T2":
        return validate_theorem2(inst)
    if theorem == "T5":
        return validate_theorem5(inst, alpha)
    raise ValueError(f"unknown theorem {theorem!r}")


@dataclass(frozen=True)
class Reduction:
    chain_metric: ChainMetric
    d_report: ContractionReport
    e_report: ContractionReport
    reduction_verdict: bool | None
    not_applicable: tuple[str, ...] = ()


def reduce_to_banach(inst: Instance, strict: bool = True, tol: float | None = None) -> Reduction:
    """Recast the ordered problem as a plain contraction under the chain metric.

    The verdict is true when the map contracts the chain metric with a
    factor no worse than its factor on ordered pairs, and that factor is
    below 1. With ``strict`` a failing prerequisite raises
    :class:`NotApplicable`; otherwise it is listed and the verdict is None.
    """
    space, T = inst.space, inst.map
    tol = space.tol if tol is None else tol
    pre = validate_theorem2(inst).hypotheses
    missing = pre.failing()
    if missing and strict:
        raise NotApplicable(missing[0])
    e = chain_metric(space)
    d_rep = ordered_contraction_factor(space, T, tol=tol)
    e_rep = global_contraction_factor(e, T, tol=tol)
    verdict = None
    if not missing:
        verdict = bool(e_rep.alpha_star <= d_rep.alpha_star + tol and e_rep.alpha_star < 1.0)
    return Reduction(e, d_rep, e_rep, verdict, missing)


# ---------------------------------------------------------------------------
# generation

ORDER_MODELS = ("total", "random_dag", "lattice", "antichain")
METRIC_MODELS = ("line", "embedding", "random_repaired")
MAP_MODELS = ("constant", "monotone_rejection", "random")


@dataclass(frozen=True)
class GeneratorConfig:
    """Recipe for :func:`generate_instance`.

    ``lattice`` builds a bounded poset: a random DAG between a global bottom
    and a global top, so every pair has common lower and upper bounds.
    ``monotone_rejection`` with ``alpha_target=None`` accepts any monotone map.
    """

    n: int
    order_model: str = "random_dag"
    p: float = 0.5
    order_kind: str = "partial"
    metric_model: str = "line"
    dim: int = 2
    norm: str = "euclidean"
    map_model: str = "monotone_rejection"
    alpha_target: float | None = 0.8
    increasing_only: bool = False
    retry_budget: int = 10_000
    min_gap: float = 1e-3
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if not 0 <= self.p <= 1:
            raise ValueError("p must lie in [0, 1]")
        if self.order_model not in ORDER_MODELS:
            raise ValueError(f"order_model must be one of {ORDER_MODELS}")
        if self.metric_model not in METRIC_MODELS:
            raise ValueError(f"metric_model must be one of {METRIC_MODELS}")
        if self.map_model not in MAP_MODELS:
            raise ValueError(f"map_model must be one of {MAP_MODELS}")
        OrderKind(self.order_kind)

    def to_dict(self) -> dict:
        return asdict(self)


def _sample_pairs(cfg: GeneratorConfig, rng: np.random.Generator) -> list[tuple[int, int]]:
    n = cfg.n
    if cfg.order_model == "antichain":
        return []
    if cfg.order_model == "total":
        perm = rng.permutation(n).tolist()
        return [(perm[i], perm[i + 1]) for i in range(n - 1)]
    lo, hi = (1, n - 1) if cfg.order_model == "lattice" else (0, n)
    pairs = []
    for i in range(lo, hi):
        for j in range(i + 1, hi):
            if rng.random() < cfg.p:
                pairs.append((i, j))
                if cfg.order_kind == "quasi" and rng.random() < 0.25:
                    pairs.append((j, i))
    if cfg.order_model == "lattice" and n >= 2:
        pairs += [(0, j) for j in range(1, n)] + [(j, n - 1) for j in range(n - 1)]
    return pairs


def _sample_metric(cfg: GeneratorConfig, rng: np.random.Generator):
    n = cfg.n
    if cfg.metric_model == "line":
        pts = rng.choice(8 * n, size=n, replace=False) / 4.0
        return metric_from_embedding(pts[:, None], "euclidean", cfg.tol)
    if cfg.metric_model == "embedding":
        for _ in range(100):
            X = rng.random((n, cfg.dim))
            diff = np.abs(X[:, None, :] - X[None, :, :]).max(axis=-1) + np.eye(n)
            if diff.min() >= cfg.min_gap:
                return metric_from_embedding(X, cfg.norm, cfg.tol)
        raise GenerationBudgetExhausted(cfg, None)
    A = rng.random((n, n))
    while True:
        small = A < cfg.min_gap
        if not small.any():
            break
        A[small] = rng.random(int(small.sum()))
    A = np.triu(A, 1)
    A = A + A.T
    for k in range(n):  # shortest-path closure enforces the triangle inequality
        A = np.minimum(A, A[:, k : k + 1] + A[k : k + 1, :])
    return validate_metric(A, cfg.tol)


def _sample_monotone(L: np.ndarray, rng: np.random.Generator, increasing: bool) -> np.ndarray | None:
    """One greedy pass assigning images along a linear extension; None on a dead end."""
    n = len(L)
    target = L if increasing else L.T
    allowed = np.zeros(n, dtype=bool)
    allowed[rng.choice(n, size=int(rng.integers(1, n + 1)), replace=False)] = True
    img = np.full(n, -1, dtype=np.int64)
    for x in sorted(range(n), key=lambda v: (int(L[:, v].sum()), v)):
        ok = np.ones(n, dtype=bool)
        for u in np.flatnonzero(img >= 0):
            if L[u, x]:
                ok &= target[img[u], :]
            if L[x, u]:
                ok &= target[:, img[u]]
        cand = np.flatnonzero(ok & allowed)
        if not len(cand):
            cand = np.flatnonzero(ok)
        if not len(cand):
            return None
        img[x] = rng.choice(cand)
    return img


def generate_instance(cfg: GeneratorConfig, seed: int) -> Instance:
    """Deterministic in ``(cfg, seed)``."""
    rng = np.random.default_rng(seed)
    n = cfg.n
    order = close_order(_sample_pairs(cfg, rng), n, cfg.order_kind)
    metric = _sample_metric(cfg, rng)
    space = OrderedMetricSpace(metric, order, tuple(f"p{i}" for i in range(n)))
    label = f"{cfg.order_model}/{cfg.metric_model}/{cfg.map_model}"
    if n == 1:
        return Instance(space, SelfMap([0]), label, seed)
    if cfg.map_model == "constant":
        return Instance(space, SelfMap.constant(n, int(rng.integers(n))), label, seed)
    if cfg.map_model == "random":
        return Instance(space, SelfMap(rng.integers(n, size=n).tolist()), label, seed)
    for _ in range(cfg.retry_budget):
        increasing = cfg.increasing_only or bool(rng.random() < 0.5)
        img = _sample_monotone(order.leq, rng, increasing)
        if img is None:
            continue
        T = SelfMap(img.tolist())
        if cfg.alpha_target is None or ordered_contraction_factor(space, T).alpha_star < cfg.alpha_target:
            return Instance(space, T, label, seed)
    raise GenerationBudgetExhausted(cfg, seed)


# ---------------------------------------------------------------------------
# counterexample search


@dataclass(frozen=True)
class SearchWitness:
    instance: Instance
    dropped_hypothesis: str
    violated_conclusion: str
    evidence: TheoremCheck
    index: int = 0

    @property
    def alarm(self) -> bool:
        return self.evidence.alarm


def _search_config(theorem: str, rng: np.random.Generator, n_range: tuple[int, int]) -> GeneratorConfig:
    n = int(rng.integers(n_range[0], n_range[1] + 1))
    order_model = ORDER_MODELS[int(rng.choice(4, p=[0.25, 0.45, 0.2, 0.1]))]
    metric_model = METRIC_MODELS[int(rng.integers(3))]
    u = rng.random()
    if u < 0.45:
        map_model, target = "monotone_rejection", float(rng.choice([0.5, 0.8, 0.95]))
    elif u < 0.7:
        map_model, target = "monotone_rejection", None
    elif u < 0.9:
        map_model, target = "random", None
    else:
        map_model, target = "constant", None
    kind = "quasi" if theorem == "T5" and order_model == "random_dag" and rng.random() < 0.3 else "partial"
    return GeneratorConfig(
        n=n,
        order_model=order_model,
        p=float(rng.uniform(0.1, 0.7)),
        order_kind=kind,
        metric_model=metric_model,
        map_model=map_model,
        alpha_target=target,
        increasing_only=theorem == "T5" and bool(rng.random() < 0.7),
        retry_budget=2_000,
    )


def search_counterexamples(
    theorem: str,
    drop: str = "none",
    budget: int = 500,
    base_seed: int = 0,
    n: int | tuple[int, int] = (3, 6),
    tol: float = DEFAULT_TOL,
) -> list[SearchWitness]:
    """Look for instances that satisfy every hypothesis except ``drop`` yet miss the conclusion.

    Instance ``i`` is generated from seed ``base_seed ^ i``; witnesses are
    re-validated from a fresh copy of the instance and returned in index
    order. With ``drop="none"`` any witness is a soundness alarm.
    """
    if theorem not in THEOREM_HYPOTHESES:
        raise ValueError(f"unknown theorem {theorem!r}")
    if drop != "none" and drop not in THEOREM_HYPOTHESES[theorem]:
        raise ValueError(f"{drop!r} is not a hypothesis of {theorem}")
    if budget < 1:
        raise ValueError("budget must be at least 1")
    n_range = (n, n) if isinstance(n, int) else tuple(n)
    skip = None if drop == "none" else drop
    found = []
    for i in range(budget):
        seed = base_seed ^ i
        cfg = replace(_search_config(theorem, np.random.default_rng([seed, 0x5EA]), n_range), tol=tol)
        try:
            inst = generate_instance(cfg, seed)
        except GenerationBudgetExhausted:
            continue
        check = validate(theorem, inst)
        if check.conclusion or not check.hypotheses.all_hold(except_=skip):
            continue
        again = validate(theorem, _copy_instance(inst))
        if again.conclusion or not again.hypotheses.all_hold(except_=skip):
            continue
        found.append(SearchWitness(replace(inst, label=f"{inst.label} [{cfg_tag(cfg)}]"), drop,
                                   CONCLUSIONS[theorem], check, i))
    return found


def cfg_tag(cfg: GeneratorConfig) -> str:
    a = "-" if cfg.alpha_target is None else f"{cfg.alpha_target:g}"
    return f"n={cfg.n},p={cfg.p:.3f},kind={cfg.order_kind},alpha_target={a}"


def _copy_instance(inst: Instance) -> Instance:
    sp = inst.space
    metric = validate_metric(np.array(sp.dist), sp.tol)
    order = close_order(sp.order.pairs(), sp.size, sp.order.kind)
    return Instance(OrderedMetricSpace(metric, order, sp.names), SelfMap(inst.map.image.tolist()),
                    inst.label, inst.seed)


def count_alarm_free(instances, alpha_grid=T5_ALPHA_GRID) -> tuple[int, list]:
    """Run the T2 and T5 validators over ``instances``; returns (count, alarms)."""
    alarms, count = [], 0
    for inst in instances:
        count += 1
        for check in (validate_theorem2(inst), validate_theorem5(inst, grid=alpha_grid)):
            if check.alarm:
                alarms.append((inst, check))
    return count, alarms


def e_dominates_d(space: OrderedMetricSpace, e: ChainMetric, tol: float = DEFAULT_TOL) -> bool:
    return bool(np.all(e.e >= space.dist - tol))


def has_strict_gap(space: OrderedMetricSpace, e: ChainMetric, tol: float = DEFAULT_TOL) -> bool:
    """Some incomparable pair in one component has chain distance strictly above d."""
    C = space.comparability()
    E = e.e
    return bool(np.any(~C & np.isfinite(E) & (E > space.dist + tol)))

