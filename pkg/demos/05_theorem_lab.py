"""Theorem validators, the reduction to a plain contraction, and counterexample search."""
import time

from ordfix import SelfMap, line_space
from ordfix.lab import (
    GeneratorConfig,
    Instance,
    generate_instance,
    reduce_to_banach,
    search_counterexamples,
    validate,
)

inst = Instance(line_space([0, 1, 3], [(0, 1), (1, 2)]), SelfMap([0, 0, 1]), "three points")
for theorem in ("T1", "T2", "T5"):
    chk = validate(theorem, inst)
    print(theorem, "hypotheses hold:", chk.hypotheses_hold, "conclusion:", chk.conclusion, "alarm:", chk.alarm)

# On a lattice the order is chain-connected and the chain metric carries the same factor.
cfg = GeneratorConfig(n=6, order_model="lattice", p=0.3, alpha_target=0.8, increasing_only=True)
lat = generate_instance(cfg, seed=63)
red = reduce_to_banach(lat)
print("lattice: d-factor", round(red.d_report.alpha_star, 4), "e-factor", round(red.e_report.alpha_star, 4),
      "verdict", red.reduction_verdict)
print("chain metric (some entries exceed d):\n", red.chain_metric.matrix.round(3))

# Dropping one hypothesis at a time shows which ones the conclusion needs.
for theorem, drop in (("T2", "b03"), ("T2", "a02"), ("T5", "c03"), ("T2", "none")):
    t0 = time.perf_counter()
    ws = search_counterexamples(theorem, drop, budget=300, base_seed=0)
    print(f"{theorem} without {drop}: {len(ws)} witnesses in {time.perf_counter() - t0:.2f} s")
    if ws:
        w = ws[0]
        print("   first:", w.instance.label, "fixed points", sorted(w.evidence.classification.fixed_points))
