"""Command line front end.

Exit codes: 0 success (or conclusion holds), 1 some hypothesis fails,
2 validation error, 3 parse error, 4 soundness alarm, 5 I/O error.

The default tolerance is 1e-9; the ORDFIX_TOLERANCE environment variable
overrides it and ``--tolerance`` overrides both.
"""
from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path

from . import __version__
from .chain import chain_components
from .errors import OrdfixError, ParseError, ValidationError
from .formats import dumps, encode_matrix, instance_to_dict, load_instance, names_of
from .lab import CONCLUSIONS, T5_ALPHA_GRID, THEOREM_HYPOTHESES, reduce_to_banach, search_counterexamples, validate
from .picard import picard_orbit
from .space import DEFAULT_TOL

EXIT_OK, EXIT_HYPOTHESIS, EXIT_VALIDATION, EXIT_PARSE, EXIT_ALARM, EXIT_IO = range(6)
ALPHA_GRID_STEP = 1e-3


def default_tolerance() -> float:
    raw = os.environ.get("ORDFIX_TOLERANCE")
    return float(raw) if raw else DEFAULT_TOL


def header(command: str, tol: float, seed=None) -> dict:
    return {
        "tool": "ordfix",
        "version": __version__,
        "command": command,
        "tolerance": tol,
        "seed": seed,
        "defaults": {
            "tolerance": DEFAULT_TOL,
            "alpha_grid_step": ALPHA_GRID_STEP,
            "t5_alpha_grid": list(T5_ALPHA_GRID),
        },
    }


def _emit(args, report: dict, lines: list[str]):
    if getattr(args, "json", False):
        sys.stdout.write(dumps(report))
    else:
        for line in lines:
            print(line)


def _fail(args, command, tol, exc) -> int:
    code = EXIT_PARSE if isinstance(exc, ParseError) else EXIT_VALIDATION
    report = header(command, tol)
    report.update({"valid": False, "error": exc.to_dict() if isinstance(exc, OrdfixError) else str(exc)})
    if getattr(args, "json", False):
        sys.stdout.write(dumps(report))
    print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
    return code


def _load(args, command, tol):
    """Returns (instance, None) or (None, exit_code)."""
    try:
        return load_instance(args.path, tol), None
    except OSError as exc:
        print(f"cannot read {args.path}: {exc.strerror or exc}", file=sys.stderr)
        return None, EXIT_IO
    except (ParseError, ValidationError) as exc:
        return None, _fail(args, command, tol, exc)


def _echo(inst) -> dict:
    names = names_of(inst.space)
    return {"instance": instance_to_dict(inst), "resolved_ids": {nm: i for i, nm in enumerate(names)}}


def cmd_validate(args) -> int:
    tol = args.tolerance
    inst, code = _load(args, "validate", tol)
    if inst is None:
        return code
    report = header("validate", tol)
    report.update({"valid": True, **_echo(inst)})
    _emit(args, report, [f"valid: {inst.size} points, order kind {inst.space.order.kind.value}"])
    return EXIT_OK


def cmd_check(args) -> int:
    tol = args.tolerance
    t0 = time.perf_counter()
    inst, code = _load(args, "check", tol)
    if inst is None:
        return code
    check = validate(args.theorem, inst, args.alpha)
    names = names_of(inst.space)
    report = header("check", tol)
    report.update(_echo(inst))
    report["check"] = check.to_dict(names)
    report["timing"] = {"seconds": round(time.perf_counter() - t0, 6)}
    lines = [f"{args.theorem} on {inst.size} points"]
    for e in check.hypotheses.entries:
        if e.status.value == "auto_satisfied":
            lines.append(f"  {e.id:<15} {e.note}")
        else:
            extra = f" ({e.note})" if e.note else ""
            lines.append(f"  {e.id:<15} {e.status.value}{extra}")
    lines.append(f"  conclusion {CONCLUSIONS[args.theorem]} = {check.conclusion}")
    if check.alarm:
        lines.append("  SOUNDNESS ALARM: hypotheses hold but the conclusion fails")
    _emit(args, report, lines)
    if check.alarm:
        return EXIT_ALARM
    return EXIT_OK if check.hypotheses_hold else EXIT_HYPOTHESIS


def cmd_reduce(args) -> int:
    tol = args.tolerance
    t0 = time.perf_counter()
    inst, code = _load(args, "reduce", tol)
    if inst is None:
        return code
    red = reduce_to_banach(inst, strict=False, tol=tol)
    connected = chain_components(inst.space).connected
    report = header("reduce", tol)
    report.update(_echo(inst))
    report["reduction"] = {
        "chain_metric": encode_matrix(red.chain_metric.e),
        "chain_connected": connected,
        "d_factor": red.d_report.alpha_star,
        "e_factor": red.e_report.alpha_star,
        "d_report": red.d_report.to_dict(),
        "e_report": red.e_report.to_dict(),
        "not_applicable": list(red.not_applicable),
        "reduction_verdict": red.reduction_verdict,
    }
    report["timing"] = {"seconds": round(time.perf_counter() - t0, 6)}
    lines = ["chain metric:"]
    for row in encode_matrix(red.chain_metric.e):
        lines.append("  " + " ".join(f"{v:>10}" if isinstance(v, str) else f"{v:>10.6g}" for v in row))
    lines.append(f"d-factor {red.d_report.alpha_star!r}, e-factor {red.e_report.alpha_star!r}")
    if red.not_applicable:
        lines.append("not applicable: failing " + ", ".join(red.not_applicable))
    else:
        lines.append(f"reduction verdict: {red.reduction_verdict}")
    _emit(args, report, lines)
    if red.not_applicable:
        return EXIT_HYPOTHESIS
    return EXIT_OK if red.reduction_verdict else EXIT_ALARM


def cmd_solve(args) -> int:
    tol = args.tolerance
    inst, code = _load(args, "solve", tol)
    if inst is None:
        return code
    names = names_of(inst.space)
    if args.start is not None:
        if args.start not in names:
            print(f"UnknownPoint: {args.start!r} is not a point of the instance", file=sys.stderr)
            if args.json:
                report = header("solve", tol)
                report.update({"error": {"error": "UnknownPoint", "name": args.start}})
                sys.stdout.write(dumps(report))
            return EXIT_VALIDATION
        starts = [names.index(args.start)]
    else:
        starts = range(inst.size)
    results = [picard_orbit(inst.space, inst.map, s) for s in starts]
    report = header("solve", tol)
    report.update(_echo(inst))
    report["orbits"] = [r.to_dict(names) for r in results]
    lines = []
    for r in results:
        path = " -> ".join(names[p] for p in r.orbit)
        if r.reached_fixed_point:
            lines.append(f"{path}: fixed point {names[r.limit]} after {r.steps_to_limit} steps")
        else:
            cyc = ", ".join(names[p] for p in r.limit.points)
            lines.append(f"{path}: cycle [{cyc}] entered after {r.steps_to_limit} steps")
    _emit(args, report, lines)
    return EXIT_OK


def _parse_n(text: str):
    if ":" in text:
        lo, hi = text.split(":", 1)
        return int(lo), int(hi)
    return int(text)


def cmd_search(args) -> int:
    tol = args.tolerance
    if args.drop != "none" and args.drop not in THEOREM_HYPOTHESES[args.theorem]:
        print(f"--drop must be one of: none, {', '.join(THEOREM_HYPOTHESES[args.theorem])}", file=sys.stderr)
        return EXIT_VALIDATION
    if args.budget < 1:
        print("--budget must be at least 1", file=sys.stderr)
        return EXIT_VALIDATION
    witnesses = search_counterexamples(args.theorem, args.drop, args.budget, args.seed, _parse_n(args.n), tol)
    files = []
    out = Path(args.out) if args.out else None
    try:
        if out is not None:
            out.mkdir(parents=True, exist_ok=True)
        for w in witnesses:
            stem = f"witness_{w.index:05d}"
            names = names_of(w.instance.space)
            rep = header("search", tol, seed=w.instance.seed)
            rep.update(_echo(w.instance))
            rep.update({
                "index": w.index,
                "dropped_hypothesis": w.dropped_hypothesis,
                "violated_conclusion": w.violated_conclusion,
                "check": w.evidence.to_dict(names),
            })
            if out is not None:
                (out / f"{stem}.json").write_text(dumps(instance_to_dict(w.instance)))
                (out / f"{stem}.report.json").write_text(dumps(rep))
            files.append(stem)
        alarms = [w.index for w in witnesses if w.alarm]
        summary = header("search", tol, seed=args.seed)
        summary.update({
            "theorem": args.theorem,
            "drop": args.drop,
            "budget": args.budget,
            "n": args.n,
            "witness_count": len(witnesses),
            "witnesses": files,
            "alarms": alarms,
        })
        if out is not None:
            (out / "summary.json").write_text(dumps(summary))
    except OSError as exc:
        print(f"I/O error writing to {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    _emit(args, summary, [f"{len(witnesses)} witness(es) for {args.theorem} without {args.drop}"]
          + ([f"SOUNDNESS ALARM at indices {alarms}"] if alarms else []))
    return EXIT_ALARM if alarms else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="ordfix",
        description="Fixed-point checks on finite ordered metric spaces.",
        epilog="Set ORDFIX_TOLERANCE to change the default tolerance (1e-9).",
    )
    p.add_argument("--version", action="version", version=f"ordfix {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, path=True):
        if path:
            sp.add_argument("path", help="instance file (or a report embedding one)")
        sp.add_argument("--tolerance", type=float, default=default_tolerance())
        sp.add_argument("--json", action="store_true", help="machine-readable report on stdout")

    sp = sub.add_parser("validate", help="parse and validate an instance file")
    common(sp)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("check", help="check a theorem's hypotheses and conclusion")
    common(sp)
    sp.add_argument("--theorem", choices=sorted(THEOREM_HYPOTHESES), default="T2")
    sp.add_argument("--alpha", type=float, default=None,
                    help="factor for T5; default tries the grid 0.1..0.9")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("reduce", help="build the chain metric and compare contraction factors")
    common(sp)
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("solve", help="run Picard iteration")
    common(sp)
    sp.add_argument("--start", default=None, help="start point name (default: every point)")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("search", help="hunt for counterexamples with one hypothesis dropped")
    common(sp, path=False)
    sp.add_argument("--theorem", choices=sorted(THEOREM_HYPOTHESES), default="T2")
    sp.add_argument("--drop", default="none")
    sp.add_argument("--budget", type=int, default=500)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--n", default="3:6", help="points per instance: k or lo:hi")
    sp.add_argument("--out", default=None, help="directory for witness files")
    sp.set_defaults(func=cmd_search)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
