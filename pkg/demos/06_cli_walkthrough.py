"""Driving the ordfix command line on a small instance file."""
import json
import subprocess
import sys
import tempfile
from pathlib import Path

doc = {
    "label": "points 0, 1, 3, total order",
    "points": ["x0", "x1", "x3"],
    "metric": {"embedding": {"coords": [[0], [1], [3]]}},
    "order": {"kind": "partial", "pairs": [["x0", "x1"], ["x1", "x3"]]},
    "map": {"x0": "x0", "x1": "x0", "x3": "x1"},
}


def ordfix(*args, show=True):
    proc = subprocess.run([sys.executable, "-m", "ordfix.cli", *args], capture_output=True, text=True)
    print(f"$ ordfix {' '.join(args)}   (exit {proc.returncode})")
    if show:
        print(proc.stdout.rstrip() or proc.stderr.rstrip())
    return proc


with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "three.json"
    path.write_text(json.dumps(doc))
    ordfix("validate", str(path))
    ordfix("check", str(path), "--theorem", "T2")
    ordfix("reduce", str(path))
    ordfix("solve", str(path), "--start", "x3")
    ordfix("search", "--theorem", "T2", "--drop", "b03", "--budget", "100", "--out", str(Path(tmp) / "w"))
    rep = json.loads(ordfix("check", str(path), "--theorem", "T5", "--json", show=False).stdout)
    print("T5 alpha from the default grid:", rep["check"]["alpha"], "| tolerance", rep["tolerance"])

    # every failure mode has its own exit code
    path.write_text('{"points": ["a"], "metric": ')
    ordfix("validate", str(path))
