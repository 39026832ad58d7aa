#!/usr/bin/env python3
"""Matrix files, run reports, and the command-line surface.

Matrices travel as JSON files whose entries roundtrip bit-exactly and
whose declared kind (hermitian / projection / unitary / general) is
re-validated on load.  Every CLI invocation prints one machine-readable
report line and exits 0 (ok), 2 (hypothesis violated), 3 (tolerance
ambiguity) or 4 (I/O or format error).
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import numpy as np

from orbitkit import SplitMix64, load_matrix, random_hermitian, save_matrix

workdir = Path(tempfile.mkdtemp(prefix="orbitkit_demo_"))
print(f"working in {workdir}\n")

print("=" * 72)
print("1. save/load roundtrips are bit-exact")
print("=" * 72)
rng = SplitMix64(808)
h = random_hermitian(rng, 8)
path = workdir / "h8.json"
save_matrix(path, h.matrix, "hermitian", {"seed": 808, "description": "demo fixture"})
back = load_matrix(path)
print(f"entries identical bit for bit: {np.array_equal(back.entries, h.matrix)}")
print(f"file size: {path.stat().st_size} bytes, kind={back.kind}, meta={back.meta}")


def run(*args):
    proc = subprocess.run(
        [sys.executable, "-m", "orbitkit.cli", *args],
        capture_output=True, text=True, cwd=workdir,
    )
    print(f"$ orbitkit {' '.join(args)}")
    print(f"  exit {proc.returncode}")
    report = json.loads(proc.stdout)
    shown = {k: report["outputs"][k] for k in sorted(report["outputs"]) if k != "files"}
    print(f"  outputs: {json.dumps(shown)[:160]} ...")
    return report


print()
print("=" * 72)
print("2. generate a seeded orbit pair and intertwine it")
print("=" * 72)
report = run("gen", "orbit-pair", "--dim", "6", "--spectrum", "0.7:2,0.3:1",
             "--perturb", "0.01", "--seed", "5")
rho, rho_prime = report["outputs"]["files"]
run("decompose", rho)
run("intertwine", rho, rho_prime, "--eps", "0.4", "--out", "v.json")
v = load_matrix(workdir / "v.json")
print(f"  emitted unitary re-validated on load: kind={v.kind}, dim={v.dim}")

print()
print("=" * 72)
print("3. hypothesis violations exit 2; broken files exit 4")
print("=" * 72)
run("gen", "example", "--alpha", "0.1", "--dim", "2", "--seed", "1")
run("intertwine-proj", "example_E.json", "example_F.json", "--eps", "0.5")
(workdir / "broken.json").write_text("{not json")
run("moments", "broken.json")

print()
print("=" * 72)
print("4. the self-check battery")
print("=" * 72)
report = run("verify", "suite", "--seed", "1", "--count", "10")
print(f"  {len(report['outputs']['checks'])} checks, ok={report['outputs']['ok']}")
