"""Benchmark the bundled instances and build performance profiles.

Run from the repository root:

    python3 demos/make_profile.py [out_dir]

Writes records.csv and profile.csv to out_dir (default demos/out) and,
when matplotlib is importable, profile.png with the step curves.  The
curve of a solver at tau is the fraction of problems it solved within a
factor tau of the best iteration count any solver achieved.
"""
import sys
from pathlib import Path

from arclp import (SolverConfig, performance_profile, records_to_csv,
                   run_benchmark)
from arclp.bench import profile_to_csv

root = Path(__file__).resolve().parents[1]
out = Path(sys.argv[1]) if len(sys.argv) > 1 else root / "demos" / "out"
out.mkdir(parents=True, exist_ok=True)

configs = [SolverConfig(algorithm=a) for a in ("alg2", "arc", "line")]
records = run_benchmark(root / "data" / "netlib", configs)
(out / "records.csv").write_text(records_to_csv(records))

curves = performance_profile(records, metric="iterations")
(out / "profile.csv").write_text(profile_to_csv(curves))
print("wrote %s and %s" % (out / "records.csv", out / "profile.csv"))

for curve in curves:
    print("%-28s P(1)=%.3f  solved=%.3f"
          % (curve.solver, curve.fractions[0], curve.fractions[-1]))

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("matplotlib not available, skipping the plot")
else:
    fig, ax = plt.subplots(figsize=(6, 4))
    for curve in curves:
        ax.step(curve.taus, curve.fractions, where="post",
                label=curve.solver)
    ax.set_xlabel("factor of best iteration count")
    ax.set_ylabel("fraction of problems solved")
    ax.set_ylim(0, 1.05)
    ax.legend(loc="lower right")
    fig.tight_layout()
    fig.savefig(out / "profile.png", dpi=120)
    print("wrote %s" % (out / "profile.png"))
