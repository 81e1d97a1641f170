"""Iteration counts of the three practical methods on the bundled set.

Run from the repository root:

    python3 demos/compare_methods.py

Solves every instance under data/netlib with the momentum arc search,
the plain arc search and the line-search predictor-corrector, then
prints an iteration table and the aggregate reduction.
"""
from pathlib import Path

from arclp import SolverConfig, run_benchmark

netlib = Path(__file__).resolve().parents[1] / "data" / "netlib"
configs = [SolverConfig(algorithm=a) for a in ("alg2", "arc", "line")]
records = run_benchmark(netlib, configs)

by = {(r.problem, r.algorithm): r for r in records}
problems = sorted({r.problem for r in records})

print("%-10s %9s %9s %9s   objective" % ("problem", "momentum",
                                         "arc", "line"))
totals = {"alg2": 0, "arc": 0, "line": 0}
for p in problems:
    row = [by[(p, a)] for a in ("alg2", "arc", "line")]
    for r in row:
        totals[r.algorithm] += r.iterations
    print("%-10s %9d %9d %9d   %.6e"
          % (p, row[0].iterations, row[1].iterations, row[2].iterations,
             row[0].objective))
print("%-10s %9d %9d %9d" % ("total", totals["alg2"], totals["arc"],
                             totals["line"]))
print("\nmomentum vs plain arc: %+d iterations; vs line search: %+d"
      % (totals["alg2"] - totals["arc"], totals["alg2"] - totals["line"]))
