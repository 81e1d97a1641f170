"""How the momentum scale beta affects iteration counts.

Run from the repository root:

    python3 demos/beta_sweep.py

Sweeps beta over a grid for the momentum arc search on every bundled
instance.  beta caps how far the restart may move the iterate, so small
values approach the plain arc method and the sweep shows how much of the
restart's benefit survives at each level.
"""
from pathlib import Path

from arclp import SolverConfig, parse_mps, presolve, solve, to_standard_form

netlib = Path(__file__).resolve().parents[1] / "data" / "netlib"
betas = (0.001, 0.1, 0.3, 0.5, 0.7, 0.9)

problems = {}
for path in sorted(netlib.glob("*.mps")):
    reduced, _ = presolve(to_standard_form(parse_mps(path.read_text())))
    problems[path.stem] = reduced

print("%-10s" % "problem" + "".join("  beta=%-5g" % b for b in betas))
totals = [0] * len(betas)
for name, lp in problems.items():
    counts = []
    for j, beta in enumerate(betas):
        res = solve(lp, SolverConfig(algorithm="alg2", beta=beta))
        assert res.status == "Optimal", (name, beta, res.status)
        counts.append(res.iterations)
        totals[j] += res.iterations
    print("%-10s" % name + "".join("  %-10d" % k for k in counts))
print("%-10s" % "total" + "".join("  %-10d" % t for t in totals))
