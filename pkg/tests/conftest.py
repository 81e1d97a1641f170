"""Shared fixtures: tiny MPS problems and random feasible LP generators."""
from pathlib import Path

import numpy as np
import pytest
import scipy.sparse as sp

from arclp.standardize import StandardLP, VarMap

NETLIB_DIR = Path(__file__).resolve().parents[1] / "data" / "netlib"

# Classic three-variable example exercising every row type and a
# shifted lower bound.  Optimum: x = (1, -1, 6), objective -7.
FIX1_MPS = """\
NAME          FIX1
ROWS
 N  COST
 L  LIM1
 G  LIM2
 E  MYEQN
COLUMNS
    X1        COST      1.0        LIM1      1.0
    X1        LIM2      1.0
    X2        COST      2.0        LIM1      1.0
    X2        MYEQN     -1.0
    X3        COST      -1.0       MYEQN     1.0
RHS
    RHS       LIM1      4.0        LIM2      1.0
    RHS       MYEQN     7.0
BOUNDS
 UP BND       X1        4.0
 LO BND       X2        -1.0
ENDATA
"""

# Equality-only problem, already near standard form.  Optimum:
# x = (0, 2, 0) with objective 2 (minimize x1 + x2 + 3 x3 on the
# simplex-like constraints below).
FIX2_MPS = """\
NAME          FIX2
ROWS
 N  OBJ
 E  R1
 E  R2
COLUMNS
    X1        OBJ       1.0        R1        1.0
    X1        R2        1.0
    X2        OBJ       1.0        R1        1.0
    X3        OBJ       3.0        R2        1.0
RHS
    RHS       R1        2.0
ENDATA
"""

# Infeasible by bounds: equality row forces x = 5 but x <= 1.
FIX_INFEASIBLE_MPS = """\
NAME          BADLP
ROWS
 N  OBJ
 E  ROW1
COLUMNS
    X1        OBJ       1.0        ROW1      1.0
RHS
    RHS       ROW1      5.0
BOUNDS
 UP BND       X1        1.0
ENDATA
"""


@pytest.fixture
def fix1_text():
    return FIX1_MPS


@pytest.fixture
def fix2_text():
    return FIX2_MPS


@pytest.fixture
def netlib_dir():
    if not NETLIB_DIR.is_dir():
        pytest.skip("bundled test set not found")
    return NETLIB_DIR


def make_standard_lp(A, b, c, name="fixture", shift=0.0):
    """Wrap dense arrays as a StandardLP with an identity variable map."""
    A = sp.csc_array(np.atleast_2d(np.asarray(A, dtype=float)))
    b = np.asarray(b, dtype=float).ravel()
    c = np.asarray(c, dtype=float).ravel()
    rules = tuple(("shift", j, 0.0) for j in range(A.shape[1]))
    var_map = VarMap(rules=rules, n_std=A.shape[1], c=c.copy(),
                     objective_shift=shift)
    return StandardLP(name=name, A=A, b=b, c=c, objective_shift=shift,
                      var_map=var_map)


def random_feasible_lp(rng, m, n, name="random"):
    """Random standard-form LP with strictly feasible primal and dual.

    Drawing x*, s* > 0 and any lam*, then setting b = A x* and
    c = A.T lam* + s*, guarantees both feasible regions have interior
    points, so an optimum exists and path-following methods apply.
    """
    while True:
        A = rng.standard_normal((m, n))
        if np.linalg.matrix_rank(A) == m:
            break
    x_star = rng.uniform(0.5, 2.0, size=n)
    s_star = rng.uniform(0.5, 2.0, size=n)
    lam_star = rng.standard_normal(m)
    b = A @ x_star
    c = A.T @ lam_star + s_star
    return make_standard_lp(A, b, c, name=name)


@pytest.fixture
def small_lp():
    """Fixed 3x5 feasible LP used across solver tests."""
    rng = np.random.default_rng(7)
    return random_feasible_lp(rng, 3, 5, name="small")
