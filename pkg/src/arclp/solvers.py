"""Interior-point solvers for standard-form LPs.

Four drivers share the Newton kernel and the arc/momentum primitives:

``solve_alg1``
    Neighborhood-confined arc search.  The momentum restart is guarded by
    membership in ``N(theta)``, every step keeps the iterate inside the
    (doubled) neighborhood, and a corrector recenters after each arc step.
    Its contraction invariants hold to rounding and are recorded when
    ``check_invariants`` is on.
``solve_alg2``
    Practical arc search with unconditional momentum restarts and an
    adaptive centering weight chosen from an affine-scaling probe, in the
    style of predictor-corrector codes.
``solve_arc_baseline``
    ``solve_alg2`` with the restart weight pinned to zero; the reference
    arc-search method.
``solve_line_baseline``
    Classic predictor-corrector line search (affine predictor, centering
    corrector, separate damped primal and dual steps).

All four stop on the same relative criterion (``check_convergence``) and
report the same immature-stop taxonomy.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace

import numpy as np

from .core import (arc_point, duality_measure, first_derivatives,
                   in_neighborhood, momentum_weight_full,
                   momentum_weight_simple, residuals, restart_point,
                   second_derivatives)
from .linalg import NumericalError, factor, solve_block

__all__ = ["Status", "SolverConfig", "SolveResult", "solve",
           "solve_alg1", "solve_alg2", "solve_arc_baseline",
           "solve_line_baseline", "initial_point_alg1",
           "initial_point_mehrotra", "max_alpha_positivity",
           "check_convergence", "check_theoretical_stop"]

_THETA_SUP = 1.0 / (2.0 + np.sqrt(2.0))


class Status:
    """Terminal states of a solve."""

    OPTIMAL = "Optimal"
    ITERATION_LIMIT = "IterationLimit"
    STEP_TOO_SMALL = "StepTooSmall"
    NUMERICAL_ERROR = "NumericalError"
    INFEASIBLE = "Infeasible"
    UNBOUNDED = "Unbounded"


@dataclass(frozen=True)
class SolverConfig:
    """Knobs shared by the four drivers.

    ``beta`` scales the momentum restart and ``beta_formula`` picks the
    weight rule for ``solve_alg2`` ("simple" box cap or "full"
    residual-aware cap); the guarded method always uses the full rule,
    which its contraction guarantees require.  ``theta`` is the
    neighborhood radius of the guarded method and must stay below
    ``1 / (2 + sqrt(2))``.  ``gamma`` damps arc and line steps away from
    the positivity boundary.  ``corrector_target`` selects the duality
    measure the guarded corrector recenters toward: the measure at the
    iterate ("iterate", default) or at the restarted point ("restart").
    """

    algorithm: str = "alg2"
    beta: float = 0.9
    beta_formula: str = "simple"
    theta: float = 0.25
    epsilon: float = 1e-7
    max_iter: int = 100
    step_floor: float = 1e-7
    gamma: float = 0.9
    sigma_min: float = 1e-6
    sigma_max: float = 0.5
    stop_rule: str = "relative"
    corrector_target: str = "iterate"
    trace: bool = False
    check_invariants: bool = True
    force_zero_momentum: bool = False
    time_limit: float = None

    def validate(self):
        if self.algorithm not in ("alg1", "alg2", "arc", "line"):
            raise ValueError("unknown algorithm %r" % self.algorithm)
        if not 0.0 < self.beta <= 1.0:
            raise ValueError("beta must lie in (0, 1]")
        if self.beta_formula not in ("full", "simple"):
            raise ValueError("beta_formula must be 'full' or 'simple'")
        if self.algorithm == "alg1" and not 0.0 < self.theta < _THETA_SUP:
            raise ValueError("theta must lie in (0, 1/(2+sqrt(2)))")
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError("epsilon must lie in (0, 1)")
        if self.max_iter < 1:
            raise ValueError("max_iter must be positive")
        if not 0.0 < self.gamma < 1.0:
            raise ValueError("gamma must lie in (0, 1)")
        if self.stop_rule not in ("relative", "theoretical"):
            raise ValueError("stop_rule must be 'relative' or "
                             "'theoretical'")
        if self.corrector_target not in ("iterate", "restart"):
            raise ValueError("corrector_target must be 'iterate' or "
                             "'restart'")
        return self


@dataclass
class SolveResult:
    """Outcome of one solve.

    ``objective`` is ``c @ x + objective_shift`` of the problem that was
    solved.  ``trace`` holds one dict per iteration when tracing is on;
    ``invariant_violations`` collects (iteration, kind, magnitude) tuples
    from the guarded method's runtime checks.
    """

    status: str
    iterations: int
    wall_time: float
    mu: float
    rb_norm: float
    rc_norm: float
    objective: float
    x: np.ndarray = None
    lam: np.ndarray = None
    s: np.ndarray = None
    trace: list = field(default_factory=list)
    invariant_violations: list = field(default_factory=list)
    note: str = ""


def check_convergence(lp, x, lam, s, epsilon, norms=None):
    """Relative optimality test.

    True when ``max(||rb|| / max(1, ||b||), ||rc|| / max(1, ||c||),
    mu / max(1, |c @ x|, |b @ lam|)) < epsilon``.
    """
    rb, rc = residuals(lp, x, lam, s)
    mu = duality_measure(x, s)
    bn, cn = norms if norms is not None else (np.linalg.norm(lp.b),
                                              np.linalg.norm(lp.c))
    crit = max(np.linalg.norm(rb) / max(1.0, bn),
               np.linalg.norm(rc) / max(1.0, cn),
               mu / max(1.0, abs(float(lp.c @ x)), abs(float(lp.b @ lam))))
    return crit < epsilon


def check_theoretical_stop(mu, rb_norm, rc_norm, mu0, rb0_norm, rc0_norm,
                           epsilon):
    """Absolute test used by the guarded method's theory.

    True when ``mu <= epsilon`` and each residual norm has fallen below
    its initial value scaled by ``epsilon / mu0``.
    """
    return (mu <= epsilon
            and rb_norm <= rb0_norm / mu0 * epsilon
            and rc_norm <= rc0_norm / mu0 * epsilon)


def initial_point_alg1(lp, scale=100.0):
    """Wide interior start ``x = s = scale * ones``, ``lam = 0``.

    The componentwise-constant products put the point at the exact center
    of ``N(theta)`` for every admissible ``theta``.
    """
    n = lp.n
    return (np.full(n, float(scale)), np.zeros(lp.m),
            np.full(n, float(scale)))


def initial_point_mehrotra(lp):
    """Least-squares starting point with positivity shifts.

    ``x`` solves ``min ||x|| : A @ x = b`` and ``(lam, s)`` solve
    ``min ||s|| : A.T @ lam + s = c``; both are then shifted into the
    strict interior, first past the most negative component, then by a
    complementarity-balancing term.  Falls back to the wide start when a
    component remains at or below ``1e-10``.
    """
    ones = np.ones(lp.n)
    try:
        fac = factor(lp.A, ones, ones)
        y = fac.solve(lp.b)
        x = lp.A.T @ y
        lam = fac.solve(lp.A @ lp.c)
        s = lp.c - lp.A.T @ lam
    except NumericalError:
        x0, lam0, s0 = initial_point_alg1(lp)
        return x0, lam0, s0

    dx = max(-1.5 * x.min(), 0.0)
    ds = max(-1.5 * s.min(), 0.0)
    x_hat = x + dx
    s_hat = s + ds
    cross = float(x_hat @ s_hat)
    e_s = float(s_hat.sum())
    e_x = float(x_hat.sum())
    x0 = x_hat + (0.5 * cross / e_s if abs(e_s) > 1e-300 else 0.0)
    s0 = s_hat + (0.5 * cross / e_x if abs(e_x) > 1e-300 else 0.0)
    if x0.min() <= 1e-10:
        x0 = np.full(lp.n, 100.0)
    if s0.min() <= 1e-10:
        s0 = np.full(lp.n, 100.0)
    return x0, lam, s0


def max_alpha_positivity(base, d1, d2, grid=64, bisections=60):
    """Largest angle keeping ``arc_point(base, d1, d2, .)`` nonnegative.

    Scans ``phi(alpha) = base - d1 sin(alpha) + d2 (1 - cos(alpha))`` on a
    uniform grid over ``[0, pi/2]`` for the first sign change of the
    componentwise minimum, sharpens the bracket by bisection, and returns
    the largest angle (shrunk at most by a factor ``1 - 1e-12``) at which
    every component is still nonnegative.  Returns ``pi/2`` when the whole
    quarter arc stays nonnegative.
    """
    base = np.asarray(base, dtype=float)
    if np.any(base <= 0):
        raise ValueError("arc base point must be strictly positive")

    def worst(alpha):
        return float(np.min(base - d1 * np.sin(alpha)
                            + d2 * (1.0 - np.cos(alpha))))

    alphas = np.linspace(0.0, np.pi / 2.0, grid)
    phi = (base[:, None] - np.outer(d1, np.sin(alphas))
           + np.outer(d2, 1.0 - np.cos(alphas))).min(axis=0)
    negative = np.nonzero(phi < 0.0)[0]
    if negative.size == 0:
        alpha = np.pi / 2.0
    else:
        hi_idx = int(negative[0])
        lo, hi = alphas[hi_idx - 1], alphas[hi_idx]
        for _ in range(bisections):
            mid = 0.5 * (lo + hi)
            if worst(mid) >= 0.0:
                lo = mid
            else:
                hi = mid
        alpha = lo
    for factor_ in (1.0, 1.0 - 1e-12):
        if worst(factor_ * alpha) >= 0.0:
            return factor_ * alpha
    return lo if negative.size else 0.0


def _linear_ratio_step(w, dw, cap=1.0):
    """Largest step in [0, cap] with ``w - alpha * dw >= 0``."""
    pos = dw > 0
    if not np.any(pos):
        return cap
    return float(min(cap, np.min(w[pos] / dw[pos])))


def _finish(lp, status, k, t0, x, lam, s, trace, violations, note=""):
    rb, rc = residuals(lp, x, lam, s)
    return SolveResult(
        status=status, iterations=k, wall_time=time.perf_counter() - t0,
        mu=duality_measure(x, s), rb_norm=float(np.linalg.norm(rb)),
        rc_norm=float(np.linalg.norm(rc)),
        objective=float(lp.c @ x) + lp.objective_shift,
        x=x, lam=lam, s=s, trace=trace, invariant_violations=violations,
        note=note)


def _stop(lp, x, lam, s, config, norms, init=None):
    if config.stop_rule == "theoretical":
        rb, rc = residuals(lp, x, lam, s)
        mu0, rb0, rc0 = init
        return check_theoretical_stop(
            duality_measure(x, s), np.linalg.norm(rb), np.linalg.norm(rc),
            mu0, rb0, rc0, config.epsilon)
    return check_convergence(lp, x, lam, s, config.epsilon, norms)


def _deadline_hit(config, t0):
    return (config.time_limit is not None
            and time.perf_counter() - t0 > config.time_limit)


def solve(lp, config=None):
    """Dispatch to the driver named by ``config.algorithm``."""
    config = (config or SolverConfig()).validate()
    if lp.n == 0:
        # Presolve can solve a problem outright; the shift is then the
        # whole objective and there is nothing left to iterate on.
        return SolveResult(status=Status.OPTIMAL, iterations=0,
                           wall_time=0.0, mu=0.0, rb_norm=0.0, rc_norm=0.0,
                           objective=lp.objective_shift, x=np.zeros(0),
                           lam=np.zeros(lp.m), s=np.zeros(0),
                           note="solved during presolve")
    driver = {"alg1": solve_alg1, "alg2": solve_alg2,
              "arc": solve_arc_baseline,
              "line": solve_line_baseline}[config.algorithm]
    return driver(lp, config)


# ----------------------------------------------------------------------
# Guarded arc search (neighborhood-confined, with corrector)
# ----------------------------------------------------------------------

def _alg1_admissible(z, s_vec, dz, ds, ddz, dds, mu_z, theta):
    """Admissibility test for the guarded arc step.

    An angle is admissible when the arc stays strictly positive and
    within the doubled proximity band
    ``||x(a) * s(a) - (1 - sin a) mu_z|| <= 2 theta (1 - sin a) mu_z``.
    """
    def check(alpha):
        sin_a = np.sin(alpha)
        xa = arc_point(z, dz, ddz, alpha)
        sa = arc_point(s_vec, ds, dds, alpha)
        if xa.min() <= 0.0 or sa.min() <= 0.0:
            return False
        target = (1.0 - sin_a) * mu_z
        return np.linalg.norm(xa * sa - target) <= 2.0 * theta * target
    return check


def solve_alg1(lp, config=None):
    """Neighborhood-confined arc search with momentum restarts.

    The restart weight always uses the residual-aware (full) formula and
    the shifted point is kept only while it stays in ``N(theta)``.  After
    the arc step, a corrector recenters toward the next duality measure,
    preserving the contraction invariants that ``check_invariants``
    records: the measure and dual residual shrink by exactly
    ``1 - sin(alpha)``, primal residual components shrink at least that
    fast without changing sign, and the iterate stays in ``N(theta)``.
    """
    config = replace(config or SolverConfig(), algorithm="alg1").validate()
    t0 = time.perf_counter()
    x, lam, s = initial_point_alg1(lp)
    norms = (float(np.linalg.norm(lp.b)), float(np.linalg.norm(lp.c)))
    rb, rc = residuals(lp, x, lam, s)
    mu = duality_measure(x, s)
    init = (mu, np.linalg.norm(rb), np.linalg.norm(rc))
    rb0 = rb.copy()
    rb_floor = 1e-12 * (1.0 + np.abs(rb0).max())
    prev_x = prev_rb = None
    trace, violations = [], []
    theta = config.theta
    e = np.ones(lp.n)

    k = 0
    while True:
        if _stop(lp, x, lam, s, config, norms, init):
            return _finish(lp, Status.OPTIMAL, k, t0, x, lam, s, trace,
                           violations)
        if k >= config.max_iter or _deadline_hit(config, t0):
            note = "time limit" if k < config.max_iter else ""
            return _finish(lp, Status.ITERATION_LIMIT, k, t0, x, lam, s,
                           trace, violations, note)

        if prev_x is None or config.force_zero_momentum:
            beta_k, z = 0.0, x
        else:
            delta = x - prev_x
            beta_k = momentum_weight_full(x, prev_x, rb, prev_rb,
                                          config.beta)
            z = restart_point(x, beta_k, delta, "guarded", s, theta)
            if z is x:
                beta_k = 0.0
        mu_z = duality_measure(z, s)

        try:
            fac = factor(lp.A, z, s)
            dz, dlam, ds = first_derivatives(lp, fac, z, lam, s)
            ddz, ddlam, dds = second_derivatives(lp, fac, z, s, dz, ds)
        except NumericalError:
            return _finish(lp, Status.NUMERICAL_ERROR, k, t0, x, lam, s,
                           trace, violations)

        admissible = _alg1_admissible(z, s, dz, ds, ddz, dds, mu_z, theta)
        alpha = np.pi / 2.0
        while alpha >= config.step_floor and not (
                admissible(alpha) and admissible(alpha / 2.0)
                and admissible(alpha / 4.0)):
            alpha *= 0.8
        if alpha < config.step_floor:
            return _finish(lp, Status.STEP_TOO_SMALL, k, t0, x, lam, s,
                           trace, violations)

        sin_a = np.sin(alpha)
        xa = arc_point(z, dz, ddz, alpha)
        la = arc_point(lam, dlam, ddlam, alpha)
        sa = arc_point(s, ds, dds, alpha)

        target_mu = mu_z if config.corrector_target == "restart" else mu
        try:
            fac2 = factor(lp.A, xa, sa)
            ex, el, es = solve_block(
                fac2, lp.A, xa, sa, np.zeros(lp.m), np.zeros(lp.n),
                (1.0 - sin_a) * target_mu * e - xa * sa)
        except NumericalError:
            return _finish(lp, Status.NUMERICAL_ERROR, k, t0, x, lam, s,
                           trace, violations)
        x_new, lam_new, s_new = xa + ex, la + el, sa + es
        if x_new.min() <= 0.0 or s_new.min() <= 0.0:
            return _finish(lp, Status.NUMERICAL_ERROR, k, t0, x, lam, s,
                           trace, violations,
                           note="corrector left the interior")

        rb_new, rc_new = residuals(lp, x_new, lam_new, s_new)
        mu_new = duality_measure(x_new, s_new)
        if config.check_invariants:
            _alg1_invariants(k, violations, target_mu, mu_new, rb, rb_new, rc,
                             rc_new, sin_a, x_new, s_new, rb0, rb_floor,
                             theta, x, z, beta_k, config.beta)
        if config.trace:
            trace.append({
                "iter": k, "mu": mu, "mu_z": mu_z, "beta_k": beta_k,
                "alpha": float(alpha), "sin_alpha": float(sin_a),
                "step_primal": float(sin_a), "step_dual": float(sin_a),
                "rb_norm": float(np.linalg.norm(rb)),
                "rc_norm": float(np.linalg.norm(rc)),
                "rb": rb.copy(), "x": x.copy(), "s": s.copy(),
                "z": np.array(z, copy=True),
            })

        prev_x, prev_rb = x, rb
        x, lam, s = x_new, lam_new, s_new
        rb, rc, mu = rb_new, rc_new, mu_new
        k += 1


def _alg1_invariants(k, violations, target_mu, mu_new, rb, rb_new, rc,
                     rc_new, sin_a, x_new, s_new, rb0, rb_floor, theta, x,
                     z, beta_k, beta):
    """Record breaches of the guarded method's contraction guarantees.

    ``target_mu`` is the duality measure the corrector recentered
    toward, so the contraction identity reads
    ``mu_new = (1 - sin a) * target_mu`` for either corrector target.
    """
    shrink = 1.0 - sin_a
    expected = shrink * target_mu
    if abs(mu_new - expected) > 1e-8 * max(expected, 1e-300):
        violations.append((k, "mu_contraction",
                           abs(mu_new - expected) / max(expected, 1e-300)))
    rc_err = np.linalg.norm(rc_new - shrink * rc)
    if rc_err > 1e-8 * (1.0 + np.linalg.norm(rc)):
        violations.append((k, "rc_contraction", float(rc_err)))
    live = np.abs(rb) > rb_floor
    bound = np.abs(rb[live]) * shrink * (1.0 + 1e-10) + rb_floor
    excess = np.abs(rb_new[live]) - bound
    if excess.size and excess.max() > 0:
        violations.append((k, "rb_contraction", float(excess.max())))
    flipped = (np.abs(rb_new) > rb_floor) & (np.abs(rb0) > rb_floor) \
        & (np.sign(rb_new) != np.sign(rb0))
    if np.any(flipped):
        violations.append((k, "rb_sign_flip", int(np.sum(flipped))))
    dev = np.linalg.norm(x_new * s_new - mu_new)
    if dev > theta * mu_new * (1.0 + 1e-8):
        violations.append((k, "neighborhood", float(dev / mu_new)))
    if beta_k > 0.0:
        lo = (1.0 - beta) * x - 1e-12 * np.abs(x)
        hi = (1.0 + beta) * x + 1e-12 * np.abs(x)
        if np.any(z < lo) or np.any(z > hi):
            violations.append((k, "restart_box", float(beta_k)))


# ----------------------------------------------------------------------
# Practical arc search (alg2) and the arc baseline
# ----------------------------------------------------------------------

def solve_alg2(lp, config=None):
    """Practical arc search with unconditional momentum restarts."""
    config = replace(config or SolverConfig(), algorithm="alg2").validate()
    return _mehrotra_arc(lp, config, momentum=True)


def solve_arc_baseline(lp, config=None):
    """Arc search without restarts (the practical method at weight 0)."""
    config = replace(config or SolverConfig(), algorithm="arc").validate()
    return _mehrotra_arc(lp, config, momentum=False)


def _mehrotra_arc(lp, config, momentum):
    t0 = time.perf_counter()
    x, lam, s = initial_point_mehrotra(lp)
    norms = (float(np.linalg.norm(lp.b)), float(np.linalg.norm(lp.c)))
    rb, rc = residuals(lp, x, lam, s)
    mu = duality_measure(x, s)
    init = (mu, np.linalg.norm(rb), np.linalg.norm(rc))
    prev_x = prev_rb = None
    trace, violations = [], []
    e = np.ones(lp.n)

    k = 0
    while True:
        if _stop(lp, x, lam, s, config, norms, init):
            return _finish(lp, Status.OPTIMAL, k, t0, x, lam, s, trace,
                           violations)
        if k >= config.max_iter or _deadline_hit(config, t0):
            note = "time limit" if k < config.max_iter else ""
            return _finish(lp, Status.ITERATION_LIMIT, k, t0, x, lam, s,
                           trace, violations, note)

        beta_k, z = 0.0, x
        if momentum and prev_x is not None and not \
                config.force_zero_momentum:
            delta = x - prev_x
            if config.beta_formula == "full":
                beta_k = momentum_weight_full(x, prev_x, rb, prev_rb,
                                              config.beta)
            else:
                beta_k = momentum_weight_simple(x, prev_x, config.beta)
            z = restart_point(x, beta_k, delta, "always")
            if z.min() <= 0.0:
                # Only reachable at beta = 1: the shift may zero out a
                # component, which the kernel cannot scale by.
                beta_k, z = 0.0, x
        mu_z = duality_measure(z, s)

        try:
            fac = factor(lp.A, z, s)
            dz, dlam, ds = first_derivatives(lp, fac, z, lam, s)
            alpha_az = _linear_ratio_step(z, dz)
            alpha_as = _linear_ratio_step(s, ds)
            mu_a = duality_measure(z - alpha_az * dz, s - alpha_as * ds)
            sigma = float(np.clip((mu_a / mu_z) ** 3,
                                  config.sigma_min, config.sigma_max))
            ddz, ddlam, dds = second_derivatives(lp, fac, z, s, dz, ds,
                                                 sigma, mu_z)
        except NumericalError:
            return _finish(lp, Status.NUMERICAL_ERROR, k, t0, x, lam, s,
                           trace, violations)

        alpha_max_z = max_alpha_positivity(z, dz, ddz)
        alpha_max_s = max_alpha_positivity(s, ds, dds)

        # Whole-step candidate: accept the boundary point outright when
        # it already meets the stopping test.
        x_cand = arc_point(z, dz, ddz, alpha_max_z)
        lam_cand = arc_point(lam, dlam, ddlam, alpha_max_s)
        s_cand = arc_point(s, ds, dds, alpha_max_s)
        if x_cand.min() >= 0.0 and s_cand.min() >= 0.0 and \
                _stop(lp, x_cand, lam_cand, s_cand, config, norms, init):
            if config.trace:
                trace.append(_arc_trace(k, mu, mu_z, beta_k, alpha_max_z,
                                        alpha_max_s, rb, rc))
            return _finish(lp, Status.OPTIMAL, k + 1, t0, x_cand, lam_cand,
                           s_cand, trace, violations)

        alpha_z = config.gamma * alpha_max_z
        alpha_s = config.gamma * alpha_max_s
        if max(alpha_z, alpha_s) < config.step_floor:
            return _finish(lp, Status.STEP_TOO_SMALL, k, t0, x, lam, s,
                           trace, violations)
        x_new = arc_point(z, dz, ddz, alpha_z)
        lam_new = arc_point(lam, dlam, ddlam, alpha_s)
        s_new = arc_point(s, ds, dds, alpha_s)
        if x_new.min() <= 0.0 or s_new.min() <= 0.0:
            return _finish(lp, Status.STEP_TOO_SMALL, k, t0, x, lam, s,
                           trace, violations,
                           note="damped arc step left the interior")

        if config.trace:
            trace.append(_arc_trace(k, mu, mu_z, beta_k, alpha_z, alpha_s,
                                    rb, rc))
        prev_x, prev_rb = x, rb
        x, lam, s = x_new, lam_new, s_new
        rb, rc = residuals(lp, x, lam, s)
        mu = duality_measure(x, s)
        k += 1


def _arc_trace(k, mu, mu_z, beta_k, alpha_z, alpha_s, rb, rc):
    return {"iter": k, "mu": mu, "mu_z": mu_z, "beta_k": beta_k,
            "alpha": float(alpha_z), "sin_alpha": float(np.sin(alpha_z)),
            "step_primal": float(np.sin(alpha_z)),
            "step_dual": float(np.sin(alpha_s)),
            "rb_norm": float(np.linalg.norm(rb)),
            "rc_norm": float(np.linalg.norm(rc))}


# ----------------------------------------------------------------------
# Line-search baseline (predictor-corrector)
# ----------------------------------------------------------------------

def solve_line_baseline(lp, config=None):
    """Predictor-corrector line search with damped separate steps."""
    config = replace(config or SolverConfig(), algorithm="line").validate()
    t0 = time.perf_counter()
    x, lam, s = initial_point_mehrotra(lp)
    norms = (float(np.linalg.norm(lp.b)), float(np.linalg.norm(lp.c)))
    rb, rc = residuals(lp, x, lam, s)
    mu = duality_measure(x, s)
    init = (mu, np.linalg.norm(rb), np.linalg.norm(rc))
    trace = []
    e = np.ones(lp.n)

    k = 0
    while True:
        if _stop(lp, x, lam, s, config, norms, init):
            return _finish(lp, Status.OPTIMAL, k, t0, x, lam, s, trace, [])
        if k >= config.max_iter or _deadline_hit(config, t0):
            note = "time limit" if k < config.max_iter else ""
            return _finish(lp, Status.ITERATION_LIMIT, k, t0, x, lam, s,
                           trace, [], note)

        try:
            fac = factor(lp.A, x, s)
            # Predictor: the affine direction is the negated solution.
            px, plam, ps = solve_block(fac, lp.A, x, s, rb, rc, x * s)
            alpha_p = _linear_ratio_step(x, px)
            alpha_d = _linear_ratio_step(s, ps)
            mu_aff = duality_measure(x - alpha_p * px, s - alpha_d * ps)
            sigma = float(np.clip((mu_aff / mu) ** 3,
                                  config.sigma_min, config.sigma_max))
            # Corrector recenters and cancels the predictor's
            # second-order complementarity error.
            cx, clam, cs = solve_block(
                fac, lp.A, x, s, np.zeros(lp.m), np.zeros(lp.n),
                sigma * mu * e - px * ps)
        except NumericalError:
            return _finish(lp, Status.NUMERICAL_ERROR, k, t0, x, lam, s,
                           trace, [])

        dx = -px + cx
        dlam = -plam + clam
        ds = -ps + cs
        alpha_p = min(1.0, config.gamma
                      * _linear_ratio_step(x, -dx, cap=np.inf))
        alpha_d = min(1.0, config.gamma
                      * _linear_ratio_step(s, -ds, cap=np.inf))
        if max(alpha_p, alpha_d) < config.step_floor:
            return _finish(lp, Status.STEP_TOO_SMALL, k, t0, x, lam, s,
                           trace, [])
        x_new = x + alpha_p * dx
        lam_new = lam + alpha_d * dlam
        s_new = s + alpha_d * ds
        if x_new.min() <= 0.0 or s_new.min() <= 0.0:
            return _finish(lp, Status.STEP_TOO_SMALL, k, t0, x, lam, s,
                           trace, [],
                           note="damped line step left the interior")

        if config.trace:
            trace.append({"iter": k, "mu": mu, "mu_z": mu, "beta_k": 0.0,
                          "alpha": float(alpha_p), "sin_alpha": None,
                          "step_primal": float(alpha_p),
                          "step_dual": float(alpha_d),
                          "rb_norm": float(np.linalg.norm(rb)),
                          "rc_norm": float(np.linalg.norm(rc))})
        x, lam, s = x_new, lam_new, s_new
        rb, rc = residuals(lp, x, lam, s)
        mu = duality_measure(x, s)
        k += 1
