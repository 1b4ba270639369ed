"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -s -q` to see the lines as they go.
Randomized suites use fixed seeds so every run checks identical cases.
"""

import math
import time

import numpy as np
import pytest

import depoflux as df
from oracles import rh_residuals, speed_gap_outer, stable_minus, stable_plus

OPPOSED = (df.State(1, 1), df.State(-1, 1.5))


def _report(number, name, ok):
    print(f"ACCEPTANCE {number:02d} {name}: {'PASS' if ok else 'FAIL'}")
    assert ok, f"acceptance criterion {number} ({name}) failed"


# --------------------------------------------------------------------- 1


def test_acceptance_01_invariant_round_trip():
    rng = np.random.default_rng(20260808)
    n = 10_000
    us = rng.uniform(-10.0, 10.0, n)
    vs = rng.uniform(0.0, 10.0, n)
    vs[vs == 0.0] = 1e-6
    epss = 10.0 ** rng.uniform(-8.0, 0.0, n)
    start = time.perf_counter()
    ok = True
    for u, v, eps in zip(us, vs, epss):
        s = df.State(u, v)
        back = df.state_from_invariants(df.riemann_invariants(s, eps), eps)
        if not (df.within(back.u, u, 1e-10) and df.within(back.v, v, 1e-10)):
            ok = False
            break
    elapsed = time.perf_counter() - start
    _report(1, "invariant round-trip", ok and elapsed < 1.0)


# --------------------------------------------------------------------- 2


_V_CAP = 100.0  # residual tolerances are absolute, stated for values <= 1e2


def _random_case(rng, kind1, kind2):
    """Draw data whose solution has the requested wave kinds, by walking the
    slow branch (fan side: u up toward the positivity edge; shock side: u
    down toward the density cap) and then the fast branch from the middle."""
    eps = 10.0 ** rng.uniform(-6.0, 0.0)
    left = df.State(rng.uniform(-3.0, 3.0), rng.uniform(0.1, 5.0))
    inv_l = df.riemann_invariants(left, eps)
    w = inv_l.w
    if kind1 == "R":
        headroom = -eps * w - left.u  # distance to v = 0 along the w-line
        mid_u = left.u + rng.uniform(0.02, 0.95) * headroom
    else:
        cap = (_V_CAP - left.v) / (-w)  # distance to v = cap along the w-line
        mid_u = left.u - rng.uniform(0.05, 0.95) * min(2.0, cap)
    mid = df.State(mid_u, w * mid_u + eps * w * w)
    z = df.riemann_invariants(mid, eps).z
    if kind2 == "R":
        cap = (_V_CAP - mid.v) / z  # density grows along the z-line
        right_u = mid_u + rng.uniform(0.05, 0.95) * min(2.0, cap)
    else:
        headroom = mid_u + eps * z  # distance to v = 0 along the z-line
        right_u = mid_u - rng.uniform(0.02, 0.95) * headroom
    right = df.State(right_u, z * right_u + eps * z * z)
    return left, right, eps


def _check_shock(wave, eps):
    ru, rv = rh_residuals(wave.speed, wave.left.u, wave.left.v, wave.right.u, wave.right.v, eps)
    if abs(ru) >= 1e-10 or abs(rv) >= 1e-10:
        return False
    lam1_l, lam2_l = df.eigenvalues(wave.left, eps)
    lam1_r, lam2_r = df.eigenvalues(wave.right, eps)
    if wave.right.u >= wave.left.u:
        return False
    if wave.family == 1:
        return wave.speed < lam1_l < lam2_l and lam1_r < wave.speed < lam2_r
    return lam1_l < wave.speed < lam2_l and lam1_r < lam2_r < wave.speed


def _check_fan(sol, wave, eps):
    if not wave.xi_start <= wave.xi_end:
        return False
    anchor = df.riemann_invariants(wave.left if wave.family == 1 else wave.right, eps)
    frozen = anchor.w if wave.family == 1 else anchor.z
    prev = -math.inf
    for theta in (0.0, 0.25, 0.5, 0.75, 1.0):
        xi = wave.xi_start + theta * (wave.xi_end - wave.xi_start)
        s = df.evaluate(sol, xi)
        lam = df.eigenvalues(s, eps)[wave.family - 1]
        if lam < prev - 1e-12:
            return False
        prev = lam
        inv = df.riemann_invariants(s, eps)
        value = inv.w if wave.family == 1 else inv.z
        if not df.within(value, frozen, 1e-12):
            return False
    return True


def test_acceptance_02_jump_and_admissibility_suites():
    rng = np.random.default_rng(42)
    start = time.perf_counter()
    ok = True
    for kind1, kind2 in (("R", "R"), ("R", "S"), ("S", "R"), ("S", "S")):
        expected = df.WavePattern(f"{kind1}1{kind2}2")
        for _ in range(1000):
            left, right, eps = _random_case(rng, kind1, kind2)
            sol = df.solve_riemann(left, right, eps)
            if sol.pattern is not expected:
                ok = False
                break
            for wave in sol.waves:
                good = (
                    _check_shock(wave, eps)
                    if isinstance(wave, df.Shock)
                    else _check_fan(sol, wave, eps)
                )
                if not good:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            break
    elapsed = time.perf_counter() - start
    _report(2, "jump conditions and admissibility", ok and elapsed < 5.0)


# --------------------------------------------------------------------- 3


def test_acceptance_03_two_shock_threshold():
    th = df.epsilon_threshold(*OPPOSED)
    ok = th.value == 20.0 and th.closed_form
    ok = ok and df.classify(*OPPOSED, 19.9) is df.WavePattern.S1S2
    ok = ok and df.classify(*OPPOSED, 20.1) is not df.WavePattern.S1S2
    lo, hi = 1.0, 100.0
    while hi / lo > 1.0 + 1e-12:
        mid = math.sqrt(lo * hi)
        if df.classify(*OPPOSED, mid) is df.WavePattern.S1S2:
            lo = mid
        else:
            hi = mid
    ok = ok and abs(0.5 * (lo + hi) - 20.0) <= 20.0 * 1e-10
    _report(3, "two-shock threshold", ok)


# --------------------------------------------------------------------- 4


def test_acceptance_04_closed_form_limits():
    eps_grid = [10.0 ** (-k) for k in range(1, 9)]
    start = time.perf_counter()
    table = df.sweep(*OPPOSED, eps_grid)
    last = table.rows[-1]
    ok = last.eps == 1e-8
    ok = ok and abs(last.u_star - 0.0) < 1e-3
    ok = ok and abs(last.sigma1 - 0.0) < 1e-3
    ok = ok and abs(last.sigma2 - 0.0) < 1e-3
    ok = ok and abs(last.product - 2.5) < 1e-3
    ok = ok and all(table.monotone[c] for c in ("u_star", "sigma1", "sigma2", "product", "v_star"))
    elapsed = time.perf_counter() - start
    _report(4, "closed-form limits on the eps sweep", ok and elapsed < 1.0)


# --------------------------------------------------------------------- 5


def test_acceptance_05_speed_gap_identity():
    rng = np.random.default_rng(7)
    ok = True
    for _ in range(1000):
        left, right, eps = _random_case(rng, "S", "S")
        sol = df.solve_riemann(left, right, eps)
        if sol.pattern is not df.WavePattern.S1S2:
            ok = False
            break
        gap = sol.waves[1].speed - sol.waves[0].speed
        ref = speed_gap_outer(left.u, left.v, right.u, right.v, eps)
        if not df.within(gap, ref, 1e-12):
            ok = False
            break
    _report(5, "speed-gap identity at every eps", ok)


# --------------------------------------------------------------------- 6


def test_acceptance_06_two_rarefaction_limits():
    left, right = df.State(-1, 1), df.State(1, 1.5)
    eps_grid = [10.0 ** (-k) for k in range(1, 9)]
    table = df.sweep(left, right, eps_grid)
    vs = [r.v_star for r in table.rows]
    us = [abs(r.u_star) for r in table.rows]
    ok = all(b < a for a, b in zip(vs, vs[1:]))
    ok = ok and all(b < a for a, b in zip(us, us[1:]))
    ok = ok and table.rows[-1].v_star < 1e-6
    _report(6, "two-rarefaction vacuum limits", ok)


# --------------------------------------------------------------------- 7


def test_acceptance_07_delta_solver():
    sol = df.solve_riemann_limit(*OPPOSED)
    ds = sol.delta
    ok = sol.pattern is df.LimitPattern.DELTA
    ok = ok and ds.sigma == 0.0 and ds.u_delta == 0.0 and ds.w1 == 2.5
    ok = ok and df.grh_residual(ds, *OPPOSED) == (0.0, 0.0, 0.0)
    ok = ok and df.entropy_check(ds, *OPPOSED)
    _report(7, "measure-valued solver", ok)


# --------------------------------------------------------------------- 8


def test_acceptance_08_weak_form_convergence():
    phi, supp = df.flat_bump(0.0, 0.5, 1.5)
    eps_grid = [10.0 ** (-k) for k in range(2, 9)]
    residuals = [df.weak_form_residual(*OPPOSED, e, phi, supp) for e in eps_grid]
    # With a test function flat over the wave fan the relation is exact at
    # every eps, so residuals may sit at the quadrature noise floor instead
    # of decaying; accept either shape, and require the stated final bound.
    monotone = all(b < a for a, b in zip(residuals, residuals[1:]))
    at_floor = max(residuals) < 1e-6
    ok = residuals[-1] < 1e-3 and (monotone or at_floor)
    _report(8, "weak-form convergence", ok)


# --------------------------------------------------------------------- 9


def test_acceptance_09_simulation_matches_exact():
    start = time.perf_counter()
    sol = df.solve_riemann(*OPPOSED, 0.3)
    s1, s2 = (w.speed for w in sol.waves)

    snap = df.run(df.SimConfig(eps=0.3), *OPPOSED)[-1]
    x = snap.grid.centers()
    margin = 6 * snap.grid.dx
    mask = (x > s1 * snap.t + margin) & (x < s2 * snap.t - margin)
    plateau = float(np.median(snap.v[mask]))
    ok = abs(plateau - sol.middle.v) / sol.middle.v < 0.02

    errors = []
    for cells in (250, 500, 1000):
        s = df.run(df.SimConfig(eps=0.3, n_cells=cells), *OPPOSED)[-1]
        errors.append(df.l1_distance(s, sol)["l1"])
    ok = ok and errors[0] > errors[1] > errors[2]
    elapsed = time.perf_counter() - start
    _report(9, "simulation versus exact solution", ok and elapsed < 10.0)


# -------------------------------------------------------------------- 10


def test_acceptance_10_concentration_reproduction():
    start = time.perf_counter()
    v_maxes, separations = [], []
    weight = None
    for eps in (0.3, 0.15, 0.07, 0.001):
        snap = df.run(df.SimConfig(eps=eps), *OPPOSED)[-1]
        d = snap.diagnostics
        v_maxes.append(d["v_max"])
        locs = d["shock_locs"]
        separations.append(locs[1] - locs[0] if len(locs) == 2 else 0.0)
        if eps == 0.001:
            weight = d["delta_weight_estimate"]
    ok = all(b > a for a, b in zip(v_maxes, v_maxes[1:]))
    ok = ok and all(b < a for a, b in zip(separations, separations[1:]))
    ok = ok and abs(weight - 1.0) < 0.15
    elapsed = time.perf_counter() - start
    _report(10, "concentration reproduction", ok and elapsed < 30.0)
