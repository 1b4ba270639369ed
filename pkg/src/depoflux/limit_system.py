"""Exact Riemann solutions of the vanishing-flux limit system

    u_t + (u^2)_x = 0
    v_t + (v u)_x = 0.

The slow field (speed u) is linearly degenerate, the fast field (speed 2u)
genuinely nonlinear.  Classical solutions combine contacts J, fans R and
jumps S; for u_right <= 0 <= u_left no bounded self-similar solution
exists and the density concentrates into a weighted Dirac measure moving
at sigma = u_left + u_right with linearly growing weight.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from scipy.integrate import quad

from .states import DomainError, State, as_state


class LimitPattern(Enum):
    CONSTANT = "CONSTANT"
    DELTA = "DELTA"
    R_J = "R+J"
    J_R = "J+R"
    R_R = "R+R"
    S_J = "S+J"
    J_S = "J+S"
    J = "J"


@dataclass(frozen=True)
class DeltaShock:
    """Dirac wave: path x(t) = sigma t, carried velocity u_delta, weight w1*t."""

    sigma: float
    u_delta: float
    w1: float

    def position(self, t: float) -> float:
        return self.sigma * t

    def weight(self, t: float) -> float:
        return self.w1 * t


@dataclass(frozen=True)
class Contact:
    speed: float


@dataclass(frozen=True)
class LimitShock:
    speed: float


@dataclass(frozen=True)
class LimitFan:
    """Fast fan xi = 2u with the ray slope u/v frozen."""

    xi_start: float
    xi_end: float
    slope: float


@dataclass(frozen=True)
class DeltaWave:
    delta: DeltaShock


@dataclass(frozen=True)
class LimitSolution:
    left: State
    right: State
    pattern: LimitPattern
    waves: tuple
    middle: Optional[State]
    delta: Optional[DeltaShock]

    @property
    def background(self) -> tuple[float, float]:
        """The step profile (v_left, v_right) the Dirac part rides on."""
        return (self.left.v, self.right.v)


@dataclass(frozen=True)
class MeasureState:
    """A sampled value: either a regular (u, v) pair, the vacuum point, or a
    Dirac atom carrying `weight` at velocity `u`."""

    u: float
    v: float
    is_atom: bool = False
    weight: float = 0.0
    vacuum: bool = False


def solve_riemann_limit(left, right) -> LimitSolution:
    """Solve the two-state problem for the limit system.

    Case priority: identical states give CONSTANT; u_right <= 0 <= u_left
    gives the Dirac solution; equal nonzero velocities collapse to a single
    contact; the remaining sign patterns give the five classical pairs.
    """
    left, right = as_state(left), as_state(right)
    um, up = left.u, right.u

    if left == right:
        return LimitSolution(left, right, LimitPattern.CONSTANT, (), None, None)

    if up <= 0.0 <= um:
        sigma = um + up
        ds = DeltaShock(sigma, sigma, um * right.v - up * left.v)
        return LimitSolution(left, right, LimitPattern.DELTA, (DeltaWave(ds),), None, ds)

    if um == up:
        # same velocity, different density: one contact, nothing else
        return LimitSolution(left, right, LimitPattern.J, (Contact(um),), None, None)

    def mid_state(u: float, v: float) -> State:
        if not math.isfinite(v):
            raise DomainError(
                "middle density overflows; velocities sit too close to the concentration boundary"
            )
        return State(u, v)

    if um < up:
        if up < 0.0:
            mid = mid_state(up, left.v * up / um)
            waves = (LimitFan(2.0 * um, 2.0 * up, um / left.v), Contact(up))
            return LimitSolution(left, right, LimitPattern.R_J, waves, mid, None)
        if um > 0.0:
            mid = mid_state(um, right.v * um / up)
            waves = (Contact(um), LimitFan(2.0 * um, 2.0 * up, up / right.v))
            return LimitSolution(left, right, LimitPattern.J_R, waves, mid, None)
        # um <= 0 <= up with at least one strict: fans meeting at the vacuum
        waves = (
            LimitFan(2.0 * um, 0.0, um / left.v if um < 0.0 else 0.0),
            LimitFan(0.0, 2.0 * up, up / right.v if up > 0.0 else 0.0),
        )
        return LimitSolution(left, right, LimitPattern.R_R, waves, None, None)

    # um > up, the Dirac range is excluded, so both velocities share a sign
    sigma = um + up
    if um < 0.0:
        mid = mid_state(up, left.v * up / um)
        waves = (LimitShock(sigma), Contact(up))
        return LimitSolution(left, right, LimitPattern.S_J, waves, mid, None)
    mid = mid_state(um, right.v * um / up)
    waves = (Contact(um), LimitShock(sigma))
    return LimitSolution(left, right, LimitPattern.J_S, waves, mid, None)


def grh_residual(ds: DeltaShock, left, right) -> tuple[float, float, float]:
    """Residuals of the generalized jump relations for a Dirac wave.

    r1: path slope minus carried velocity; r2: momentum jump balance
    -u_delta [u] + [u^2]; r3: weight growth minus -u_delta [v] + [u v]
    (brackets are left minus right).
    """
    left, right = as_state(left), as_state(right)
    ju = left.u - right.u
    ju2 = left.u * left.u - right.u * right.u
    jv = left.v - right.v
    juv = left.u * left.v - right.u * right.v
    r1 = ds.sigma - ds.u_delta
    r2 = -ds.u_delta * ju + ju2
    r3 = ds.w1 - (-ds.u_delta * jv + juv)
    return r1, r2, r3


def entropy_check(ds: DeltaShock, left, right) -> bool:
    """Overcompressive admissibility: all characteristics of both families
    on both sides run into the wave, 2u_+ <= u_+ <= u_delta <= u_- <= 2u_-."""
    left, right = as_state(left), as_state(right)
    return (
        2.0 * right.u <= right.u <= ds.u_delta <= left.u <= 2.0 * left.u
    )


def evaluate_limit(sol: LimitSolution, x, t) -> MeasureState:
    """Sample the limit solution at (x, t), t > 0.

    The Dirac atom is reported exactly on the path x == sigma*t; the vacuum
    point of two joined fans is reported with an explicit flag.  At a
    contact or jump the left limit is returned.
    """
    x, t = float(x), float(t)
    if not t > 0.0:
        raise DomainError(f"sampling time must be positive (got {t})")
    xi = x / t
    left, right = sol.left, sol.right
    p = sol.pattern

    if p is LimitPattern.CONSTANT:
        return MeasureState(left.u, left.v)

    if p is LimitPattern.DELTA:
        ds = sol.delta
        pos = ds.position(t)
        if x < pos:
            return MeasureState(left.u, left.v)
        if x == pos:
            return MeasureState(ds.u_delta, 0.0, is_atom=True, weight=ds.weight(t))
        return MeasureState(right.u, right.v)

    if p is LimitPattern.J:
        s = left if xi <= sol.waves[0].speed else right
        return MeasureState(s.u, s.v)

    if p is LimitPattern.R_J:
        fan, contact = sol.waves
        if xi < fan.xi_start:
            return MeasureState(left.u, left.v)
        if xi < fan.xi_end:
            return MeasureState(0.5 * xi, 0.5 * xi / fan.slope)
        if xi <= contact.speed:
            return MeasureState(sol.middle.u, sol.middle.v)
        return MeasureState(right.u, right.v)

    if p is LimitPattern.J_R:
        contact, fan = sol.waves
        if xi <= contact.speed:
            return MeasureState(left.u, left.v)
        if xi < fan.xi_start:
            return MeasureState(sol.middle.u, sol.middle.v)
        if xi < fan.xi_end:
            return MeasureState(0.5 * xi, 0.5 * xi / fan.slope)
        return MeasureState(right.u, right.v)

    if p is LimitPattern.R_R:
        fan1, fan2 = sol.waves
        if xi < fan1.xi_start:
            return MeasureState(left.u, left.v)
        if xi < 0.0:
            return MeasureState(0.5 * xi, 0.5 * xi / fan1.slope)
        if xi == 0.0:
            if left.u < 0.0:
                return MeasureState(0.0, 0.0, vacuum=True)
            return MeasureState(left.u, left.v)
        if xi < fan2.xi_end:
            return MeasureState(0.5 * xi, 0.5 * xi / fan2.slope)
        return MeasureState(right.u, right.v)

    if p is LimitPattern.S_J:
        shock, contact = sol.waves
        if xi <= shock.speed:
            return MeasureState(left.u, left.v)
        if xi <= contact.speed:
            return MeasureState(sol.middle.u, sol.middle.v)
        return MeasureState(right.u, right.v)

    # J_S
    contact, shock = sol.waves
    if xi <= contact.speed:
        return MeasureState(left.u, left.v)
    if xi <= shock.speed:
        return MeasureState(sol.middle.u, sol.middle.v)
    return MeasureState(right.u, right.v)


def pair_with_test_function(ds: DeltaShock, psi, t_max) -> float:
    """Action of the weighted Dirac measure on a test function psi(x, t):
    the line integral of w1*s*psi(sigma*s, s) over s in [0, t_max]."""
    t_max = float(t_max)
    if not (math.isfinite(t_max) and t_max > 0.0):
        raise DomainError(f"t_max must be positive and finite (got {t_max})")
    value, _ = quad(
        lambda s: ds.w1 * s * psi(ds.sigma * s, s),
        0.0,
        t_max,
        epsabs=1e-12,
        epsrel=1e-12,
        limit=200,
    )
    return value
