"""Exact self-similar solutions of the deposition model

    v_t + (u v)_x         = 0
    u_t + (u^2 + eps v)_x = 0,    eps > 0,

with two-state initial data.  Both characteristic fields are genuinely
nonlinear and the shock and rarefaction curves through a point coincide
as straight lines in the (u, v) plane, so the wave-curve intersection is
linear-algebraic: the slow wave keeps the first invariant w, the fast
wave keeps the second invariant z, and the intermediate state is the
unique point carrying (w_left, z_right).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Union

from .states import (
    DomainError,
    State,
    as_state,
    check_eps,
    u_minus_disc,
    u_plus_disc,
)

# A wave whose endpoint velocities differ by less than this is emitted as a
# zero-width fan instead of a zero-strength jump (keeps sampling continuous
# and avoids 0/0 in the curve-slope formulas).
DEGENERATE_WAVE_TOL = 1e-14


class NotAdmissibleError(ValueError):
    """A jump was requested between states that no admissible shock connects."""


class WavePattern(Enum):
    R1R2 = "R1R2"
    R1S2 = "R1S2"
    S1R2 = "S1R2"
    S1S2 = "S1S2"


@dataclass(frozen=True)
class Invariants:
    """Characteristic invariants w < 0 < z of a state with v > 0."""

    w: float
    z: float


@dataclass(frozen=True)
class Shock:
    family: int
    speed: float
    left: State
    right: State


@dataclass(frozen=True)
class Fan:
    """Centered rarefaction: xi runs over [xi_start, xi_end], the family
    invariant is frozen to `invariant` throughout."""

    family: int
    xi_start: float
    xi_end: float
    invariant: float
    left: State
    right: State


Wave = Union[Shock, Fan]


@dataclass(frozen=True)
class RiemannSolution:
    left: State
    right: State
    middle: State
    pattern: WavePattern
    eps: float
    waves: tuple

    def speed_range(self):
        """(slowest, fastest) signal speed, or None for a constant solution."""
        if not self.waves:
            return None
        first, last = self.waves[0], self.waves[-1]
        lo = first.speed if isinstance(first, Shock) else first.xi_start
        hi = last.speed if isinstance(last, Shock) else last.xi_end
        return (lo, hi)


def eigenvalues(s, eps) -> tuple[float, float]:
    """Characteristic speeds (3u -/+ sqrt(u^2+4*eps*v)) / 2, strictly ordered."""
    s = as_state(s)
    eps = check_eps(eps)
    lam1 = s.u + 0.5 * u_minus_disc(s.u, s.v, eps)
    lam2 = s.u + 0.5 * u_plus_disc(s.u, s.v, eps)
    return lam1, lam2


def eigenvectors(s, eps) -> tuple[tuple[float, float], tuple[float, float]]:
    """Right eigenvectors (1, w) and (1, z) in (u, v) coordinates."""
    inv = riemann_invariants(s, eps)
    return (1.0, inv.w), (1.0, inv.z)


def riemann_invariants(s, eps) -> Invariants:
    """w = -(u + sqrt(u^2+4*eps*v)) / (2 eps), z the mirror with the minus root.

    w is constant across slow (family-1) waves, z across fast (family-2)
    waves; for v > 0 they satisfy w < 0 < z.
    """
    s = as_state(s)
    eps = check_eps(eps)
    w = -u_plus_disc(s.u, s.v, eps) / (2.0 * eps)
    z = -u_minus_disc(s.u, s.v, eps) / (2.0 * eps)
    return Invariants(w, z)


def state_from_invariants(inv, eps) -> State:
    """Invert the invariant map: u = -eps (w + z), v = -eps w z."""
    if isinstance(inv, Invariants):
        w, z = inv.w, inv.z
    else:
        w, z = inv
    eps = check_eps(eps)
    if not (w < 0.0 < z):
        raise DomainError(f"invariants must satisfy w < 0 < z, got ({w}, {z})")
    return State(-eps * (w + z), -eps * w * z)


def intermediate_state(left, right, eps) -> State:
    """The state carrying the left w and the right z (wave-curve crossing)."""
    left, right = as_state(left), as_state(right)
    eps = check_eps(eps)
    w = riemann_invariants(left, eps).w
    z = riemann_invariants(right, eps).z
    return state_from_invariants((w, z), eps)


def _wave_kinds(left: State, middle: State, right: State) -> tuple[str, str]:
    # u increases across a fan, decreases across a jump; ties are degenerate
    # zero-width fans.
    k1 = "R" if (abs(middle.u - left.u) < DEGENERATE_WAVE_TOL or middle.u > left.u) else "S"
    k2 = "R" if (abs(right.u - middle.u) < DEGENERATE_WAVE_TOL or right.u > middle.u) else "S"
    return k1, k2


def classify(left, right, eps) -> WavePattern:
    """Which of the four wave patterns the data produces at this eps."""
    left, right = as_state(left), as_state(right)
    eps = check_eps(eps)
    if left == right:
        return WavePattern.R1R2
    mid = intermediate_state(left, right, eps)
    k1, k2 = _wave_kinds(left, mid, right)
    return WavePattern(f"{k1}1{k2}2")


def shock_speed_1(left, middle, eps) -> float:
    """Slow-shock speed u_r + (u_l - sqrt(u_l^2+4*eps*v_l)) / 2.

    The pair must lie on the common straight w-line; admissibility needs the
    velocity to drop across the jump.
    """
    left, middle = as_state(left), as_state(middle)
    eps = check_eps(eps)
    if middle.u >= left.u:
        raise NotAdmissibleError(
            f"slow shock needs u to decrease, got {left.u} -> {middle.u}"
        )
    return middle.u + 0.5 * u_minus_disc(left.u, left.v, eps)


def shock_speed_2(middle, right, eps) -> float:
    """Fast-shock speed u_r + (u_l + sqrt(u_l^2+4*eps*v_l)) / 2."""
    middle, right = as_state(middle), as_state(right)
    eps = check_eps(eps)
    if right.u >= middle.u:
        raise NotAdmissibleError(
            f"fast shock needs u to decrease, got {middle.u} -> {right.u}"
        )
    return right.u + 0.5 * u_plus_disc(middle.u, middle.v, eps)


def solve_riemann(left, right, eps) -> RiemannSolution:
    """Construct the unique piecewise-smooth solution in xi = x/t."""
    left, right = as_state(left), as_state(right)
    eps = check_eps(eps)
    if left == right:
        return RiemannSolution(left, right, left, WavePattern.R1R2, eps, ())

    mid = intermediate_state(left, right, eps)
    k1, k2 = _wave_kinds(left, mid, right)
    waves = []

    if k1 == "R":
        lo = eigenvalues(left, eps)[0]
        hi = eigenvalues(mid, eps)[0]
        w = riemann_invariants(left, eps).w
        waves.append(Fan(1, lo, max(lo, hi), w, left, mid))
    else:
        waves.append(Shock(1, shock_speed_1(left, mid, eps), left, mid))

    if k2 == "R":
        lo = eigenvalues(mid, eps)[1]
        hi = eigenvalues(right, eps)[1]
        z = riemann_invariants(right, eps).z
        waves.append(Fan(2, lo, max(lo, hi), z, mid, right))
    else:
        waves.append(Shock(2, shock_speed_2(mid, right, eps), mid, right))

    return RiemannSolution(left, right, mid, WavePattern(f"{k1}1{k2}2"), eps, tuple(waves))


def _fan_state(fan: Fan, xi: float, eps: float) -> State:
    # d(lambda)/du = 2 along the frozen-invariant line, so u is linear in xi;
    # v follows from v = q u + eps q^2 with q the frozen invariant.
    u = fan.left.u + 0.5 * (xi - fan.xi_start)
    q = fan.invariant
    return State(u, q * u + eps * q * q)


def evaluate(sol: RiemannSolution, xi) -> State:
    """Sample the solution at similarity coordinate xi = x/t.

    At a jump xi == sigma the left limit is returned; fans are sampled
    continuously through their edges.
    """
    xi = float(xi)
    state = sol.left
    for wave in sol.waves:
        if isinstance(wave, Shock):
            if xi <= wave.speed:
                return state
        else:
            if xi <= wave.xi_start:
                return state
            if xi < wave.xi_end:
                return _fan_state(wave, xi, sol.eps)
        state = wave.right
    return state
