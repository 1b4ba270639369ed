"""Phase-plane states and numerically stable square-root combinations.

Everything downstream works with the discriminant sqrt(u^2 + 4*eps*v).
The combinations u -/+ sqrt(...) suffer catastrophic cancellation exactly
in the small-eps regime the limit sweeps probe, so they are computed here
once, in product form, and reused everywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class DomainError(ValueError):
    """Inputs outside the admissible domain (v > 0, eps > 0, finite values)."""


@dataclass(frozen=True)
class State:
    """A point (u, v) in the upper half phase plane: velocity u, density v > 0."""

    u: float
    v: float

    def __post_init__(self):
        u, v = float(self.u), float(self.v)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        if not (math.isfinite(u) and math.isfinite(v)):
            raise DomainError(f"state components must be finite, got ({u}, {v})")
        if not v > 0.0:
            raise DomainError(f"v must be positive (got {v})")

    def __iter__(self):
        yield self.u
        yield self.v


def as_state(obj) -> State:
    """Coerce a State or a (u, v) pair into a validated State."""
    if isinstance(obj, State):
        return obj
    u, v = obj
    return State(float(u), float(v))


def check_eps(eps) -> float:
    eps = float(eps)
    if not math.isfinite(eps) or eps <= 0.0:
        raise DomainError(f"eps must be a positive finite number (got {eps})")
    return eps


def disc(u: float, v: float, eps: float) -> float:
    """sqrt(u^2 + 4*eps*v)."""
    return math.sqrt(u * u + 4.0 * eps * v)


def u_minus_disc(u: float, v: float, eps: float) -> float:
    """u - sqrt(u^2 + 4*eps*v), in product form when u > 0.

    For u > 0 the direct difference loses all significant digits once
    4*eps*v << u^2; the identity (u - d)(u + d) = -4*eps*v avoids that.
    """
    d = disc(u, v, eps)
    if u > 0.0:
        return -4.0 * eps * v / (u + d)
    return u - d


def u_plus_disc(u: float, v: float, eps: float) -> float:
    """u + sqrt(u^2 + 4*eps*v), in product form when u < 0."""
    d = disc(u, v, eps)
    if u < 0.0:
        return 4.0 * eps * v / (d - u)
    return u + d


def within(value: float, target: float, tol: float = 1e-10) -> bool:
    """Tolerance policy: relative when |target| exceeds 1, absolute otherwise."""
    return abs(value - target) <= tol * max(1.0, abs(target))
