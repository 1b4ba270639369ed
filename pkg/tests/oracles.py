"""Self-contained reference formulas used as independent checks.

Everything here is written directly from the model's algebra (flux Jacobian,
jump conditions, straight wave curves) without importing solver internals,
so a test comparing against these exercises two distinct routes.
"""

import math

import numpy as np


def stable_minus(u, v, eps):
    """u - sqrt(u^2 + 4*eps*v) without cancellation."""
    d = math.sqrt(u * u + 4.0 * eps * v)
    return -4.0 * eps * v / (u + d) if u > 0.0 else u - d


def stable_plus(u, v, eps):
    """u + sqrt(u^2 + 4*eps*v) without cancellation."""
    d = math.sqrt(u * u + 4.0 * eps * v)
    return 4.0 * eps * v / (d - u) if u < 0.0 else u + d


def jacobian_eigenvalues(u, v, eps):
    """Eigenvalues of the flux Jacobian [[2u, eps], [v, u]] via numpy."""
    return sorted(np.linalg.eigvals(np.array([[2.0 * u, eps], [v, u]])).real)


def v_star_line_intersection(um, vm, up, vp, eps):
    """Intermediate density from intersecting the two straight wave lines:
    u - u_- = s1 (v - v_-) against u - u_+ = s2 (v - v_+) with the curve
    slopes s1 = (u_- - sqrt(u_-^2+4 eps v_-)) / (2 v_-) and
    s2 = (u_+ + sqrt(u_+^2+4 eps v_+)) / (2 v_+)."""
    s1 = stable_minus(um, vm, eps) / (2.0 * vm)
    s2 = stable_plus(up, vp, eps) / (2.0 * vp)
    return (up - um - s2 * vp + s1 * vm) / (s1 - s2)


def rh_residuals(sigma, ul, vl, ur, vr, eps):
    """Both jump-condition residuals -sigma [q] + [f(q)] across a discontinuity."""
    r_u = -sigma * (ul - ur) + (ul * ul + eps * vl) - (ur * ur + eps * vr)
    r_v = -sigma * (vl - vr) + (vl * ul - vr * ur)
    return r_u, r_v


def speed_gap_outer(um, vm, up, vp, eps):
    """sigma2 - sigma1 written only in the outer states."""
    return 0.5 * stable_plus(up, vp, eps) - 0.5 * stable_minus(um, vm, eps)
