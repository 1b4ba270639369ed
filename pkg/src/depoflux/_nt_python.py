"""Pure-numpy staggered central step.  Mirror of _nt_cython.nt_apply."""

import numpy as np

KERNEL = "python"


def _minmod3(a, b, c):
    lo = np.minimum(np.minimum(a, b), c)
    hi = np.maximum(np.maximum(a, b), c)
    return np.where(lo > 0.0, lo, np.where(hi < 0.0, hi, 0.0))


def nt_apply(u, v, lam, eps, theta):
    """One predictor-corrector application, cell averages -> staggered averages.

    Input arrays of length M produce output arrays of length M - 3, shifted
    right by 1.5 cells; lam is dt/dx for this application.  Slopes use the
    three-argument minmod with weight theta; predictor derivatives come from
    minmod applied to flux differences (no Jacobian evaluation).
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape[0] < 4:
        raise ValueError("need at least 4 cells")

    fu = u * u + eps * v
    fv = u * v

    su = _minmod3(theta * (u[1:-1] - u[:-2]), 0.5 * (u[2:] - u[:-2]), theta * (u[2:] - u[1:-1]))
    sv = _minmod3(theta * (v[1:-1] - v[:-2]), 0.5 * (v[2:] - v[:-2]), theta * (v[2:] - v[1:-1]))
    sfu = _minmod3(theta * (fu[1:-1] - fu[:-2]), 0.5 * (fu[2:] - fu[:-2]), theta * (fu[2:] - fu[1:-1]))
    sfv = _minmod3(theta * (fv[1:-1] - fv[:-2]), 0.5 * (fv[2:] - fv[:-2]), theta * (fv[2:] - fv[1:-1]))

    um = u[1:-1] - 0.5 * lam * sfu
    vm = v[1:-1] - 0.5 * lam * sfv
    pfu = um * um + eps * vm
    pfv = um * vm

    uo = 0.5 * (u[1:-2] + u[2:-1]) + 0.125 * (su[:-1] - su[1:]) - lam * (pfu[1:] - pfu[:-1])
    vo = 0.5 * (v[1:-2] + v[2:-1]) + 0.125 * (sv[:-1] - sv[1:]) - lam * (pfv[1:] - pfv[:-1])
    return uo, vo
