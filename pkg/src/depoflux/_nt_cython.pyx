# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled staggered central step.  Mirror of _nt_python.nt_apply."""

import numpy as np

cimport numpy as cnp

cnp.import_array()

KERNEL = "cython"


cdef inline double _minmod3(double a, double b, double c) noexcept nogil:
    cdef double lo = a
    cdef double hi = a
    if b < lo:
        lo = b
    if c < lo:
        lo = c
    if b > hi:
        hi = b
    if c > hi:
        hi = c
    if lo > 0.0:
        return lo
    if hi < 0.0:
        return hi
    return 0.0


def nt_apply(object u_in, object v_in, double lam, double eps, double theta):
    """One predictor-corrector application, cell averages -> staggered averages.

    Same contract as the pure-Python kernel: length M in, length M - 3 out,
    output shifted right by 1.5 cells; lam is dt/dx for this application.
    """
    u_arr = np.ascontiguousarray(u_in, dtype=np.float64)
    v_arr = np.ascontiguousarray(v_in, dtype=np.float64)
    cdef double[::1] u = u_arr
    cdef double[::1] v = v_arr
    cdef Py_ssize_t m = u.shape[0]
    if m < 4:
        raise ValueError("need at least 4 cells")

    fu_arr = np.empty(m, dtype=np.float64)
    fv_arr = np.empty(m, dtype=np.float64)
    su_arr = np.empty(m - 2, dtype=np.float64)
    sv_arr = np.empty(m - 2, dtype=np.float64)
    pfu_arr = np.empty(m - 2, dtype=np.float64)
    pfv_arr = np.empty(m - 2, dtype=np.float64)
    uo_arr = np.empty(m - 3, dtype=np.float64)
    vo_arr = np.empty(m - 3, dtype=np.float64)

    cdef double[::1] fu = fu_arr
    cdef double[::1] fv = fv_arr
    cdef double[::1] su = su_arr
    cdef double[::1] sv = sv_arr
    cdef double[::1] pfu = pfu_arr
    cdef double[::1] pfv = pfv_arr
    cdef double[::1] uo = uo_arr
    cdef double[::1] vo = vo_arr

    cdef Py_ssize_t j, k
    cdef double sfu, sfv, um, vm

    with nogil:
        for j in range(m):
            fu[j] = u[j] * u[j] + eps * v[j]
            fv[j] = u[j] * v[j]

        for k in range(m - 2):
            j = k + 1
            su[k] = _minmod3(theta * (u[j] - u[j - 1]),
                             0.5 * (u[j + 1] - u[j - 1]),
                             theta * (u[j + 1] - u[j]))
            sv[k] = _minmod3(theta * (v[j] - v[j - 1]),
                             0.5 * (v[j + 1] - v[j - 1]),
                             theta * (v[j + 1] - v[j]))
            sfu = _minmod3(theta * (fu[j] - fu[j - 1]),
                           0.5 * (fu[j + 1] - fu[j - 1]),
                           theta * (fu[j + 1] - fu[j]))
            sfv = _minmod3(theta * (fv[j] - fv[j - 1]),
                           0.5 * (fv[j + 1] - fv[j - 1]),
                           theta * (fv[j + 1] - fv[j]))
            um = u[j] - 0.5 * lam * sfu
            vm = v[j] - 0.5 * lam * sfv
            pfu[k] = um * um + eps * vm
            pfv[k] = um * vm

        for k in range(m - 3):
            j = k + 1
            uo[k] = 0.5 * (u[j] + u[j + 1]) + 0.125 * (su[k] - su[k + 1]) \
                - lam * (pfu[k + 1] - pfu[k])
            vo[k] = 0.5 * (v[j] + v[j + 1]) + 0.125 * (sv[k] - sv[k + 1]) \
                - lam * (pfv[k + 1] - pfv[k])

    return uo_arr, vo_arr
