# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled zonal-harmonic kernels.

Same contract as :mod:`sharptrace._zonal_py`; selected at import by
:mod:`sharptrace.kernels` when the extension is built.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()


cdef void _coefficients(double[::1] a, Py_ssize_t K, double lam) noexcept nogil:
    cdef Py_ssize_t k
    cdef double kk
    a[0] = 0.0
    for k in range(1, K + 2):
        kk = <double>k
        a[k] = sqrt(kk * (kk + 2.0 * lam - 1.0) / (4.0 * (kk + lam) * (kk + lam - 1.0)))


def recurrence_coefficients(Py_ssize_t K, double lam):
    a = np.empty(K + 2)
    _coefficients(a, K, lam)
    return a


def zonal_table(t, Py_ssize_t K, double lam, double y0):
    cdef const double[::1] tv = np.ascontiguousarray(t, dtype=np.float64).ravel()
    cdef Py_ssize_t n = tv.shape[0]
    cdef double[::1] a = np.empty(K + 2)
    out = np.empty((n, K + 1))
    cdef double[:, ::1] ov = out
    cdef Py_ssize_t i, k
    cdef double x, pm, p, pn
    _coefficients(a, K, lam)
    with nogil:
        for i in range(n):
            x = tv[i]
            pm = 0.0
            p = y0
            ov[i, 0] = p
            for k in range(K):
                pn = (x * p - a[k] * pm) / a[k + 1]
                ov[i, k + 1] = pn
                pm = p
                p = pn
    return out


def zonal_clenshaw(c, t, double lam, double y0):
    cdef const double[::1] cv = np.ascontiguousarray(c, dtype=np.float64).ravel()
    t_arr = np.asarray(t, dtype=np.float64)
    cdef const double[::1] tv = np.ascontiguousarray(t_arr).ravel()
    cdef Py_ssize_t K = cv.shape[0] - 1
    cdef Py_ssize_t n = tv.shape[0]
    cdef double[::1] a = np.empty(K + 3)
    out = np.empty(n)
    cdef double[::1] ov = out
    cdef Py_ssize_t i, k
    cdef double x, b1, b2, bk
    _coefficients(a, K + 1, lam)
    with nogil:
        for i in range(n):
            x = tv[i]
            b1 = 0.0
            b2 = 0.0
            for k in range(K, -1, -1):
                bk = cv[k] + (x / a[k + 1]) * b1 - (a[k + 1] / a[k + 2]) * b2
                b2 = b1
                b1 = bk
            ov[i] = y0 * b1
    return out.reshape(t_arr.shape)
