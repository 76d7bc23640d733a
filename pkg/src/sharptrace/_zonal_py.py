"""Pure NumPy zonal-harmonic kernels (fallback for the compiled ``_zonal``)."""
import numpy as np


def recurrence_coefficients(K, lam):
    """Off-diagonal Jacobi-matrix entries for the Gegenbauer weight.

    ``a[k]`` couples degrees ``k-1`` and ``k`` in the orthonormal recurrence
    ``t Y_k = a[k+1] Y_{k+1} + a[k] Y_{k-1}``; ``a[0]`` is unused.
    """
    a = np.zeros(K + 2)
    k = np.arange(1, K + 2, dtype=float)
    a[1:] = np.sqrt(k * (k + 2 * lam - 1) / (4.0 * (k + lam) * (k + lam - 1)))
    return a


def zonal_table(t, K, lam, y0):
    """Values ``Y_k(t_i)`` of the orthonormal zonal harmonics, shape (n, K+1)."""
    t = np.asarray(t, dtype=float)
    a = recurrence_coefficients(K, lam)
    out = np.empty((t.size, K + 1))
    out[:, 0] = y0
    if K >= 1:
        out[:, 1] = t * y0 / a[1]
    for k in range(1, K):
        out[:, k + 1] = (t * out[:, k] - a[k] * out[:, k - 1]) / a[k + 1]
    return out


def zonal_clenshaw(c, t, lam, y0):
    """Evaluate ``sum_k c[k] Y_k(t)`` by the Clenshaw recurrence."""
    c = np.asarray(c, dtype=float)
    t = np.asarray(t, dtype=float)
    K = c.size - 1
    a = recurrence_coefficients(K + 1, lam)
    b1 = np.zeros_like(t)
    b2 = np.zeros_like(t)
    for k in range(K, -1, -1):
        # Y_{k+1} = (t / a[k+1]) Y_k - (a[k] / a[k+1]) Y_{k-1}
        bk = c[k] + (t / a[k + 1]) * b1 - (a[k + 1] / a[k + 2]) * b2
        b2 = b1
        b1 = bk
    return y0 * b1
