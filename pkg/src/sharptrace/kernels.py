"""Backend selection for the zonal-harmonic kernels.

The compiled extension is preferred; the NumPy module is used when the
extension was not built (e.g. a plain source checkout).
"""
try:
    from sharptrace._zonal import recurrence_coefficients, zonal_clenshaw, zonal_table

    BACKEND = "cython"
except ImportError:  # pragma: no cover - exercised only without a C toolchain
    from sharptrace._zonal_py import recurrence_coefficients, zonal_clenshaw, zonal_table

    BACKEND = "python"

__all__ = ["BACKEND", "recurrence_coefficients", "zonal_clenshaw", "zonal_table"]
