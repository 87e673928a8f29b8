"""
Projected Gauss-Seidel sweep kernel.

Compiled once at import. The row dot product accumulates strictly left to
right (no fastmath), so identical inputs give bit-identical iterates. A NaN
update is stored as NaN rather than clipped to zero.
"""

from numba import njit


@njit("void(float64[:, ::1], float64[::1], float64[::1], boolean)", cache=True)
def gauss_seidel_sweep(matrix, rhs, x, reverse):  # pragma: no cover - compiled
    n = rhs.shape[0]
    for step in range(n):
        i = n - 1 - step if reverse else step
        row = matrix[i]
        acc = 0.0
        for j in range(n):
            acc += row[j] * x[j]
        value = x[i] - (acc - rhs[i]) / row[i]
        x[i] = 0.0 if value <= 0.0 else value
