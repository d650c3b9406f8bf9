"""
FiniteDiff.py - Central finite-difference stencils for vector-valued maps
"""

from typing import Callable

import numpy as np

ChartFn = Callable[[np.ndarray], np.ndarray]


def fd_weights(order: int, half_width: int) -> np.ndarray:
    """
    Weights w_j (j = -half_width..half_width, unit spacing) with
    sum_j w_j f(j) = f^(order)(0) exactly for polynomials of degree <= 2*half_width.

    Divide by h**order for spacing h.
    """
    if order < 0 or 2 * half_width < order:
        raise ValueError(f"Stencil half-width {half_width} too small for derivative order {order}")
    offsets = np.arange(-half_width, half_width + 1, dtype=float)
    n = offsets.size
    V = np.vander(offsets, n, increasing=True).T
    rhs = np.zeros(n)
    rhs[order] = float(np.prod(np.arange(1, order + 1)))
    return np.linalg.solve(V, rhs)


def derivative_1d(f: Callable[[float], float], x0: float, order: int, step: float,
                  half_width: int = None) -> float:
    """High-order central estimate of f^(order)(x0)"""
    half_width = (order + 1) // 2 + 2 if half_width is None else half_width
    w = fd_weights(order, half_width)
    values = np.array([f(x0 + j * step) for j in range(-half_width, half_width + 1)])
    return float(w @ values) / step ** order


def jacobian(fn: ChartFn, u: np.ndarray, h: float) -> np.ndarray:
    """Central first derivatives, one row per parameter"""
    u = np.asarray(u, dtype=float)
    rows = []
    for i in range(u.size):
        e = np.zeros_like(u)
        e[i] = h
        rows.append((fn(u + e) - fn(u - e)) / (2.0 * h))
    return np.array(rows)


def hessian(fn: ChartFn, u: np.ndarray, h: float) -> np.ndarray:
    """Central second derivatives, shape (k, k, ambient_dim)"""
    u = np.asarray(u, dtype=float)
    k = u.size
    f0 = np.asarray(fn(u), dtype=float)
    H = np.zeros((k, k, f0.size))
    for i in range(k):
        ei = np.zeros(k)
        ei[i] = h
        H[i, i] = (fn(u + ei) - 2.0 * f0 + fn(u - ei)) / h ** 2
        for j in range(i + 1, k):
            ej = np.zeros(k)
            ej[j] = h
            H[i, j] = (fn(u + ei + ej) - fn(u + ei - ej)
                       - fn(u - ei + ej) + fn(u - ei - ej)) / (4.0 * h ** 2)
            H[j, i] = H[i, j]
    return H


def curve_second_derivative(curve: Callable[[float], np.ndarray], h: float) -> np.ndarray:
    """c''(0) by the three-point stencil"""
    return (curve(h) - 2.0 * curve(0.0) + curve(-h)) / h ** 2
