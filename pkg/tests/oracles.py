"""Independent oracles used to freeze expected values.

These deliberately avoid the library's own evaluation paths: the Bessel
oracle is a fixed-term ascending series over math.factorial, the root
oracle is a standalone bisection, and the pattern-power oracle is a
hand-rolled composite-trapezoid quadrature on the published grid.
"""

from __future__ import annotations

import math

import numpy as np


def series_bessel_j(n: int, x: float, terms: int = 40) -> float:
    """Ascending power series sum_k (-1)^k (x/2)^(2k+n) / (k! (k+n)!)."""
    total = 0.0
    for k in range(terms):
        total += (-1.0) ** k * (x / 2.0) ** (2 * k + n) / (
            math.factorial(k) * math.factorial(k + n)
        )
    return total


def series_bessel_j_prime(n: int, x: float, terms: int = 40) -> float:
    if n == 0:
        return -series_bessel_j(1, x, terms)
    return 0.5 * (series_bessel_j(n - 1, x, terms) - series_bessel_j(n + 1, x, terms))


def bisect(f, lo: float, hi: float, tol: float = 1e-12, maxit: int = 200) -> float:
    flo, fhi = f(lo), f(hi)
    assert flo * fhi < 0.0, "oracle bisection needs a sign change"
    for _ in range(maxit):
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        if fmid == 0.0 or hi - lo <= tol:
            return mid
        if (fmid > 0.0) == (flo > 0.0):
            lo, flo = mid, fmid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def trapezoid_2d(values: np.ndarray, x: np.ndarray, y: np.ndarray) -> float:
    """Composite trapezoid over a tensor grid, written out longhand."""
    wx = np.full(len(x), x[1] - x[0])
    wx[0] *= 0.5
    wx[-1] *= 0.5
    wy = np.full(len(y), y[1] - y[0])
    wy[0] *= 0.5
    wy[-1] *= 0.5
    return float(wx @ values @ wy)


def pattern_power(design, f: float, E0: float = 1.0,
                  n_theta: int = 181, n_phi: int = 361) -> float:
    """Hemispherical power of the far fields on the 181 x 361 grid."""
    from mmpatch.circpatch import far_fields
    from mmpatch.media import ETA0

    theta = np.linspace(0.0, math.pi / 2, n_theta)
    phi = np.linspace(0.0, 2.0 * math.pi, n_phi)
    e_t, e_p = far_fields(design, f, E0, theta[:, None], phi[None, :])
    integrand = (e_t**2 + e_p**2) * np.sin(theta)[:, None] / (2.0 * ETA0)
    return trapezoid_2d(integrand, theta, phi)


def central_difference(f, x: float, step: float = 1e-6) -> float:
    return (f(x + step) - f(x - step)) / (2.0 * step)
