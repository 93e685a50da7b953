"""Gauss-Legendre panel quadrature helpers.

The integrands here are either smooth bumps or oscillatory kernels whose
wavelength is known in advance, so fixed panels sized below one oscillation
plus a doubling check cover every accuracy need without adaptive machinery
in the hot loops.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable

import numpy as np


@lru_cache(maxsize=32)
def gl_nodes(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def panel_nodes(lo: float, hi: float, n_panels: int, nodes: int = 16):
    """Nodes and weights for n_panels equal panels over [lo, hi]."""
    x, w = gl_nodes(nodes)
    edges = np.linspace(lo, hi, n_panels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    pts = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    wts = (half[:, None] * w[None, :]).ravel()
    return pts, wts


def integrate_panels(f: Callable, lo: float, hi: float, n_panels: int, nodes: int = 16):
    """Integrate a vectorized callable over [lo, hi] with fixed GL panels."""
    pts, wts = panel_nodes(lo, hi, n_panels, nodes)
    return np.sum(np.asarray(f(pts)) * wts)


def integrate_adaptive(
    f: Callable,
    lo: float,
    hi: float,
    tol: float = 1e-12,
    nodes: int = 24,
    max_depth: int = 14,
):
    """Panel-splitting quadrature with a doubled-panel error estimate.

    Returns (value, error_estimate).  f must accept numpy arrays.
    """
    coarse = integrate_panels(f, lo, hi, 1, nodes)
    fine = integrate_panels(f, lo, hi, 2, nodes)
    err = abs(fine - coarse)
    if err <= tol or max_depth == 0:
        return fine, err
    mid = 0.5 * (lo + hi)
    left, el = integrate_adaptive(f, lo, mid, 0.5 * tol, nodes, max_depth - 1)
    right, er = integrate_adaptive(f, mid, hi, 0.5 * tol, nodes, max_depth - 1)
    return left + right, el + er


def oscillatory_panels(lo: float, hi: float, wavelength: float, min_panels: int = 4) -> int:
    """Panel count guaranteeing at most one oscillation wavelength per panel."""
    if wavelength <= 0 or not np.isfinite(wavelength):
        return min_panels
    return max(min_panels, int(np.ceil((hi - lo) / wavelength)))
