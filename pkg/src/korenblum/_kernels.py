"""Compiled inner loops for circle scans.

All kernels take ascending complex coefficient arrays. ``mode`` selects the
profile that is maximized along the circle |z| = r:

    0  |num| / |den|
    1  |num| - |den|
    2  |num|^2 - |den|^2
"""

import math

import numpy as np
from numba import njit

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@njit(cache=True, nogil=True, inline="always")
def horner(a, z):
    acc = 0j
    for k in range(a.size - 1, -1, -1):
        acc = acc * z + a[k]
    return acc


@njit(cache=True, nogil=True, inline="always")
def abs2(z):
    return z.real * z.real + z.imag * z.imag


@njit(cache=True, nogil=True, inline="always")
def raw_profile(num, den, z, mode):
    """Monotone stand-in for the profile (mode 0 works with squared moduli)."""
    u2 = abs2(horner(num, z))
    v2 = abs2(horner(den, z))
    if mode == 0:
        if v2 == 0.0:
            return np.inf
        return u2 / v2
    if mode == 1:
        return math.sqrt(u2) - math.sqrt(v2)
    return u2 - v2


@njit(cache=True, nogil=True, inline="always")
def finish(val, mode):
    if mode == 0:
        return math.sqrt(val)
    return val


@njit(cache=True, nogil=True)
def profile(num, den, z, mode):
    return finish(raw_profile(num, den, z, mode), mode)


_GRIDS = {}


def unit_grid(n_grid):
    """exp(2 pi i j / n_grid), cached per size."""
    g = _GRIDS.get(n_grid)
    if g is None:
        g = np.exp(2j * np.pi * np.arange(n_grid) / n_grid)
        g.setflags(write=False)
        _GRIDS[n_grid] = g
    return g


def circle_scan(num, den, r, n_grid, refine_iters, mode):
    """Grid scan then golden-section refinement; returns (value, theta).

    Ties on the grid resolve to the smallest angle.
    """
    return _circle_scan(num, den, float(r), unit_grid(int(n_grid)), int(refine_iters), mode)


@njit(cache=True, nogil=True)
def _circle_scan(num, den, r, grid, refine_iters, mode):
    n_grid = grid.size
    step = 2.0 * math.pi / n_grid
    best = -np.inf
    best_j = 0
    for j in range(n_grid):
        val = raw_profile(num, den, r * grid[j], mode)
        if val > best:
            best = val
            best_j = j
    best_th = best_j * step
    if refine_iters <= 0 or not math.isfinite(best):
        return finish(best, mode), best_th

    lo = best_th - step
    hi = best_th + step
    x1 = hi - INV_PHI * (hi - lo)
    x2 = lo + INV_PHI * (hi - lo)
    f1 = raw_profile(num, den, r * complex(math.cos(x1), math.sin(x1)), mode)
    f2 = raw_profile(num, den, r * complex(math.cos(x2), math.sin(x2)), mode)
    for _ in range(refine_iters):
        if f1 >= f2:
            hi = x2
            x2 = x1
            f2 = f1
            x1 = hi - INV_PHI * (hi - lo)
            f1 = raw_profile(num, den, r * complex(math.cos(x1), math.sin(x1)), mode)
        else:
            lo = x1
            x1 = x2
            f1 = f2
            x2 = lo + INV_PHI * (hi - lo)
            f2 = raw_profile(num, den, r * complex(math.cos(x2), math.sin(x2)), mode)
    if f1 >= f2:
        cand, cand_th = f1, x1
    else:
        cand, cand_th = f2, x2
    if cand > best:
        best = cand
        best_th = cand_th
    two_pi = 2.0 * math.pi
    best_th = best_th % two_pi
    return finish(best, mode), best_th


@njit(cache=True, nogil=True)
def polar_grid_max(num, den, radii, n_theta, mode):
    """Maximum of the profile over radii x uniform angles; ties -> smallest theta, then r."""
    step = 2.0 * math.pi / n_theta
    best = -np.inf
    best_r = radii[0]
    best_th = 0.0
    for j in range(n_theta):
        th = j * step
        e = complex(math.cos(th), math.sin(th))
        for i in range(radii.size):
            val = raw_profile(num, den, radii[i] * e, mode)
            if val > best:
                best = val
                best_r = radii[i]
                best_th = th
    return finish(best, mode), best_r, best_th
