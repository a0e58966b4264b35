"""numba-compiled implementations of the hot numeric kernels.

Call signatures match `qsuperres._kernels_numpy` exactly; thin Python
wrappers handle shapes so the jitted cores only ever see 1D/2D float64
arrays. Reductions run in a fixed order per output element, so results
are reproducible at any thread count.

Importing this module requires numba; `qsuperres._backend` guards that.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit, prange

from ._bessel import j1_scalar

PI = np.pi

_j1 = njit("float64(float64)", cache=True)(j1_scalar)


@njit("float64(float64)", cache=True)
def _somb(x):
    ax = abs(x)
    if ax == 0.0:
        return 1.0
    return 2.0 * _j1(ax) / ax


@njit("float64(float64, float64)", cache=True)
def _psf_amp(u, k_max):
    return 2.0 * PI * k_max * k_max * _somb(k_max * u)


@njit("float64(float64, float64, float64)", cache=True)
def _annulus(delta, k_lo, k_hi):
    ad = abs(delta)
    if k_hi * ad < 1e-3:
        d2 = ad * ad
        return 2.0 * (PI * (k_hi**2 - k_lo**2)
                      - PI * (k_hi**4 - k_lo**4) / 8.0 * d2
                      + PI * (k_hi**6 - k_lo**6) / 192.0 * d2 * d2)
    return 4.0 * PI * (k_hi * _j1(k_hi * ad) - k_lo * _j1(k_lo * ad)) / ad


@njit("float64[:](float64[:])", cache=True, parallel=True)
def _j1_arr(x):
    out = np.empty_like(x)
    for i in prange(x.size):
        out[i] = _j1(x[i])
    return out


@njit("float64[:](float64[:])", cache=True, parallel=True)
def _somb_arr(x):
    out = np.empty_like(x)
    for i in prange(x.size):
        out[i] = _somb(x[i])
    return out


@njit("float64[:](float64[:], float64, float64)", cache=True, parallel=True)
def _annulus_arr(d, k_lo, k_hi):
    out = np.empty_like(d)
    for i in prange(d.size):
        out[i] = _annulus(d[i], k_lo, k_hi)
    return out


@njit(cache=True, parallel=True)
def _coeff_table(s_nodes, s_weights, r_grid, k_max, m):
    n_grid = r_grid.size
    n_pix, n_nodes = s_nodes.shape
    out = np.empty((n_grid, n_pix))
    for g in prange(n_grid):
        r = r_grid[g]
        for a in range(n_pix):
            acc = 0.0
            for p in range(n_nodes):
                acc += s_weights[a, p] * _psf_amp(s_nodes[a, p] + r, k_max) ** m
            out[g, a] = acc
    return out


@njit(cache=True, parallel=True)
def _overlap_tensor(s_nodes, s_weights, r_grid, k_max, m, k_lo, k_hi):
    n_grid = r_grid.size
    n_pix, n_nodes = s_nodes.shape
    gmat = np.empty((n_pix, n_nodes, n_pix, n_nodes))
    for a in prange(n_pix):
        for p in range(n_nodes):
            for b in range(n_pix):
                for q in range(n_nodes):
                    gmat[a, p, b, q] = _annulus(
                        s_nodes[a, p] - s_nodes[b, q], k_lo, k_hi)
    out = np.empty((n_grid, n_pix, n_pix))
    for g in prange(n_grid):
        r = r_grid[g]
        v = np.empty((n_pix, n_nodes))
        for a in range(n_pix):
            for p in range(n_nodes):
                v[a, p] = s_weights[a, p] * _psf_amp(s_nodes[a, p] + r, k_max) ** m
        for a in range(n_pix):
            for b in range(n_pix):
                acc = 0.0
                for p in range(n_nodes):
                    for q in range(n_nodes):
                        acc += v[a, p] * gmat[a, p, b, q] * v[b, q]
                out[g, a, b] = acc
    return out


def _as1d(x):
    arr = np.ascontiguousarray(np.asarray(x, dtype=np.float64))
    return arr, arr.shape


def j1(x):
    arr, shape = _as1d(x)
    return _j1_arr(arr.ravel()).reshape(shape)


def somb(x):
    arr, shape = _as1d(x)
    return _somb_arr(arr.ravel()).reshape(shape)


def annulus_kernel(delta, k_lo, k_hi):
    arr, shape = _as1d(delta)
    return _annulus_arr(arr.ravel(), float(k_lo), float(k_hi)).reshape(shape)


def psf_amp(u, k_max):
    return 2.0 * PI * k_max * k_max * somb(k_max * np.asarray(u, dtype=np.float64))


def pixel_coeff_table(s_nodes, s_weights, r_grid, k_max, m):
    return _coeff_table(
        np.ascontiguousarray(s_nodes), np.ascontiguousarray(s_weights),
        np.ascontiguousarray(r_grid), float(k_max), int(m))


def pair_overlap_tensor(s_nodes, s_weights, r_grid, k_max, m, k_lo, k_hi):
    out = _overlap_tensor(
        np.ascontiguousarray(s_nodes), np.ascontiguousarray(s_weights),
        np.ascontiguousarray(r_grid), float(k_max), int(m),
        float(k_lo), float(k_hi))
    return 0.5 * (out + np.swapaxes(out, 1, 2))
