"""Vectorized numpy implementations of the hot numeric kernels.

Same call signatures as the numba twin; `qsuperres._backend` picks one.
All functions are pure and allocate their outputs.
"""

from __future__ import annotations

import numpy as np

from ._bessel import j1_numpy

PI = np.pi


def j1(x):
    return j1_numpy(np.asarray(x, dtype=np.float64))


def somb(x):
    """2 J1(x)/x with the removable singularity filled in; even in x."""
    ax = np.abs(np.asarray(x, dtype=np.float64))
    safe = np.where(ax == 0.0, 1.0, ax)
    out = 2.0 * j1_numpy(safe) / safe
    return np.where(ax == 0.0, 1.0, out)


def annulus_kernel(delta, k_lo, k_hi):
    """Detection kernel of an annular momentum window at 1D separation.

    Difference of the two disk kernels 2 pi k^2 somb(k |d|), i.e.
    4 pi [k_hi J1(k_hi |d|) - k_lo J1(k_lo |d|)] / |d|, with the small-|d|
    limit 2 pi (k_hi^2 - k_lo^2) taken through a Taylor branch to avoid 0/0.
    Shares its per-disk normalization with psf_amp, so the full window
    {0, k_max} reproduces psf_amp identically.
    """
    ad = np.abs(np.asarray(delta, dtype=np.float64))
    small = k_hi * ad < 1e-3
    safe = np.where(small, 1.0, ad)
    direct = 4.0 * PI * (k_hi * j1_numpy(k_hi * safe) - k_lo * j1_numpy(k_lo * safe)) / safe
    d2 = ad * ad
    series = 2.0 * (PI * (k_hi**2 - k_lo**2)
                    - PI * (k_hi**4 - k_lo**4) / 8.0 * d2
                    + PI * (k_hi**6 - k_lo**6) / 192.0 * d2 * d2)
    return np.where(small, series, direct)


def psf_amp(u, k_max):
    """Aperture PSF 2 pi k_max^2 somb(k_max |u|) on an array of separations."""
    return 2.0 * PI * k_max * k_max * somb(k_max * np.asarray(u, dtype=np.float64))


def pixel_coeff_table(s_nodes, s_weights, r_grid, k_max, m):
    """Per-pixel integrals of the m-th PSF power, all grid points at once.

    s_nodes, s_weights: (M, P) quadrature rules, one row per pixel.
    Returns (len(r_grid), M) with entry [i, mu] = sum_p w[mu,p] h^m(s[mu,p] + r_i).
    """
    u = r_grid[:, None, None] + s_nodes[None, :, :]
    h = psf_amp(u, k_max)
    return np.einsum("mp,gmp->gm", s_weights, h**m)


def pair_overlap_tensor(s_nodes, s_weights, r_grid, k_max, m, k_lo, k_hi):
    """Double-quadrature tensor behind bucket-conditioned signals.

    Entry [i, mu, nu] = sum over node pairs of
        w w' h^m(s + r_i) h^m(s' + r_i) g(s - s'),
    g the annular momentum kernel. The pair kernel g(s - s') does not
    depend on r_i, so it is formed once and contracted against the
    weighted PSF-power vectors for every grid point.
    """
    n_pix, n_nodes = s_nodes.shape
    flat = s_nodes.reshape(-1)
    gmat = annulus_kernel(flat[:, None] - flat[None, :], k_lo, k_hi)
    u = r_grid[:, None, None] + s_nodes[None, :, :]
    v = s_weights[None, :, :] * psf_amp(u, k_max) ** m  # (G, M, P)
    g4 = gmat.reshape(n_pix, n_nodes, n_pix, n_nodes)
    t = np.einsum("apbq,gbq->gapb", g4, v)
    out = np.einsum("gap,gapb->gab", v, t)
    return 0.5 * (out + np.swapaxes(out, 1, 2))
