"""Aperture optics for a thin circular imaging system, reduced to 1D.

The imaging geometry is a finite circular aperture passing transverse
momenta |k| <= k_max. Its amplitude point-spread function at transverse
separation u is modeled as

    psf(u) = 2 pi k_max^2 somb(k_max |u|),   somb(x) = 2 J1(x) / x,

and a detector collecting momenta in an annulus k_lo <= |k| <= k_hi
contributes the difference of the corresponding disk kernels
(`bucket_kernel`), normalized the same way. The common prefactor is a
detector-calibration constant: it fixes the relative weight of
image-plane and bucket detection rates and is chosen so that opening
the bucket window to the full aperture {0, k_max} reproduces psf
exactly. Object and detector coordinates are treated as scalars with
these radial profiles applied to the 1D separation.

The Rayleigh scale d_R = (first root of J1) / k_max sets the classical
resolution unit used throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from . import _backend
from ._bessel import J1_FIRST_ROOT
from .errors import DomainError

__all__ = [
    "OpticalSystem", "DetectionRegion", "somb", "psf", "bucket_kernel",
    "integrate_1d", "gauss_legendre_rule", "J1_FIRST_ROOT",
]


@dataclass(frozen=True)
class OpticalSystem:
    """Imaging aperture with momentum cutoff k_max (> 0, finite)."""

    k_max: float

    def __post_init__(self):
        if not np.isfinite(self.k_max) or self.k_max <= 0:
            raise DomainError(f"k_max must be positive and finite, got {self.k_max}")

    @property
    def d_R(self) -> float:
        """Rayleigh scale: first root of J1 divided by k_max."""
        return J1_FIRST_ROOT / self.k_max


@dataclass(frozen=True)
class DetectionRegion:
    """Annular momentum window 0 <= k_lo < k_hi for bucket detection."""

    k_lo: float
    k_hi: float

    def __post_init__(self):
        ok = (np.isfinite(self.k_lo) and np.isfinite(self.k_hi)
              and 0.0 <= self.k_lo < self.k_hi)
        if not ok:
            raise DomainError(
                f"detection region needs 0 <= k_lo < k_hi, got [{self.k_lo}, {self.k_hi}]")


def _check_finite(x, name):
    if not np.all(np.isfinite(x)):
        raise DomainError(f"{name} must be finite")


def _scalar_or_array(x, out):
    return float(np.asarray(out).ravel()[0]) if np.ndim(x) == 0 else out


def somb(x):
    """Sombrero function 2 J1(x)/x, value 1 at x = 0, even in x."""
    arr = np.asarray(x, dtype=np.float64)
    _check_finite(arr, "somb argument")
    return _scalar_or_array(x, _backend.kernels().somb(arr))


def psf(u, system: OpticalSystem):
    """Amplitude PSF at signed separation u: 2 pi k_max^2 somb(k_max |u|)."""
    arr = np.asarray(u, dtype=np.float64)
    _check_finite(arr, "psf argument")
    out = 2.0 * np.pi * system.k_max**2 * _backend.kernels().somb(system.k_max * arr)
    return _scalar_or_array(u, out)


def bucket_kernel(delta, region: DetectionRegion):
    """Annular detection kernel 4 pi [k_hi J1(k_hi |d|) - k_lo J1(k_lo |d|)] / |d|.

    Difference of two disk kernels 2 pi k^2 somb(k |d|), one per window
    edge. At delta = 0 this is 2 pi (k_hi^2 - k_lo^2). With region
    = (0, k_max) it coincides with psf for the same k_max.
    """
    arr = np.asarray(delta, dtype=np.float64)
    _check_finite(arr, "bucket_kernel argument")
    out = _backend.kernels().annulus_kernel(arr, region.k_lo, region.k_hi)
    return _scalar_or_array(delta, out)


@lru_cache(maxsize=32)
def gauss_legendre_rule(n_nodes: int):
    """Nodes and weights on [-1, 1], cached."""
    x, w = np.polynomial.legendre.leggauss(n_nodes)
    return x, w


def integrate_1d(f: Callable, a: float, b: float, n_panels: int) -> float:
    """Composite 2-node Gauss-Legendre quadrature of f over [a, b].

    Low per-panel order on purpose: the O(h^4) error makes panel-halving
    convergence checks informative instead of stalling at roundoff.
    """
    if not (np.isfinite(a) and np.isfinite(b)):
        raise DomainError("integration limits must be finite")
    if n_panels < 1:
        raise DomainError(f"n_panels must be >= 1, got {n_panels}")
    edges = np.linspace(a, b, n_panels + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1:] - edges[:-1])
    xg, wg = gauss_legendre_rule(2)
    nodes = mid[:, None] + half[:, None] * xg[None, :]
    vals = np.asarray([f(t) for t in nodes.ravel()], dtype=np.float64)
    return float(np.sum(vals.reshape(nodes.shape) * (half[:, None] * wg[None, :])))
