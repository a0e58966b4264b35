"""Closed forms for two pinholes illuminated by n-photon NOON states.

With pinholes at +/- d and h +/- (r) = psf(r +/- d), the image-plane
coincidence profiles are

  full (constructive):  (h+^n + h-^n)^2
  reduced (incoherent): h+^(2(n-1)) + h-^(2(n-1))
  conditioned on a far-field photon of transverse momentum k:
      h+^(2(n-1)) + h-^(2(n-1)) + 2 cos(2 k d) h+^(n-1) h-^(n-1)
  conditioned photon integrated over an annular bucket:
      g(0) [h+^(2(n-1)) + h-^(2(n-1))] + 2 g(2d) h+^(n-1) h-^(n-1)

where g is the bucket kernel of the annulus. At k d = pi/2 the
conditioned cross term is maximally negative: a dark fringe sits at
r = 0 regardless of d, which is what the dip-visibility figure of
merit rewards. Averaging the conditioned profile uniformly over k d
in [0, 2 pi) restores the incoherent profile.

These expressions double as oracles for the pixel-quadrature signal
engine in the narrow-slit limit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ShapeError
from .optics import DetectionRegion, OpticalSystem, bucket_kernel, psf

__all__ = [
    "NoonScenario", "noon_full", "noon_reduced", "noon_conditioned",
    "noon_bucket", "visibility", "default_profile_grid",
]


@dataclass(frozen=True)
class NoonScenario:
    n: int
    half_separation: float
    system: OpticalSystem

    def __post_init__(self):
        if self.n < 2:
            raise DomainError(f"photon number n must be >= 2, got {self.n}")
        if not (np.isfinite(self.half_separation) and self.half_separation > 0):
            raise DomainError("half_separation must be positive and finite")

    def _amps(self, r):
        r = np.asarray(r, dtype=np.float64)
        return psf(r + self.half_separation, self.system), \
            psf(r - self.half_separation, self.system)


def noon_full(sc: NoonScenario, r):
    """All n photons at one point: coherent two-path profile."""
    hp, hm = sc._amps(r)
    return (hp**sc.n + hm**sc.n) ** 2


def noon_reduced(sc: NoonScenario, r):
    """One photon ignored: incoherent sum of the two pinhole images."""
    hp, hm = sc._amps(r)
    return hp ** (2 * (sc.n - 1)) + hm ** (2 * (sc.n - 1))


def noon_conditioned(sc: NoonScenario, r, k):
    """Last photon found at far-field momentum k: tunable interference."""
    if not np.isfinite(k):
        raise DomainError("momentum k must be finite")
    hp, hm = sc._amps(r)
    m = sc.n - 1
    cross = 2.0 * np.cos(2.0 * k * sc.half_separation) * hp**m * hm**m
    return hp ** (2 * m) + hm ** (2 * m) + cross


def noon_bucket(sc: NoonScenario, r, region: DetectionRegion):
    """Conditioned profile integrated over an annular bucket in momentum."""
    hp, hm = sc._amps(r)
    m = sc.n - 1
    g0 = bucket_kernel(0.0, region)
    g2d = bucket_kernel(2.0 * sc.half_separation, region)
    return g0 * (hp ** (2 * m) + hm ** (2 * m)) + 2.0 * g2d * hp**m * hm**m


def default_profile_grid(sc: NoonScenario, points: int = 1001,
                         margin: float = 2.5) -> np.ndarray:
    """Symmetric detector grid covering the pinholes plus `margin`
    Rayleigh scales; odd point count keeps r = 0 on the grid."""
    if points < 3 or points % 2 == 0:
        raise DomainError("points must be odd and >= 3")
    half = sc.half_separation + margin * sc.system.d_R
    return np.linspace(-half, half, points)


def _locate_dip(values):
    """Indices (left peak, dip, right peak) from the two largest strict
    local maxima and the minimum between them."""
    v = np.asarray(values, dtype=np.float64)
    interior = np.arange(1, v.size - 1)
    is_max = (v[interior] > v[interior - 1]) & (v[interior] >= v[interior + 1])
    peaks = interior[is_max]
    if len(peaks) < 2:
        raise ShapeError("profile has fewer than two local maxima")
    top_two = peaks[np.argsort(v[peaks])][-2:]
    i_l, i_r = int(top_two.min()), int(top_two.max())
    if i_r - i_l < 2:
        raise ShapeError("the two main maxima do not bracket a dip")
    i_mid = i_l + 1 + int(np.argmin(v[i_l + 1:i_r]))
    return i_l, i_mid, i_r


def visibility(values, peak_locator=None) -> float:
    """Dip visibility (S_peak - S_mid) / (S_peak + S_mid).

    S_peak is the mean of the two bracketing maxima, S_mid the central
    minimum. `peak_locator(values) -> (i_left, i_mid, i_right)` may
    override the built-in dip search (degenerate plateaus, say).
    """
    v = np.asarray(values, dtype=np.float64)
    if v.ndim != 1 or v.size < 3:
        raise DomainError("visibility needs a 1D profile of length >= 3")
    locate = peak_locator if peak_locator is not None else _locate_dip
    i_l, i_mid, i_r = locate(v)
    s_peak = 0.5 * (v[i_l] + v[i_r])
    s_mid = v[i_mid]
    if s_peak + s_mid == 0.0:
        raise ShapeError("degenerate profile: peaks and dip are all zero")
    return float((s_peak - s_mid) / (s_peak + s_mid))
