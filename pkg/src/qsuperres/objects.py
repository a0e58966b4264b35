"""Pixelized transmission objects.

An object is a row of contiguous slits ("pixels") of equal width d,
pixel mu spanning [origin + mu d, origin + (mu+1) d), each with a real
transmission amplitude theta_mu in [0, 1]. The total amplitude profile
A(s) = sum_mu theta_mu f_mu(s) with indicator f_mu is then piecewise
constant, so A(s)^n = sum_mu theta_mu^n f_mu(s) for any integer power:
the power just moves onto the amplitudes.

`PinholePair` describes the two-point benchmark object; for quadrature
cross-checks it can be rendered as a SlitObject whose two extreme pixels
carry amplitude 1 with zeros between them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = ["SlitObject", "PinholePair", "default_object", "pinholes_as_slits"]

# benchmark amplitude sets; "A" has strong contrast, "C" is nearly flat
_DEFAULT_AMPLITUDES = {
    "A": (1.0, 0.5, 0.88, 0.74, 0.62, 0.67, 0.62, 0.96,
          0.75, 0.94, 0.56, 0.78, 0.53, 0.56, 0.67),
    "C": (1.0, 0.9, 0.976, 0.948, 0.924, 0.934, 0.924, 0.992,
          0.95, 0.988, 0.912, 0.956, 0.906, 0.912, 0.934),
}


@dataclass(frozen=True)
class SlitObject:
    slit_width: float
    amplitudes: tuple[float, ...]
    origin: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "amplitudes", tuple(float(t) for t in self.amplitudes))
        if not (np.isfinite(self.slit_width) and self.slit_width > 0):
            raise DomainError(f"slit_width must be positive, got {self.slit_width}")
        if not np.isfinite(self.origin):
            raise DomainError("origin must be finite")
        if len(self.amplitudes) == 0:
            raise DomainError("need at least one pixel")
        for t in self.amplitudes:
            if not (np.isfinite(t) and 0.0 <= t <= 1.0):
                raise DomainError(f"amplitudes must lie in [0, 1], got {t}")

    @property
    def pixel_count(self) -> int:
        return len(self.amplitudes)

    @property
    def support(self) -> tuple[float, float]:
        return self.origin, self.origin + self.pixel_count * self.slit_width

    def pixel_edges(self) -> np.ndarray:
        """pixel_count + 1 edges; pixel mu is [edges[mu], edges[mu+1])."""
        return self.origin + self.slit_width * np.arange(self.pixel_count + 1)

    def theta(self) -> np.ndarray:
        return np.asarray(self.amplitudes, dtype=np.float64)

    def amplitude_at(self, s):
        """A(s); right-open pixels, zero outside the support."""
        arr = np.asarray(s, dtype=np.float64)
        if not np.all(np.isfinite(arr)):
            raise DomainError("sample positions must be finite")
        idx = np.floor((arr - self.origin) / self.slit_width).astype(np.int64)
        inside = (idx >= 0) & (idx < self.pixel_count)
        out = np.where(inside, self.theta()[np.clip(idx, 0, self.pixel_count - 1)], 0.0)
        return float(out[()]) if np.ndim(s) == 0 else out


@dataclass(frozen=True)
class PinholePair:
    """Two point transmitters at +/- half_separation."""

    half_separation: float

    def __post_init__(self):
        if not (np.isfinite(self.half_separation) and self.half_separation > 0):
            raise DomainError(
                f"half_separation must be positive, got {self.half_separation}")


def default_object(tag: str, slit_width: float, origin: float | None = None) -> SlitObject:
    """Named 15-slit benchmark object, centered on 0 unless origin is given."""
    try:
        amps = _DEFAULT_AMPLITUDES[tag]
    except KeyError:
        raise DomainError(
            f"unknown object tag {tag!r}; expected one of {sorted(_DEFAULT_AMPLITUDES)}") from None
    if origin is None:
        origin = -0.5 * len(amps) * slit_width
    return SlitObject(slit_width=slit_width, amplitudes=amps, origin=origin)


def pinholes_as_slits(pair: PinholePair, width: float) -> SlitObject:
    """Render a pinhole pair as a slit row: unit pixels centered exactly at
    +/- half_separation, zero-amplitude filler between. The requested width
    is rounded so an integer number of pixels spans the separation."""
    d = pair.half_separation
    if not (0 < width < 2 * d):
        raise DomainError("pinhole width must lie in (0, 2 * half_separation)")
    n_span = int(np.ceil(2 * d / width))
    w = 2 * d / n_span
    amps = [0.0] * (n_span + 1)
    amps[0] = 1.0
    amps[-1] = 1.0
    return SlitObject(slit_width=w, amplitudes=tuple(amps), origin=-d - 0.5 * w)
