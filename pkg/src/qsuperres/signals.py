"""Coincidence signals for n-photon illumination of a pixelized object.

Three measurement strategies on the image plane produce, up to one
common constant, the detection rates

  full:     S(r) = ( sum_mu theta_mu^n c_mu(r) )^2,
            c_mu(r) = integral over pixel mu of h^n(s + r) ds
  reduced:  S(r) = sum_mu theta_mu^(2(n-1)) b_mu(r),
            b_mu(r) = integral of h^(2(n-1))(s + r) ds
  bucket:   S(r) = sum_{mu,nu} theta_mu^n theta_nu^n M_{mu nu}(r),
            M_{mu nu}(r) = double integral of
                h^(n-1)(s + r) h^(n-1)(s' + r) g(s - s') ds ds'

with h the aperture PSF and g the annular bucket kernel. "Full" detects
all n photons at one point, "reduced" ignores one photon, "bucket"
detects n-1 photons at a point plus the last photon anywhere in a
momentum annulus outside the aperture.

The pixel quadratures use composite Gauss-Legendre rules whose node
count is doubled until the tables stop moving; the tensors depend only
on geometry, so one kernel object serves every amplitude vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _backend
from .errors import DomainError, NumericError, QuadratureError, ShapeError
from .objects import SlitObject
from .optics import DetectionRegion, OpticalSystem, gauss_legendre_rule

__all__ = [
    "Strategy", "MeasurementPlan", "SignalVector", "SignalJacobian",
    "signal_full_coincidence", "signal_reduced_coincidence",
    "signal_bucket_coincidence", "signal", "signal_jacobian",
    "evaluate_plan", "pixel_coefficients", "detection_probability",
    "standard_grid", "clip_signal", "fwhm", "strategy_kernel",
]

COEFF_TOL = 1e-8       # node-doubling convergence for single quadratures
OVERLAP_TOL = 1e-6     # node-doubling convergence for the pair tensor
NODES_START = 32       # Gauss-Legendre nodes per panel to start from
NODES_CAP = 512        # above this, give up and report non-convergence
SIGNAL_CLIP = 1e-14    # relative floor below which values snap to zero
SIGNAL_NEG_TOL = 1e-9  # relative negativity that is a hard error


class Strategy(str, Enum):
    """Measurement strategies; values are the config-file tokens."""

    FULL = "gn"
    REDUCED = "gn-1"
    BUCKET = "hybrid"


@dataclass(frozen=True, eq=False)
class MeasurementPlan:
    strategy: Strategy
    n: int
    grid: np.ndarray
    region: DetectionRegion | None = None

    def __post_init__(self):
        object.__setattr__(self, "strategy", Strategy(self.strategy))
        object.__setattr__(self, "grid", np.asarray(self.grid, dtype=np.float64))
        if self.n < 2:
            raise DomainError(f"photon number n must be >= 2, got {self.n}")
        g = self.grid
        if g.ndim != 1 or g.size == 0 or not np.all(np.isfinite(g)):
            raise DomainError("grid must be a non-empty finite 1D array")
        if g.size > 1 and not np.all(np.diff(g) > 0):
            raise DomainError("grid must be strictly increasing")
        if self.strategy is Strategy.BUCKET and self.region is None:
            raise DomainError("bucket strategy requires a detection region")


@dataclass(frozen=True, eq=False)
class SignalVector:
    values: np.ndarray
    plan: MeasurementPlan


@dataclass(frozen=True, eq=False)
class SignalJacobian:
    matrix: np.ndarray  # (grid points, pixels)
    plan: MeasurementPlan


def clip_signal(values) -> np.ndarray:
    """Enforce nonnegativity: snap tiny negatives (and tiny positives)
    to zero, treat negativity beyond SIGNAL_NEG_TOL * max as a failure."""
    v = np.array(values, dtype=np.float64)
    top = float(v.max()) if v.size else 0.0
    if top < 0.0:
        raise NumericError(f"signal negative everywhere (max {top:.3e})")
    if v.size and float(v.min()) < -SIGNAL_NEG_TOL * top:
        raise NumericError(
            f"signal negativity beyond tolerance: min {v.min():.3e}, max {top:.3e}")
    v[v < SIGNAL_CLIP * top] = 0.0
    return v


def standard_grid(obj: SlitObject, system: OpticalSystem,
                  step: float | None = None, margin: float = 2.0) -> np.ndarray:
    """Detector grid: object support widened by `margin` Rayleigh scales
    on each side, sampled at `step` (default half the slit width),
    symmetric about the object center."""
    if step is None:
        step = 0.5 * obj.slit_width
    if step <= 0:
        raise DomainError(f"grid step must be positive, got {step}")
    lo, hi = obj.support
    center = 0.5 * (lo + hi)
    half_extent = 0.5 * (hi - lo) + margin * system.d_R
    n_half = int(np.ceil(half_extent / step))
    return center + step * np.arange(-n_half, n_half + 1)


def _pixel_rules(edges_left, width, d_R, nodes_per_panel):
    """Composite Gauss-Legendre nodes/weights per pixel: (M, P) arrays.

    Panels no wider than half a Rayleigh scale keep the rule honest for
    pixels much wider than the PSF oscillation.
    """
    n_panels = max(1, int(np.ceil(width / (0.5 * d_R))))
    xg, wg = gauss_legendre_rule(nodes_per_panel)
    p_edges = np.linspace(0.0, width, n_panels + 1)
    mid = 0.5 * (p_edges[:-1] + p_edges[1:])
    half = 0.5 * (p_edges[1:] - p_edges[:-1])
    offs = (mid[:, None] + half[:, None] * xg[None, :]).ravel()
    wts = (half[:, None] * wg[None, :]).ravel()
    nodes = edges_left[:, None] + offs[None, :]
    weights = np.broadcast_to(wts, nodes.shape).copy()
    return nodes, weights


def _converged(build, tol, what):
    """Run `build(nodes)` with doubling node counts until stable."""
    q = NODES_START
    prev = build(q)
    while q < NODES_CAP:
        q *= 2
        cur = build(q)
        scale = max(float(np.abs(cur).max()), np.finfo(np.float64).tiny)
        delta = float(np.abs(cur - prev).max()) / scale
        if delta <= tol:
            return cur
        prev = cur
    raise QuadratureError(
        f"{what} quadrature did not converge below {tol:g} "
        f"(last change {delta:.3e} at {q} nodes per panel)",
        achieved=delta, nodes=q)


class _KernelBase:
    """Geometry-dependent tables for one (object, system, plan) triple.

    Pixels with zero amplitude are skipped in the quadratures; their
    signal and Jacobian contributions vanish identically for n >= 2.
    """

    def __init__(self, obj: SlitObject, system: OpticalSystem, plan: MeasurementPlan):
        self.obj = obj
        self.system = system
        self.plan = plan
        theta = obj.theta()
        self.active = np.flatnonzero(theta != 0.0)
        edges = obj.pixel_edges()
        self._edges_left = edges[:-1][self.active]
        self._build_tables()

    def _rules(self, q):
        return _pixel_rules(self._edges_left, self.obj.slit_width,
                            self.system.d_R, q)

    def _scatter(self, active_cols):
        out = np.zeros(active_cols.shape[:-1] + (self.obj.pixel_count,))
        out[..., self.active] = active_cols
        return out

    def signal(self, theta) -> SignalVector:
        return SignalVector(values=clip_signal(self._signal(np.asarray(theta, float))),
                            plan=self.plan)

    def jacobian(self, theta) -> SignalJacobian:
        jac = self._jacobian(np.asarray(theta, dtype=np.float64))
        return SignalJacobian(matrix=jac, plan=self.plan)


class _FullKernel(_KernelBase):
    def _build_tables(self):
        k = _backend.kernels()
        plan, sys_ = self.plan, self.system

        def build(q):
            s, w = self._rules(q)
            return k.pixel_coeff_table(s, w, plan.grid, sys_.k_max, plan.n)

        self.coeff = _converged(build, COEFF_TOL, "pixel coefficient")

    def _signal(self, theta):
        t = self.coeff @ theta[self.active] ** self.plan.n
        return t * t

    def _jacobian(self, theta):
        n = self.plan.n
        ta = theta[self.active]
        t = self.coeff @ ta ** n
        cols = 2.0 * n * t[:, None] * self.coeff * ta[None, :] ** (n - 1)
        return self._scatter(cols)


class _ReducedKernel(_KernelBase):
    def _build_tables(self):
        k = _backend.kernels()
        plan, sys_ = self.plan, self.system
        power = 2 * (plan.n - 1)

        def build(q):
            s, w = self._rules(q)
            return k.pixel_coeff_table(s, w, plan.grid, sys_.k_max, power)

        self.coeff = _converged(build, COEFF_TOL, "pixel coefficient")

    def _signal(self, theta):
        return self.coeff @ theta[self.active] ** (2 * (self.plan.n - 1))

    def _jacobian(self, theta):
        n = self.plan.n
        ta = theta[self.active]
        cols = 2.0 * (n - 1) * self.coeff * ta[None, :] ** (2 * n - 3)
        return self._scatter(cols)


class _BucketKernel(_KernelBase):
    def _build_tables(self):
        k = _backend.kernels()
        plan, sys_ = self.plan, self.system
        region = plan.region

        def build(q):
            s, w = self._rules(q)
            return k.pair_overlap_tensor(s, w, plan.grid, sys_.k_max,
                                         plan.n - 1, region.k_lo, region.k_hi)

        self.overlap = _converged(build, OVERLAP_TOL, "pair overlap")

    def _signal(self, theta):
        w = theta[self.active] ** self.plan.n
        return np.einsum("gab,a,b->g", self.overlap, w, w)

    def _jacobian(self, theta):
        n = self.plan.n
        ta = theta[self.active]
        w = ta ** n
        cols = 2.0 * n * ta[None, :] ** (n - 1) * np.einsum("gab,b->ga", self.overlap, w)
        return self._scatter(cols)


_KERNELS = {
    Strategy.FULL: _FullKernel,
    Strategy.REDUCED: _ReducedKernel,
    Strategy.BUCKET: _BucketKernel,
}


def strategy_kernel(obj: SlitObject, system: OpticalSystem, plan: MeasurementPlan):
    """Reusable geometry tables; `.signal(theta)` / `.jacobian(theta)`."""
    return _KERNELS[plan.strategy](obj, system, plan)


def signal(obj: SlitObject, system: OpticalSystem, plan: MeasurementPlan) -> SignalVector:
    return strategy_kernel(obj, system, plan).signal(obj.theta())


def signal_jacobian(obj: SlitObject, system: OpticalSystem,
                    plan: MeasurementPlan) -> SignalJacobian:
    return strategy_kernel(obj, system, plan).jacobian(obj.theta())


def evaluate_plan(obj: SlitObject, system: OpticalSystem,
                  plan: MeasurementPlan) -> tuple[SignalVector, SignalJacobian]:
    """Signal and Jacobian from one shared set of quadrature tables."""
    kern = strategy_kernel(obj, system, plan)
    theta = obj.theta()
    return kern.signal(theta), kern.jacobian(theta)


def signal_full_coincidence(obj, system, n, grid) -> SignalVector:
    """All n photons detected together at each grid point."""
    return signal(obj, system, MeasurementPlan(Strategy.FULL, n, grid))


def signal_reduced_coincidence(obj, system, n, grid) -> SignalVector:
    """n-1 of the n photons detected together; the last one ignored."""
    return signal(obj, system, MeasurementPlan(Strategy.REDUCED, n, grid))


def signal_bucket_coincidence(obj, system, n, region, grid) -> SignalVector:
    """n-1 photons at a point, the last one in the annular bucket."""
    return signal(obj, system, MeasurementPlan(Strategy.BUCKET, n, grid, region))


def pixel_coefficients(obj: SlitObject, system: OpticalSystem, r: float,
                       power: int) -> np.ndarray:
    """Per-pixel integrals of h^power(s + r) over every pixel (geometry
    only; amplitudes do not enter)."""
    if power < 1:
        raise DomainError(f"power must be >= 1, got {power}")
    if not np.isfinite(r):
        raise DomainError("detector position must be finite")
    k = _backend.kernels()
    edges = obj.pixel_edges()
    grid = np.asarray([float(r)])

    def build(q):
        s, w = _pixel_rules(edges[:-1], obj.slit_width, system.d_R, q)
        return k.pixel_coeff_table(s, w, grid, system.k_max, power)

    return _converged(build, COEFF_TOL, "pixel coefficient")[0]


def detection_probability(sig: SignalVector) -> float:
    """Total rate proxy: plain sum of the signal over its grid."""
    return float(np.sum(sig.values))


def fwhm(x, y) -> float:
    """Full width at half maximum of a sampled single-peak profile,
    half-crossings located by linear interpolation."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1 or x.size < 3:
        raise DomainError("fwhm needs matching 1D arrays of length >= 3")
    i_pk = int(np.argmax(y))
    half = y[i_pk] / 2.0

    def cross(idx_range):
        prev = i_pk
        for i in idx_range:
            if y[i] < half:
                f = (half - y[i]) / (y[prev] - y[i])
                return x[i] + f * (x[prev] - x[i])
            prev = i
        raise ShapeError("profile does not fall below half maximum")

    left = cross(range(i_pk - 1, -1, -1))
    right = cross(range(i_pk + 1, x.size))
    return float(right - left)
