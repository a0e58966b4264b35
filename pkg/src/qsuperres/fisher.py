"""Fisher information and resolution thresholds for pixel amplitudes.

For a measurement whose outcome distribution over grid points is the
normalized signal S(r_i)/p with p = sum_i S(r_i), the per-detection
Fisher information matrix for the amplitudes theta is

    F[mu, nu] = sum_i (1/S_i) dS_i/dtheta_mu dS_i/dtheta_nu / p.

Grid points with S_i below a relative floor are excluded from the sum
(they carry no usable counts and would divide by ~0); p keeps every
point. After N detected events the best unbiased total variance is
Tr F^-1 / N, so "resolved at budget N_max" means Tr F^-1 <= N_max.
As the slit width d shrinks, F becomes singular and Tr F^-1 blows up
through the budget: the crossing is the resolution threshold d_min.

A strategy with detection rate p_s can also be held to the budget it
would earn in the acquisition time of a reference strategy; that is
the rate-adjusted criterion Tr F^-1 <= N_max p_s(d) / p_ref(d).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BracketError, DegenerateSignalError, DomainError, NumericError
from .objects import SlitObject
from .optics import DetectionRegion, OpticalSystem
from .signals import (MeasurementPlan, SignalJacobian, SignalVector, Strategy,
                      standard_grid, strategy_kernel)

__all__ = [
    "FisherReport", "ScanPoint", "ResolutionScan", "ResolutionResult",
    "RateRatio", "fisher_matrix", "crb_trace", "resolution_scan",
    "resolution_threshold", "rate_ratio",
]

FISHER_FLOOR = 1e-12   # signal floor (relative to max) for the numerator
COND_LIMIT = 1e12      # condition number beyond which F counts as singular


@dataclass(frozen=True, eq=False)
class FisherReport:
    matrix: np.ndarray
    trace_inv: float
    p: float
    plan: MeasurementPlan
    excluded: np.ndarray  # grid indices dropped from the numerator

    @property
    def singular(self) -> bool:
        return math.isinf(self.trace_inv)


def fisher_matrix(sig: SignalVector, jac: SignalJacobian) -> FisherReport:
    """Per-event Fisher matrix from a signal and its amplitude Jacobian."""
    s = np.asarray(sig.values, dtype=np.float64)
    j = np.asarray(jac.matrix, dtype=np.float64)
    if j.ndim != 2 or j.shape[0] != s.size:
        raise DomainError(f"jacobian shape {j.shape} does not match {s.size} grid points")
    if sig.plan is not jac.plan:
        a, b = sig.plan, jac.plan
        same = (a.strategy == b.strategy and a.n == b.n
                and a.grid.shape == b.grid.shape and np.array_equal(a.grid, b.grid))
        if not same:
            raise DomainError("signal and jacobian come from different plans")
    p = float(s.sum())
    top = float(s.max()) if s.size else 0.0
    keep = s >= FISHER_FLOOR * top if top > 0.0 else np.zeros(s.shape, dtype=bool)
    if not np.any(keep):
        raise DegenerateSignalError("signal below floor at every grid point")
    jk = j[keep]
    f = (jk / s[keep, None]).T @ jk / p
    f = 0.5 * (f + f.T)
    return FisherReport(matrix=f, trace_inv=crb_trace(f), p=p, plan=sig.plan,
                        excluded=np.flatnonzero(~keep))


def crb_trace(f) -> float:
    """Tr F^-1 by Cholesky solve; +inf when F is singular or has
    condition number beyond COND_LIMIT (the unresolvable regime)."""
    f = np.asarray(f, dtype=np.float64)
    if f.ndim != 2 or f.shape[0] != f.shape[1]:
        raise DomainError(f"Fisher matrix must be square, got {f.shape}")
    scale = float(np.abs(f).max())
    if scale == 0.0:
        return math.inf
    if float(np.abs(f - f.T).max()) > 1e-12 * scale:
        raise DomainError("Fisher matrix must be symmetric")
    lam = np.linalg.eigvalsh(f)
    if lam[0] <= 0.0 or lam[-1] / lam[0] > COND_LIMIT:
        return math.inf
    try:
        low = np.linalg.cholesky(f)
    except np.linalg.LinAlgError:
        return math.inf
    inv_low = np.linalg.solve(low, np.eye(f.shape[0]))
    return float(np.sum(inv_low * inv_low))


@dataclass(frozen=True)
class ScanPoint:
    d: float
    trace_inv: float
    p: float


@dataclass(frozen=True, eq=False)
class ResolutionScan:
    """Tr F^-1 and detection rate along a slit-width scan.

    Carries its full context so thresholds can re-evaluate at widths
    between the scanned points (bisection refinement)."""

    strategy: Strategy
    n: int
    amplitudes: tuple[float, ...]
    system: OpticalSystem
    region: DetectionRegion | None
    points: tuple[ScanPoint, ...]

    def d_values(self) -> np.ndarray:
        return np.asarray([pt.d for pt in self.points])

    def evaluate(self, d: float) -> ScanPoint:
        """Fisher point at slit width d (object centered on 0)."""
        obj = SlitObject(slit_width=d, amplitudes=self.amplitudes,
                         origin=-0.5 * len(self.amplitudes) * d)
        grid = standard_grid(obj, self.system)
        plan = MeasurementPlan(self.strategy, self.n, grid, self.region)
        kern = strategy_kernel(obj, self.system, plan)
        theta = obj.theta()
        sig = kern.signal(theta)
        try:
            report = fisher_matrix(sig, kern.jacobian(theta))
            return ScanPoint(d=d, trace_inv=report.trace_inv, p=report.p)
        except DegenerateSignalError:
            # divergent point: no usable information at this width
            return ScanPoint(d=d, trace_inv=math.inf, p=float(np.sum(sig.values)))


def resolution_scan(strategy, amplitudes, system: OpticalSystem, n: int,
                    d_values, region: DetectionRegion | None = None) -> ResolutionScan:
    """Evaluate Tr F^-1 and p across slit widths `d_values`."""
    d_arr = np.asarray(d_values, dtype=np.float64)
    if d_arr.ndim != 1 or d_arr.size == 0 or not np.all(np.isfinite(d_arr)):
        raise DomainError("d_values must be a non-empty finite 1D array")
    if np.any(d_arr <= 0) or (d_arr.size > 1 and not np.all(np.diff(d_arr) > 0)):
        raise DomainError("d_values must be positive and strictly increasing")
    scan = ResolutionScan(strategy=Strategy(strategy), n=n,
                          amplitudes=tuple(float(a) for a in amplitudes),
                          system=system, region=region, points=())
    pts = tuple(scan.evaluate(float(d)) for d in d_arr)
    return ResolutionScan(strategy=scan.strategy, n=n, amplitudes=scan.amplitudes,
                          system=system, region=region, points=pts)


@dataclass(frozen=True, eq=False)
class ResolutionResult:
    d_min: float
    n_max: float
    strategy: Strategy
    rate_adjusted: bool
    trace: tuple[tuple[float, float], ...]  # (d, Tr F^-1) along the scan


def _match_reference(scan: ResolutionScan, ref: ResolutionScan):
    if not np.array_equal(scan.d_values(), ref.d_values()):
        raise DomainError("reference scan must cover the same d values")


def resolution_threshold(scan: ResolutionScan, n_max: float,
                         rate_reference: ResolutionScan | None = None,
                         refine_tol: float | None = None) -> ResolutionResult:
    """Smallest slit width d with Tr F^-1 within the event budget.

    With `rate_reference`, the budget at each d is prorated by the
    rate ratio p_scan(d)/p_ref(d) (equal acquisition time instead of
    equal detected events). The scan bracket is refined by bisection
    to `refine_tol` (default: Rayleigh scale over 1000).
    """
    if n_max <= 0 or not math.isfinite(n_max):
        raise DomainError(f"n_max must be positive and finite, got {n_max}")
    if refine_tol is None:
        refine_tol = 1e-3 * scan.system.d_R
    if rate_reference is not None:
        _match_reference(scan, rate_reference)

    def satisfied(pt: ScanPoint, ref_pt: ScanPoint | None) -> bool:
        budget = n_max
        if ref_pt is not None:
            if ref_pt.p <= 0.0:
                raise NumericError(f"reference rate vanished at d = {pt.d:g}")
            budget = n_max * pt.p / ref_pt.p
        return pt.trace_inv <= budget

    refs = rate_reference.points if rate_reference is not None else [None] * len(scan.points)
    flags = [satisfied(pt, ref) for pt, ref in zip(scan.points, refs)]
    if all(flags):
        raise BracketError("criterion satisfied over the whole scan; "
                           "extend it to smaller widths", scan=scan)
    if not any(flags):
        raise BracketError("criterion satisfied nowhere in the scan; "
                           "extend it to larger widths", scan=scan)
    k = flags.index(True)
    if k == 0:
        raise BracketError("criterion already satisfied at the smallest scanned "
                           "width; extend the scan downward", scan=scan)

    d_lo, d_hi = scan.points[k - 1].d, scan.points[k].d
    while d_hi - d_lo > refine_tol:
        mid = 0.5 * (d_lo + d_hi)
        ref_pt = rate_reference.evaluate(mid) if rate_reference is not None else None
        if satisfied(scan.evaluate(mid), ref_pt):
            d_hi = mid
        else:
            d_lo = mid
    return ResolutionResult(
        d_min=d_hi, n_max=float(n_max), strategy=scan.strategy,
        rate_adjusted=rate_reference is not None,
        trace=tuple((pt.d, pt.trace_inv) for pt in scan.points))


@dataclass(frozen=True, eq=False)
class RateRatio:
    entries: tuple[tuple[float, float], ...]  # (d, p_num / p_den)
    excluded: tuple[float, ...]               # d values where p_den = 0


def rate_ratio(numerator: ResolutionScan, denominator: ResolutionScan) -> RateRatio:
    """Detection-rate ratio along matched scans, skipping zero denominators."""
    _match_reference(numerator, denominator)
    entries, excluded = [], []
    for a, b in zip(numerator.points, denominator.points):
        if b.p == 0.0:
            excluded.append(a.d)
        else:
            entries.append((a.d, a.p / b.p))
    return RateRatio(entries=tuple(entries), excluded=tuple(excluded))
