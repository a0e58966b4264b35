"""Point-spread function, bucket kernel, and quadrature tests.

Both kernels carry twice the bare aperture-window Fourier transform.
That calibration fixes the relative weight of image-plane and bucket
detection events; it cancels in every Fisher quantity, and it makes the
full window (0, k_max) coincide with the point-spread function exactly.
The quadrature oracles below integrate the bare transform by radial
reduction and apply the documented factor 2.
"""

import math

import numpy as np
import pytest
import scipy.special

from qsuperres import (DetectionRegion, DomainError, J1_FIRST_ROOT,
                       OpticalSystem, bucket_kernel, integrate_1d, psf, somb)

# frozen 50-digit references
SOMB_AT_1 = 0.880101171489867031919364407438
ANNULUS_BARE_1p3 = 2.0280831006985058800366982755  # window [1, 2] at distance 1.3


def bare_window_transform(delta, k_lo, k_hi):
    """Radial reduction of the 2D window integral: for the annulus
    k_lo <= |k| <= k_hi the transform at displacement delta is
    int 2 pi k J0(k delta) dk. Independent of the package's J1 route."""
    return integrate_1d(
        lambda k: 2.0 * math.pi * k * scipy.special.j0(k * delta), k_lo, k_hi, 400)


class TestSomb:
    def test_frozen_value(self):
        assert somb(1.0) == pytest.approx(SOMB_AT_1, abs=1e-15)

    def test_center_is_one(self):
        assert somb(0.0) == 1.0
        assert somb(1e-12) == pytest.approx(1.0, abs=1e-12)

    def test_even(self):
        x = np.linspace(-15.0, 15.0, 601)
        assert np.array_equal(somb(x), somb(-x))

    def test_first_sidelobe_bound(self):
        # beyond the first zero the sombrero never recovers above ~0.133
        x = np.linspace(J1_FIRST_ROOT, 40.0, 5000)
        assert np.max(np.abs(somb(x))) < 0.14


class TestPsf:
    @pytest.mark.parametrize("k_max", [0.7, 1.0, 2.3])
    def test_center_value(self, k_max):
        sys_k = OpticalSystem(k_max=k_max)
        assert psf(0.0, sys_k) == pytest.approx(2.0 * math.pi * k_max**2, rel=1e-15)

    def test_vanishes_at_rayleigh_scale(self, system):
        assert abs(psf(system.d_R, system)) / psf(0.0, system) < 1e-14

    @pytest.mark.parametrize("u", [0.3, 1.0, 2.6, 5.0])
    def test_matches_window_quadrature(self, u, system):
        ref = 2.0 * bare_window_transform(u, 0.0, system.k_max)
        assert psf(u, system) == pytest.approx(ref, abs=1e-10)

    def test_rayleigh_scale_property(self):
        sys_k = OpticalSystem(k_max=1.7)
        assert sys_k.d_R == pytest.approx(J1_FIRST_ROOT / 1.7, rel=1e-15)

    def test_rejects_bad_k_max(self):
        with pytest.raises(DomainError):
            OpticalSystem(k_max=0.0)
        with pytest.raises(DomainError):
            OpticalSystem(k_max=-1.0)


class TestBucketKernel:
    def test_center_value(self):
        region = DetectionRegion(1.0, 2.0)
        assert bucket_kernel(0.0, region) == pytest.approx(
            2.0 * math.pi * 3.0, rel=1e-15)

    def test_frozen_offcenter_value(self):
        region = DetectionRegion(1.0, 2.0)
        assert bucket_kernel(1.3, region) == pytest.approx(
            2.0 * ANNULUS_BARE_1p3, rel=1e-14)

    @pytest.mark.parametrize("delta", [0.05, 0.4, 1.3, 3.7, 8.0])
    @pytest.mark.parametrize("window", [(1.0, 2.0), (0.5, 1.5), (1.0, 1.5)])
    def test_matches_window_quadrature(self, delta, window):
        region = DetectionRegion(*window)
        ref = 2.0 * bare_window_transform(delta, *window)
        assert bucket_kernel(delta, region) == pytest.approx(ref, abs=1e-9)

    def test_small_argument_branch_is_continuous(self):
        # the Taylor branch takes over at k_hi*|delta| < 1e-3
        region = DetectionRegion(1.0, 2.0)
        boundary = 1e-3 / 2.0
        lo = bucket_kernel(boundary * (1 - 1e-9), region)
        hi = bucket_kernel(boundary * (1 + 1e-9), region)
        assert lo == pytest.approx(hi, rel=1e-10)

    def test_full_window_equals_psf(self, system):
        region = DetectionRegion(0.0, system.k_max)
        u = np.linspace(0.0, 4.0 * system.d_R, 500)
        scale = psf(0.0, system)
        diff = np.abs(bucket_kernel(u, region) - psf(u, system))
        assert np.max(diff) / scale < 1e-13

    def test_even(self):
        region = DetectionRegion(1.0, 2.0)
        x = np.linspace(-6.0, 6.0, 301)
        assert np.allclose(bucket_kernel(x, region), bucket_kernel(-x, region),
                           rtol=0, atol=1e-14)

    def test_region_validation(self):
        with pytest.raises(DomainError):
            DetectionRegion(-0.1, 1.0)
        with pytest.raises(DomainError):
            DetectionRegion(1.0, 1.0)
        with pytest.raises(DomainError):
            DetectionRegion(2.0, 1.0)


class TestQuadrature:
    def test_cubic_exactness(self):
        # two-node Gauss-Legendre panels integrate cubics exactly
        val = integrate_1d(lambda x: x**3 - 2 * x**2 + x - 1, -1.0, 2.0, 1)
        exact = (2.0**4 / 4 - 2 * 2.0**3 / 3 + 2.0**2 / 2 - 2.0) - (
            (-1.0) ** 4 / 4 - 2 * (-1.0) ** 3 / 3 + (-1.0) ** 2 / 2 + 1.0)
        assert val == pytest.approx(exact, rel=1e-14)

    def test_sine_integral(self):
        # 2-node panels: error ~ h^4, about 4e-11 at 200 panels
        val = integrate_1d(math.sin, 0.0, math.pi, 200)
        assert val == pytest.approx(2.0, rel=1e-9)

    def test_panel_refinement_converges(self):
        f = lambda x: math.exp(-x) * math.cos(7 * x)
        coarse = integrate_1d(f, 0.0, 3.0, 20)
        fine = integrate_1d(f, 0.0, 3.0, 400)
        exact = (1 - math.exp(-3) * (math.cos(21) - 7 * math.sin(21))) / 50
        assert abs(fine - exact) < abs(coarse - exact)
        assert fine == pytest.approx(exact, rel=1e-6)

    def test_rejects_bad_panels(self):
        with pytest.raises(DomainError):
            integrate_1d(math.sin, 0.0, 1.0, 0)
