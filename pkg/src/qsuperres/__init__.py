"""Quantum-imaging superresolution toolkit.

Simulates imaging of a pixelized transmission object illuminated by
n-photon entangled light, for three detection strategies (full
coincidence, reduced coincidence, bucket-conditioned), and quantifies
achievable resolution through the Fisher information of the pixel
amplitudes.
"""

from ._backend import backend_name, set_threads, use_backend
from .config import ScenarioConfig, load_config, parse_config, serialize_config
from .errors import (BracketError, ConfigError, DegenerateSignalError,
                     DomainError, NumericError, QuadratureError, ShapeError)
from .fisher import (FisherReport, RateRatio, ResolutionResult, ResolutionScan,
                     ScanPoint, crb_trace, fisher_matrix, rate_ratio,
                     resolution_scan, resolution_threshold)
from .noon import (NoonScenario, default_profile_grid, noon_bucket,
                   noon_conditioned, noon_full, noon_reduced, visibility)
from .objects import PinholePair, SlitObject, default_object, pinholes_as_slits
from .optics import (J1_FIRST_ROOT, DetectionRegion, OpticalSystem,
                     bucket_kernel, integrate_1d, psf, somb)
from .signals import (MeasurementPlan, SignalJacobian, SignalVector, Strategy,
                      detection_probability, evaluate_plan, fwhm,
                      pixel_coefficients, signal, signal_bucket_coincidence,
                      signal_full_coincidence, signal_jacobian,
                      signal_reduced_coincidence, standard_grid)

__version__ = "0.1.0"

__all__ = [
    "BracketError", "ConfigError", "DegenerateSignalError", "DetectionRegion",
    "DomainError", "FisherReport", "J1_FIRST_ROOT", "MeasurementPlan",
    "NoonScenario", "NumericError", "OpticalSystem", "PinholePair",
    "QuadratureError", "RateRatio", "ResolutionResult", "ResolutionScan",
    "ScanPoint", "ShapeError", "SignalJacobian", "SignalVector", "SlitObject",
    "Strategy", "backend_name", "bucket_kernel", "crb_trace",
    "default_object", "default_profile_grid", "detection_probability",
    "evaluate_plan", "fisher_matrix", "fwhm", "integrate_1d",
    "ScenarioConfig", "load_config", "parse_config", "serialize_config",
    "noon_bucket", "noon_conditioned", "noon_full", "noon_reduced",
    "pinholes_as_slits", "pixel_coefficients", "psf", "rate_ratio",
    "resolution_scan", "resolution_threshold", "set_threads", "signal",
    "signal_bucket_coincidence", "signal_full_coincidence",
    "signal_jacobian", "signal_reduced_coincidence", "somb",
    "standard_grid", "use_backend", "visibility",
]
