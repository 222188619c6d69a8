"""Numerical constants used across the package, gathered in one record."""
from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    frame_floor: float = 1e-6
    unit_norm: float = 1e-9
    placement: float = 1e-10
    dual_identity: float = 1e-9
    alpha_bracket: tuple = (1e-3, 1e3)
    # phi_hat below this level counts as outside the low-pass band
    lowpass_edge: float = 1e-3
    trunc_eta: float = 1e-6
    dense_max_coeffs: int = 4096
    mad_scale: float = 0.6745
    min_sigma_samples: int = 16


TOL = Tolerances()
