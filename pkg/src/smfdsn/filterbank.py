"""Fourier-domain filter banks for one wavelet family.

A bank holds ``J*Q`` analysis spectra obtained by spectral dilation of the
mother wavelet, a Gaussian low-pass scaling function, the Littlewood-Paley
sum and the canonical dual spectra.

All convolutions in the package are circular, so the bank is exactly
translation invariant and its frame operator is diagonal in Fourier.
Because the wavelets are analytic while inputs are real, the frame
operator seen by a real signal has spectrum
``(S(w) + S(-w)) / 2 + |phi_hat(w)|**2`` with ``S = sum_b |psi_hat_b|**2``;
that symmetrized quantity is what ``lp_sum`` stores.
"""
from dataclasses import dataclass, field, replace
import math

import numpy as np

from . import wavelets
from .constants import TOL
from .errors import FrameDeficientError, InvalidParameterError


def omega_grid(N):
    """DFT angular frequencies on (-pi, pi]; the Nyquist bin maps to +pi."""
    w = 2 * np.pi * np.arange(N) / N
    w[np.arange(N) > N // 2] -= 2 * np.pi
    return w


def mirror(a):
    """Return ``a(-w)`` for spectra stored in DFT order along the last axis."""
    return np.roll(a[..., ::-1], 1, axis=-1)


def _is_pow2(n):
    return n >= 1 and (n & (n - 1)) == 0


@dataclass(eq=False)
class FilterBank:
    family: wavelets.WaveletFamily
    N: int
    J: int
    Q: int
    alpha: float
    scales: np.ndarray
    filters: np.ndarray
    phi_hat: np.ndarray
    lp_sum: np.ndarray
    dual_filters: np.ndarray
    phi_dual: np.ndarray
    flattened: bool = False
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def n_filters(self):
        return self.J * self.Q

    @property
    def omega(self):
        return omega_grid(self.N)

    @property
    def phi_width(self):
        """Standard deviation (radians) of the Gaussian low-pass."""
        return wavelets.center_and_bandwidth(self.family, self.scales[-1])[0]

    def max_decimation(self):
        """Largest alias-safe subsampling factor after low-pass averaging."""
        edge = self.phi_width * math.sqrt(2 * math.log(1 / TOL.lowpass_edge))
        return max(1, int(math.floor(np.pi / edge)))

    def atoms(self):
        """Time-domain analysis atoms, shape ``(J*Q, N)``."""
        if "atoms" not in self._cache:
            self._cache["atoms"] = np.fft.ifft(self.filters, axis=-1)
        return self._cache["atoms"]

    def all_filters(self):
        """Analysis spectra with the scaling function appended as last row."""
        return np.vstack([self.filters, self.phi_hat[None, :].astype(complex)])

    def all_duals(self):
        return np.vstack([self.dual_filters, self.phi_dual[None, :].astype(complex)])

    def __repr__(self):
        return (f"FilterBank({self.family.label}, N={self.N}, J={self.J}, Q={self.Q}, "
                f"alpha={self.alpha:.6g})")


def scaling_function(N, J, Q, alpha, family):
    """Gaussian low-pass with unit DC gain.

    Its standard deviation equals the center frequency of the coarsest
    wavelet, so the low-pass fills the hole the wavelets leave around DC.
    """
    coarsest = alpha * 2 ** ((J * Q - 1) / Q)
    width = wavelets.center_and_bandwidth(family, coarsest)[0]
    w = omega_grid(N)
    return np.exp(-(w**2) / (2 * width**2))


def littlewood_paley(filters, phi_hat):
    s = np.sum(np.abs(filters) ** 2, axis=0)
    return 0.5 * (s + mirror(s)) + np.abs(phi_hat) ** 2


def _check_frame(lp, floor):
    bad = lp <= floor
    if np.any(bad):
        w = omega_grid(lp.size)[bad]
        band = (float(w.min()), float(w.max()))
        raise FrameDeficientError(
            f"Littlewood-Paley sum below {floor:g} on omega in [{band[0]:.4f}, {band[1]:.4f}]",
            band=band,
        )


def build(family, N, J, Q, flatten=False, frame_floor=TOL.frame_floor):
    """Build the filter bank of ``family`` for signals of length ``N``.

    Parameters
    ----------
    family : WaveletFamily
    N : int
        Signal length, a power of two with ``N >= 2**(J + 2)``.
    J, Q : int
        Octaves and wavelets per octave.
    flatten : bool
        Divide every atom by ``sqrt(lp_sum)`` once, giving a tight frame.
        Atoms then lose their unit norm.
    """
    N, J, Q = int(N), int(J), int(Q)
    if J < 1 or Q < 1:
        raise InvalidParameterError("J and Q must be >= 1")
    if not _is_pow2(N) or N < 2 ** (J + 2):
        raise InvalidParameterError(f"N must be a power of two >= 2**(J+2) = {2 ** (J + 2)}, got {N}")
    if family.kind == wavelets.GAMMATONE and family.quality_hint is None:
        family = replace(family, quality_hint=Q)

    alpha = wavelets.solve_alpha(family)
    scales = alpha * 2.0 ** (np.arange(J * Q) / Q)
    w = omega_grid(N)
    filters = wavelets.spectrum(family, scales[:, None] * w[None, :])
    norms = np.sqrt(np.mean(np.abs(filters) ** 2, axis=1))
    if np.any(norms == 0):
        raise InvalidParameterError("an atom has no support on the frequency grid")
    filters /= norms[:, None]
    phi_hat = scaling_function(N, J, Q, alpha, family)

    lp = littlewood_paley(filters, phi_hat)
    _check_frame(lp, frame_floor)
    if flatten:
        root = np.sqrt(lp)
        filters = filters / root
        phi_hat = phi_hat / root
        lp = littlewood_paley(filters, phi_hat)

    for a in (scales, filters, phi_hat, lp):
        a.flags.writeable = False
    fb = FilterBank(family, N, J, Q, alpha, scales, filters, phi_hat, lp,
                    dual_filters=None, phi_dual=None, flattened=flatten)
    fb.dual_filters, fb.phi_dual = dual_frame(fb, frame_floor)
    return fb


def dual_frame(fb, frame_floor=TOL.frame_floor):
    """Canonical dual spectra ``psi_hat / lp_sum`` for wavelets and low-pass."""
    _check_frame(fb.lp_sum, frame_floor)
    dual = fb.filters / fb.lp_sum
    phi_dual = fb.phi_hat / fb.lp_sum
    dual.flags.writeable = False
    phi_dual.flags.writeable = False
    return dual, phi_dual


def frame_bounds(fb):
    return float(fb.lp_sum.min()), float(fb.lp_sum.max())


def dual_identity(fb):
    """Pointwise ``sum_b psi_hat_b conj(dual_b)``, symmetrized; equals 1 for a valid dual."""
    s = np.real(np.sum(fb.filters * np.conj(fb.dual_filters), axis=0))
    return 0.5 * (s + mirror(s)) + fb.phi_hat * fb.phi_dual


def dense_matrices(fb):
    """Explicit atom matrices for small banks.

    Returns
    -------
    atoms : ndarray, shape (N*(J*Q+1), N)
        Row ``k = b*N + u`` is the analysis atom of row ``b`` translated
        by ``u``; the low-pass rows come last. Coefficients are
        ``conj(atoms) @ x``.
    """
    N = fb.N
    base = np.fft.ifft(fb.all_filters(), axis=-1)
    t = np.arange(N)
    idx = (t[None, :] - t[:, None]) % N  # [u, t] -> t - u
    return base[:, idx].reshape(-1, N)
