"""Continuous mother wavelets defined directly in the Fourier domain.

Three analytic families are provided: Morlet, Gammatone and Paul. Each
exposes its closed-form spectrum, the center frequency / bandwidth of a
dilated child, and the scale weight ``alpha`` that places the mother
wavelet against the Nyquist frequency.

Frequencies are angular and normalized, i.e. in radians per sample.
"""
from dataclasses import dataclass
import math

import numpy as np
from scipy.optimize import brentq

from .constants import TOL
from .errors import InvalidParameterError, PlacementError

MORLET = "morlet"
GAMMATONE = "gammatone"
PAUL = "paul"
KINDS = (MORLET, GAMMATONE, PAUL)

DEFAULT_PARAMS = {MORLET: 6.0, GAMMATONE: 4, PAUL: 2}

# half-power convention for the Gammatone bandwidth
GAMMATONE_R = 0.5


@dataclass(frozen=True)
class WaveletFamily:
    """A parameterized mother wavelet.

    Parameters
    ----------
    kind : str
        One of ``"morlet"``, ``"gammatone"``, ``"paul"``.
    param : float
        ``omega0`` for Morlet, integer order ``m >= 1`` for Gammatone and Paul.
    quality_hint : int, optional
        Wavelets per octave used by the Gammatone center frequency and
        bandwidth formulas. Filter banks fill it in with their own ``Q``
        when left as ``None``.
    """

    kind: str
    param: float = None
    quality_hint: int = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidParameterError(f"unknown wavelet kind {self.kind!r}")
        if self.param is None:
            object.__setattr__(self, "param", DEFAULT_PARAMS[self.kind])
        if self.kind == MORLET:
            if not self.param > 0:
                raise InvalidParameterError("Morlet omega0 must be positive")
            object.__setattr__(self, "param", float(self.param))
        else:
            m = self.param
            if int(m) != m or m < 1:
                raise InvalidParameterError(f"{self.kind} order must be an integer >= 1, got {m}")
            object.__setattr__(self, "param", int(m))
        if self.quality_hint is not None and (int(self.quality_hint) != self.quality_hint or self.quality_hint < 1):
            raise InvalidParameterError("quality_hint must be a positive integer")

    @classmethod
    def morlet(cls, omega0=6.0):
        return cls(MORLET, omega0)

    @classmethod
    def gammatone(cls, m=4, quality_hint=None):
        return cls(GAMMATONE, m, quality_hint)

    @classmethod
    def paul(cls, m=2):
        return cls(PAUL, m)

    @property
    def label(self):
        return f"{self.kind}{self.param:g}"

    @property
    def _q(self):
        return 1 if self.quality_hint is None else int(self.quality_hint)

    def gammatone_xi_bandwidth(self):
        """Quasi-orthogonal center frequency and bandwidth of the mother."""
        q = self._q
        xi = 2 * np.pi / (1 + 2 ** (1 / q))
        return xi, (1 - 2 ** (-1 / q)) * xi

    def gammatone_sigma(self):
        m = self.param
        xi, bw = self.gammatone_xi_bandwidth()
        r2m = GAMMATONE_R ** (2 / m)
        s2 = r2m * (1 - r2m) * m**2 * xi**2 / 2 * (math.sqrt(1 + bw**2 / ((1 - r2m) ** 2 * m**2 * xi**2)) - 1)
        return math.sqrt(s2)


def spectrum(family, omega):
    """Evaluate the mother wavelet's Fourier transform.

    Analytic prefactors are kept so values match the closed forms; filter
    banks renormalize every atom afterwards. The result vanishes for
    ``omega <= 0``.

    Parameters
    ----------
    family : WaveletFamily
    omega : array_like
        Angular frequencies.

    Returns
    -------
    ndarray of complex128, same shape as ``omega``.
    """
    w = np.asarray(omega, dtype=float)
    out = np.zeros(w.shape, dtype=complex)
    pos = w > 0
    wp = w[pos]
    if family.kind == MORLET:
        out[pos] = np.pi ** -0.25 * np.exp(-((wp - family.param) ** 2) / 2)
    elif family.kind == PAUL:
        m = family.param
        norm = 2.0**m / math.sqrt(m * math.factorial(2 * m - 1))
        # log form keeps large orders finite
        out[pos] = norm * np.exp(m * np.log(wp) - wp)
    else:
        m = family.param
        xi, _ = family.gammatone_xi_bandwidth()
        sig = family.gammatone_sigma()
        out[pos] = 1j * wp * math.factorial(m - 1) / (sig + 1j * (wp - xi)) ** m
    return out


def center_and_bandwidth(family, lam):
    """Center frequency and bandwidth (radians) of the child at scale ``lam``."""
    if not lam > 0:
        raise InvalidParameterError(f"scale must be positive, got {lam}")
    if family.kind == MORLET:
        return family.param / lam, 1 / (2 * lam**2)
    if family.kind == PAUL:
        m = family.param
        return (2 * m + 1) / (2 * lam), math.sqrt(2 * m + 1) / (2 * lam)
    xi, bw = family.gammatone_xi_bandwidth()
    return xi / lam, bw / lam


def solve_alpha(family):
    """Scale weight placing the mother so that center + bandwidth = pi."""

    def gap(lam):
        wc, dw = center_and_bandwidth(family, lam)
        return wc + dw - np.pi

    lo, hi = TOL.alpha_bracket
    if gap(lo) * gap(hi) > 0:
        raise PlacementError(f"no placement root for {family} in [{lo}, {hi}]")
    return brentq(gap, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=500)
