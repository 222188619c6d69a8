"""Wavelet transform, complex modulus and low-pass averaging."""
from dataclasses import dataclass

import numpy as np

from . import _fft
from .constants import TOL
from .errors import InvalidParameterError, ShapeError, StateError


@dataclass(eq=False)
class CoeffTensor:
    """Wavelet coefficients of one signal under one filter bank.

    ``data`` has one row per wavelet ``(J*Q, N)``. ``lowpass`` carries the
    scaling-function branch ``y * phi`` needed for synthesis; it is ``None``
    once the tensor has gone through :func:`modulus`.
    """

    data: np.ndarray
    bank: object
    is_modulus: bool = False
    lowpass: np.ndarray = None

    @property
    def shape(self):
        return self.data.shape

    def with_data(self, data):
        return CoeffTensor(data, self.bank, self.is_modulus, self.lowpass)


def cwt(x, fb):
    """Circular wavelet transform: row ``j`` is ``ifft(fft(x) * conj(psi_hat_j))``."""
    x = np.asarray(x, dtype=float)
    if x.shape != (fb.N,):
        raise ShapeError(f"signal length {x.shape} does not match bank N={fb.N}")
    xh = _fft.fft(x)
    data = _fft.ifft(xh[None, :] * np.conj(fb.filters))
    low = np.real(_fft.ifft(xh * fb.phi_hat))
    return CoeffTensor(data, fb, False, low)


def cwt_rows(rows, fb):
    """Transform each row of a real matrix; returns ``(data, lowpass)`` stacks.

    ``data`` has shape ``(n_rows, J*Q, N)`` and ``lowpass`` ``(n_rows, N)``.
    """
    rows = np.asarray(rows, dtype=float)
    if rows.shape[-1] != fb.N:
        raise ShapeError(f"row length {rows.shape[-1]} does not match bank N={fb.N}")
    rh = _fft.fft(rows)
    data = _fft.ifft(rh[:, None, :] * np.conj(fb.filters)[None])
    low = np.real(_fft.ifft(rh * fb.phi_hat))
    return data, low


def modulus(c):
    if c.is_modulus:
        raise StateError("coefficients already went through the modulus")
    return CoeffTensor(np.abs(c.data), c.bank, True, None)


def _lowpass_edge(phi_hat):
    """Highest |omega| where phi_hat still exceeds the edge level."""
    N = phi_hat.size
    w = np.abs(2 * np.pi * np.fft.fftfreq(N))
    inside = np.abs(phi_hat) >= TOL.lowpass_edge * np.abs(phi_hat).max()
    return float(w[inside].max()) if inside.any() else 0.0


def check_decimation(N, phi_hat, decimation):
    d = int(decimation)
    if d < 1 or N % d:
        raise InvalidParameterError(f"decimation {decimation} must be a positive divisor of {N}")
    if d == 1 or d == N:
        # d == N is whole-window pooling: one phi-weighted value per row
        return d
    edge = _lowpass_edge(phi_hat)
    if edge > 0 and d > np.pi / edge:
        raise InvalidParameterError(
            f"decimation {d} aliases the low-pass (max {int(np.pi / edge)})"
        )
    return d


def lowpass_average(u, phi_hat, decimation=1):
    """Circularly convolve each row with the low-pass then subsample.

    ``u`` may be a modulus :class:`CoeffTensor` or a real array whose last
    axis is time.
    """
    if isinstance(u, CoeffTensor):
        if not u.is_modulus:
            raise StateError("low-pass averaging expects modulus coefficients")
        rows = np.real(u.data)
    else:
        rows = np.asarray(u, dtype=float)
    N = rows.shape[-1]
    if phi_hat.shape != (N,):
        raise ShapeError("phi_hat length does not match rows")
    d = check_decimation(N, phi_hat, decimation)
    out = _fft.irfft(_fft.rfft(rows) * phi_hat[: N // 2 + 1], n=N)
    return out[..., ::d]
