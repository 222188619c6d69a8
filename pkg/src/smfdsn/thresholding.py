"""Risk-driven selection of overcomplete frame coefficients.

For an observation ``y = x + noise`` analysed by a redundant frame, every
coefficient is either kept (paying a noise-propagation cost) or dropped
(paying a signal-loss cost). Both costs are upper bounds built from the
correlations of the analysis atoms and of the canonical dual atoms; the
selection mask keeps the coefficient whenever keeping is not costlier.

The circular banks are translation invariant, so all correlations reduce
to lag kernels between pairs of rows. :class:`CorrelationKernels` stores
them sparsely and the fast path evaluates the double sums as FFT
correlations. :class:`DenseOracle` evaluates the same sums from explicit
matrices and serves as ground truth on small problems.

Coefficient rows follow the bank: the ``J*Q`` wavelet rows first and the
scaling-function row last. The scaling row is never thresholded.
"""
from dataclasses import dataclass

import numpy as np

from . import _fft
from .constants import TOL
from .errors import InvalidParameterError, ShapeError, StateError
from .transform import CoeffTensor, cwt

# cache rfft'd kernels only while they fit in this many bytes
SPECTRA_CACHE_BYTES = 96 * 2**20


class CorrelationKernels:
    """Lag-domain correlations of dual atoms and of analysis atoms.

    ``dual_dual[a, b]`` and ``analysis_analysis[a, b]`` are ``(lags, values)``
    pairs holding the entries of

        C(a, b, tau) = ifft(dual_a * conj(dual_b))(tau)
        A(a, b, tau) = ifft(psi_a * conj(psi_b))(tau)

    whose magnitude reaches ``trunc_eta`` times the largest magnitude of the
    family. Pairs with nothing left are absent.
    """

    def __init__(self, fb, trunc_eta=TOL.trunc_eta):
        if trunc_eta < 0:
            raise InvalidParameterError("trunc_eta must be non-negative")
        self.bank = fb
        self.trunc_eta = float(trunc_eta)
        self.N = fb.N
        self.n_rows = fb.n_filters + 1
        self.dual_dual = {}
        self.analysis_analysis = {}
        self._spectra = None

        F = fb.all_filters()
        D = fb.all_duals()
        self._fill(D, self.dual_dual)
        # only lags where the dual kernel survives enter the noise weight
        self._fill(F, self.analysis_analysis, pairs=set(self.dual_dual) if self.trunc_eta > 0 else None)

        # noise cost weight per row: sum over partners and lags of |C * A|
        w = np.zeros(self.n_rows)
        for (a, b), (lags, cv) in self.dual_dual.items():
            av = self.analysis_analysis.get((a, b))
            if av is None:
                continue
            full = np.zeros(self.N, dtype=complex)
            full[av[0]] = av[1]
            w[a] += np.sum(np.abs(cv * full[lags]))
        self.selected_weight = w

    def _fill(self, S, store, pairs=None):
        N = self.N
        mag = np.abs(S)
        peak = np.max(np.mean(mag**2, axis=1))
        cut = self.trunc_eta * peak
        # |corr(a, b, tau)| <= mean(|S_a| |S_b|) prunes whole pairs
        bound = mag @ mag.T / N
        for a in range(self.n_rows):
            partners = [b for b in range(a, self.n_rows)
                        if (cut == 0 or bound[a, b] >= cut) and (pairs is None or (a, b) in pairs)]
            if not partners:
                continue
            corr = _fft.ifft(S[a][None, :] * np.conj(S[partners]))
            for b, row in zip(partners, corr):
                lags = np.flatnonzero(np.abs(row) >= cut) if cut > 0 else np.arange(N)
                if lags.size == 0:
                    continue
                store[a, b] = (lags, row[lags])
                if b != a:
                    # C(b, a, tau) = conj(C(a, b, -tau))
                    store[b, a] = ((-lags) % N, np.conj(store[a, b][1]))

    def dense(self, which, a, b):
        """Full length-N lag sequence (zeros where truncated)."""
        store = self.dual_dual if which == "dual" else self.analysis_analysis
        out = np.zeros(self.N, dtype=complex)
        if (a, b) in store:
            lags, vals = store[a, b]
            out[lags] = vals
        return out

    def _abs_spectrum(self, a, b):
        lags, vals = self.dual_dual[a, b]
        k = np.zeros(self.N)
        k[lags] = np.abs(vals)
        return _fft.rfft(k)

    def abs_spectra(self):
        """``rfft(|C(a, b, .)|)`` for all pairs as an ``(n, n, N//2+1)`` array,
        or ``None`` when it would exceed the cache budget."""
        if self._spectra is None:
            nh = self.N // 2 + 1
            if self.n_rows**2 * nh * 16 > SPECTRA_CACHE_BYTES:
                return None
            out = np.zeros((self.n_rows, self.n_rows, nh), dtype=complex)
            for (a, b) in self.dual_dual:
                if b >= a:
                    out[a, b] = self._abs_spectrum(a, b)
                    # |C(b, a, .)| is the time reverse, so its spectrum is conjugate
                    out[b, a] = np.conj(out[a, b])
            self._spectra = out
        return self._spectra

    def correlate_abs(self, mags):
        """``out[..., a, u] = sum_b sum_tau |C(a, b, tau)| mags[..., b, u + tau]``
        for the wavelet rows ``a``.

        ``mags`` has shape ``(..., n_rows, N)``.
        """
        mags = np.asarray(mags, dtype=float)
        if mags.shape[-2:] != (self.n_rows, self.N):
            raise ShapeError(f"expected trailing shape {(self.n_rows, self.N)}, got {mags.shape}")
        nw = self.n_rows - 1
        M = _fft.rfft(mags)
        spec = self.abs_spectra()
        if spec is not None:
            acc = np.einsum("abk,...bk->...ak", np.conj(spec[:nw]), M)
        else:
            acc = np.zeros(M.shape[:-2] + (nw, M.shape[-1]), dtype=complex)
            for (a, b) in self.dual_dual:
                if a < nw:
                    acc[..., a, :] += np.conj(self._abs_spectrum(a, b)) * M[..., b, :]
        return _fft.irfft(acc, n=self.N)

    def support(self):
        """Number of stored lags per pair."""
        return {k: v[0].size for k, v in self.dual_dual.items()}


def gram_kernels(fb, trunc_eta=TOL.trunc_eta):
    return CorrelationKernels(fb, trunc_eta)


def _real_part_norm(fb, row=0):
    f = fb.filters[row]
    N = fb.N
    sq = np.sum(np.abs(f) ** 2) / N
    # sum_t psi(t)^2 via Parseval on psi_hat(w) psi_hat(-w)
    mirror = np.roll(f[::-1], 1)
    pair = np.real(np.sum(f * mirror)) / N
    return np.sqrt(max((sq + pair) / 2, 0.0))


def _sigma_from_finest(finest, bank):
    """Row-wise MAD estimate; ``finest`` is ``(..., N)`` complex."""
    row = np.real(finest)
    if row.shape[-1] < TOL.min_sigma_samples:
        raise InvalidParameterError(f"need at least {TOL.min_sigma_samples} finest-scale coefficients")
    med = np.median(np.abs(row), axis=-1)
    return med / TOL.mad_scale / _real_part_norm(bank)


def estimate_sigma(c):
    """Median-absolute-deviation noise estimate from the finest scale.

    The real parts of finest-scale coefficients of white noise with
    standard deviation ``sigma`` have standard deviation
    ``sigma * ||Re psi_0||``; dividing by that norm makes the estimate
    refer to the signal-domain noise level. An all-zero row gives 0.
    """
    return float(_sigma_from_finest(np.asarray(c.data)[0], c.bank))


def _stack(c):
    if c.is_modulus:
        raise StateError("risks are defined on complex (pre-modulus) coefficients")
    if c.lowpass is None:
        raise StateError("coefficient tensor lacks its low-pass branch")
    return np.vstack([c.data, c.lowpass[None, :]])


def risk_selected(kernels, sigma, fb=None):
    """Per-scale cost of keeping a coefficient: ``sigma**2 * sum |C * A|``."""
    w = kernels.selected_weight[:-1]
    if sigma == 0:
        return np.zeros_like(w)
    with np.errstate(invalid="ignore"):
        out = sigma**2 * w
    return np.where(w == 0, 0.0, out)


def risk_unselected(c, kernels):
    """Per-coefficient cost of dropping: ``|mu_k| sum_j |mu_j| |C(k, j)|``."""
    if c.bank is not kernels.bank and c.data.shape[-1] != kernels.N:
        raise ShapeError("coefficients and kernels come from different banks")
    mags = np.abs(_stack(c))
    if mags.shape != (kernels.n_rows, kernels.N):
        raise ShapeError(f"coefficients {mags.shape} do not match kernels {(kernels.n_rows, kernels.N)}")
    return mags[:-1] * kernels.correlate_abs(mags)


@dataclass(eq=False)
class ThresholdReport:
    mask: np.ndarray
    sigma: float
    risk_unselected: np.ndarray
    risk_selected: np.ndarray
    empirical_risk: float
    selected_fraction: float

    @property
    def cost(self):
        """Per-coefficient contribution to the empirical risk."""
        return np.minimum(self.risk_unselected, self.risk_selected[:, None])

    def scale_risks(self):
        return self.cost.sum(axis=1)

    def summary(self):
        return (f"sigma={self.sigma:.6g} selected_fraction={self.selected_fraction:.6f} "
                f"empirical_risk={self.empirical_risk:.6g}")


def select(ru, rs):
    """Keep when the keep cost does not exceed the drop cost (ties keep)."""
    return rs[:, None] <= ru


def threshold_stack(data, lowpass, kernels, sigma=None):
    """Threshold a stack of independent coefficient sets at once.

    Parameters
    ----------
    data : ndarray, shape (R, J*Q, N)
        Complex wavelet coefficients of ``R`` signals.
    lowpass : ndarray, shape (R, N)
    sigma : float or ndarray of shape (R,), optional
        Noise levels; estimated per signal when omitted.

    Returns
    -------
    mask, risk_unselected, risk_selected (R, J*Q), sigma (R,)
    """
    data = np.asarray(data)
    if sigma is None:
        sigma = _sigma_from_finest(data[:, 0], kernels.bank)
    sigma = np.broadcast_to(np.asarray(sigma, dtype=float), data.shape[:1])
    mags = np.abs(np.concatenate([data, np.asarray(lowpass)[:, None, :]], axis=1))
    ru = mags[:, :-1] * kernels.correlate_abs(mags)
    w = kernels.selected_weight[:-1]
    with np.errstate(invalid="ignore"):
        rs = np.where(w == 0, 0.0, sigma[:, None] ** 2 * w)
    rs = np.where(sigma[:, None] == 0, 0.0, rs)
    mask = rs[:, :, None] <= ru
    return mask, ru, rs, sigma


def threshold(c, kernels, sigma=None):
    """Apply the empirical-risk mask to complex coefficients.

    Returns the masked tensor (low-pass branch untouched) and its report.
    """
    if c.is_modulus:
        raise StateError("risks are defined on complex (pre-modulus) coefficients")
    if c.lowpass is None:
        raise StateError("coefficient tensor lacks its low-pass branch")
    if c.data.shape != (kernels.n_rows - 1, kernels.N):
        raise ShapeError(f"coefficients {c.data.shape} do not match kernels")
    mask, ru, rs, sig = threshold_stack(c.data[None], c.lowpass[None], kernels, sigma)
    mask, ru, rs = mask[0], ru[0], rs[0]
    cost = np.minimum(ru, rs[:, None])
    report = ThresholdReport(mask, float(sig[0]), ru, rs, float(cost.sum()), float(mask.mean()))
    masked = CoeffTensor(np.where(mask, c.data, 0), c.bank, False, c.lowpass)
    return masked, report


def reconstruct(masked, fb):
    """Synthesis with the canonical dual frame, real part kept."""
    if masked.bank is not fb:
        raise ShapeError("coefficients were not produced by this bank")
    if masked.is_modulus or masked.lowpass is None:
        raise StateError("reconstruction needs complex coefficients with their low-pass branch")
    spec = np.sum(_fft.fft(masked.data) * fb.dual_filters, axis=0)
    x = np.real(_fft.ifft(spec))
    return x + _fft.irfft(_fft.rfft(masked.lowpass) * fb.phi_dual[: fb.N // 2 + 1], n=fb.N)


def denoise(y, fb, kernels=None, sigma=None):
    """Threshold and reconstruct ``y`` in consecutive windows of ``fb.N``.

    ``y`` is zero-padded to a whole number of windows and the output is
    cut back to ``len(y)``. Each window gets its own noise estimate unless
    ``sigma`` is given.
    """
    y = np.asarray(y, dtype=float)
    if kernels is None:
        kernels = gram_kernels(fb)
    N = fb.N
    n_win = max(1, -(-y.size // N))
    padded = np.zeros(n_win * N)
    padded[: y.size] = y
    out = np.empty_like(padded)
    reports = []
    for i in range(n_win):
        c = cwt(padded[i * N:(i + 1) * N], fb)
        masked, rep = threshold(c, kernels, sigma)
        out[i * N:(i + 1) * N] = reconstruct(masked, fb)
        reports.append(rep)
    return out[: y.size], reports


@dataclass(eq=False)
class DenseReport:
    risk_unselected: np.ndarray
    risk_selected: np.ndarray
    mask: np.ndarray
    risk: float


class DenseOracle:
    """Explicit-matrix evaluation of the risk bounds.

    Parameters
    ----------
    matrix : ndarray, shape (M, N)
        Analysis operator; coefficients are ``matrix @ x``.
    keep : ndarray of bool, shape (M,), optional
        Coefficients that are always selected and left out of the risk.

    The pseudo-inverse is the Moore-Penrose inverse of the real-linear map
    ``x -> matrix @ x`` on real signals, from the normal equations of the
    stacked ``[Re W; Im W]`` operator.
    """

    def __init__(self, matrix, keep=None):
        W = np.asarray(matrix)
        M, N = W.shape
        if M > TOL.dense_max_coeffs:
            raise InvalidParameterError(f"dense oracle limited to {TOL.dense_max_coeffs} coefficients, got {M}")
        self.W = W.astype(complex)
        self.keep = np.zeros(M, dtype=bool) if keep is None else np.asarray(keep, dtype=bool)
        Wr = np.vstack([self.W.real, self.W.imag])
        pinv_r = np.linalg.solve(Wr.T @ Wr, Wr.T)
        self.pinv_real = pinv_r
        # complex form: x_hat = Re(pinv @ c)
        self.pinv = pinv_r[:, :M] - 1j * pinv_r[:, M:]
        atoms = np.conj(self.W)
        duals = self.pinv.T
        self.dual_gram = duals @ np.conj(duals).T
        self.gram = atoms @ np.conj(atoms).T

    @classmethod
    def from_bank(cls, fb):
        from .filterbank import dense_matrices

        atoms = dense_matrices(fb)
        keep = np.zeros(atoms.shape[0], dtype=bool)
        keep[fb.n_filters * fb.N:] = True
        return cls(np.conj(atoms), keep)

    def identity_error(self):
        """Max-abs deviation of ``pinv @ W`` from the identity on real signals."""
        P = self.pinv_real @ np.vstack([self.W.real, self.W.imag])
        return float(np.max(np.abs(P - np.eye(P.shape[0]))))

    def coefficients(self, signal):
        return self.W @ np.asarray(signal, dtype=float)

    def evaluate(self, signal, sigma):
        mu = np.abs(self.coefficients(signal))
        C = np.abs(self.dual_gram)
        ru = mu * (C @ mu)
        rs = sigma**2 * np.sum(C * np.abs(self.gram), axis=1)
        mask = (rs <= ru) | self.keep
        free = ~self.keep
        risk = float(np.sum(np.minimum(ru, rs)[free]))
        return DenseReport(ru, rs, mask, risk)

    def risk_with_mask(self, signal, sigma, mask):
        """Bound evaluated for a fixed selection instead of the optimal one."""
        rep = self.evaluate(signal, sigma)
        mask = np.asarray(mask, dtype=bool)
        free = ~self.keep
        cost = np.where(mask, rep.risk_selected, rep.risk_unselected)
        return float(np.sum(cost[free]))


def dense_oracle(signal, fb, sigma):
    """Ground-truth risks for ``signal`` under bank ``fb`` (small sizes only)."""
    if fb.N * (fb.n_filters + 1) > TOL.dense_max_coeffs:
        raise InvalidParameterError("bank too large for the dense oracle")
    return DenseOracle.from_bank(fb).evaluate(signal, sigma)
