"""Windowed feature extraction and CSV export."""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import io

import numpy as np

from .. import _fft, filterbank, scattering, thresholding
from ..errors import ShapeError
from ..scattering import PathKey
from ..transform import check_decimation, lowpass_average
from .config import RunConfig


@dataclass
class FeatureRecord:
    source_id: str
    window_index: int
    labels: list
    values: np.ndarray

    @property
    def features(self):
        return list(zip(self.labels, self.values.tolist()))


class ScatteringNetwork:
    """Banks and correlation kernels for one :class:`RunConfig`, built once."""

    def __init__(self, cfg):
        self.cfg = cfg
        N = cfg.window
        self.banks1 = [filterbank.build(f, N, cfg.layer1.J, cfg.layer1.Q)
                       for f in cfg.layer1.wavelet_families()]
        self.banks2 = [filterbank.build(f, N, cfg.layer2.J, cfg.layer2.Q)
                       for f in cfg.layer2.wavelet_families()]
        self.phi_hat = self.banks1[0].phi_hat
        check_decimation(N, self.phi_hat, cfg.decimation)
        self.kernels1 = self.kernels2 = None
        if cfg.sparse:
            self.kernels1 = [thresholding.gram_kernels(fb, cfg.trunc_eta) for fb in self.banks1]
            self.kernels2 = [thresholding.gram_kernels(fb, cfg.trunc_eta) for fb in self.banks2]
        self.labels = feature_labels(cfg)

    def _mean_s(self, u):
        return lowpass_average(u, self.phi_hat, self.cfg.decimation).mean(axis=-1)

    def window_features(self, y):
        """Feature vector of one window, ordered as :func:`feature_labels`."""
        cfg = self.cfg
        y = np.asarray(y, dtype=float)
        if y.shape != (cfg.window,):
            raise ShapeError(f"window must have {cfg.window} samples, got {y.shape}")
        tree = scattering.layer1(y, self.banks1, cfg.sparse, self.kernels1,
                                 sigma=cfg.sigma_override, trunc_eta=cfg.trunc_eta)
        n1 = len(self.banks1)
        s1 = [self._mean_s(tree.u_tensors[PathKey.first(b)]) for b in range(n1)]
        JQ1 = self.banks1[0].n_filters
        JQ2 = self.banks2[0].n_filters
        n2 = len(self.banks2)
        s2 = np.zeros((n1, n2, JQ2, JQ1))
        r2 = np.zeros((n1, n2, JQ2))
        for b1, b2, rows, u, cost in scattering.iter_layer2(tree, self.banks2, cfg.sparse,
                                                             self.kernels2, cfg.trunc_eta):
            s2[b1, b2, :, rows] = self._mean_s(u).T
            if cost is not None:
                r2[b1, b2] += cost.sum(axis=0)
        parts = [self._mean_s(y[None, :]), np.concatenate(s1), s2.ravel()]
        if cfg.sparse:
            r1 = [tree.risks[PathKey.first(b)] for b in range(n1)]
            parts += [np.asarray(r1), r2.ravel()]
        v = np.concatenate(parts)
        if cfg.log_compress:
            v = np.log1p(np.maximum(v, 0))
        return v


def feature_labels(cfg):
    """Column labels; a pure function of the configuration."""
    n1, n2 = len(cfg.layer1.families), len(cfg.layer2.families)
    JQ1, JQ2 = cfg.layer1.J * cfg.layer1.Q, cfg.layer2.J * cfg.layer2.Q
    labels = ["S0"]
    labels += [f"S1:{PathKey.first(b).label()}:j1={j}" for b in range(n1) for j in range(JQ1)]
    l2 = [PathKey.second(b1, b2, j2) for b1 in range(n1) for b2 in range(n2) for j2 in range(JQ2)]
    labels += [f"S2:{k.label()}:j1={j}" for k in l2 for j in range(JQ1)]
    if cfg.sparse:
        labels += [f"R1:{PathKey.first(b).label()}" for b in range(n1)]
        labels += [f"R2:{k.label()}" for k in l2]
    return labels


def split_windows(signal, window):
    x = np.asarray(signal, dtype=float).ravel()
    n = max(1, -(-x.size // window))
    padded = np.zeros(n * window)
    padded[: x.size] = x
    return padded.reshape(n, window)


def extract_features(signal, cfg, source_id="signal", network=None):
    """Per-window feature records of a mono signal.

    Windows run in a thread pool capped by ``SMF_THREADS``; records come
    back in window order.
    """
    if not isinstance(cfg, RunConfig):
        raise TypeError("cfg must be a RunConfig")
    net = network or ScatteringNetwork(cfg)
    windows = split_windows(signal, cfg.window)
    n_workers = min(_fft.workers(), len(windows))
    if n_workers > 1:
        with ThreadPoolExecutor(n_workers) as pool:
            vectors = list(pool.map(net.window_features, windows))
    else:
        vectors = [net.window_features(w) for w in windows]
    return [FeatureRecord(source_id, i, net.labels, v) for i, v in enumerate(vectors)]


def records_to_csv(records, labels=None):
    """CSV text with a ``source_id,window_index,<labels>`` header."""
    if labels is None:
        if not records:
            raise ValueError("no records and no labels")
        labels = records[0].labels
    buf = io.StringIO()
    buf.write(",".join(["source_id", "window_index"] + list(labels)) + "\n")
    for r in records:
        if list(r.labels) != list(labels):
            raise ShapeError("records do not share one schema")
        vals = ",".join(format(float(v), ".17g") for v in r.values)
        buf.write(f"{r.source_id},{r.window_index},{vals}\n")
    return buf.getvalue()
