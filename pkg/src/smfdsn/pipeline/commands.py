"""File-level operations behind the command-line subcommands."""
import numpy as np

from .. import filterbank, thresholding
from ..wavelets import WaveletFamily
from .features import ScatteringNetwork, extract_features, records_to_csv, feature_labels
from .io import ingest_wav, write_wav
from scipy.io import wavfile


def _is_pcm16(path):
    # header-only peek at the sample format
    _, data = wavfile.read(path, mmap=True)
    return data.dtype == np.int16


def features_cmd(wav_paths, cfg, out_csv):
    """Extract features from every WAV and write one CSV."""
    net = ScatteringNetwork(cfg)
    records = []
    for path in wav_paths:
        x, _, _ = ingest_wav(path, cfg.window)
        records += extract_features(x, cfg, source_id=str(path), network=net)
    text = records_to_csv(records, feature_labels(cfg))
    with open(out_csv, "w", newline="") as fh:
        fh.write(text)
    return records


def denoise_cmd(in_wav, out_wav, family, J, Q, window=65536, sigma_override=None):
    """Threshold and reconstruct a WAV window by window.

    The output keeps the input length, sample rate and sample format
    (PCM16 in, PCM16 out; float32 otherwise).

    Returns
    -------
    list of ThresholdReport, one per window.
    """
    if isinstance(family, str):
        family = WaveletFamily(family)
    x, rate, n = ingest_wav(in_wav, window)
    fb = filterbank.build(family, window, J, Q)
    y, reports = thresholding.denoise(x, fb, sigma=sigma_override)
    write_wav(out_wav, y[:n], rate, pcm16=_is_pcm16(in_wav))
    return reports


def risk_cmd(in_wav, family, J, Q, window=65536, sigma_override=None):
    """Threshold reports of each window for one family, without synthesis."""
    if isinstance(family, str):
        family = WaveletFamily(family)
    x, _, _ = ingest_wav(in_wav, window)
    fb = filterbank.build(family, window, J, Q)
    kernels = thresholding.gram_kernels(fb)
    from ..transform import cwt

    reports = []
    for w in x.reshape(-1, window):
        _, rep = thresholding.threshold(cwt(w, fb), kernels, sigma_override)
        reports.append(rep)
    return fb, reports


def oracle_check(n_signals=20, N=64, J=3, Q=2, seed=0):
    """Largest relative gap between fast and dense risks over the three families.

    Returns a dict ``label -> max relative error`` plus mask agreement.
    """
    from ..transform import cwt

    rng = np.random.default_rng(seed)
    out = {}
    for fam in (WaveletFamily.morlet(), WaveletFamily.gammatone(), WaveletFamily.paul()):
        fb = filterbank.build(fam, N, J, Q)
        kernels = thresholding.gram_kernels(fb, trunc_eta=0.0)
        oracle = thresholding.DenseOracle.from_bank(fb)
        n_wav = fb.n_filters * N
        worst, masks_equal = 0.0, True
        for _ in range(n_signals):
            y = rng.standard_normal(N)
            sigma = float(rng.uniform(0.1, 2.0))
            _, rep = thresholding.threshold(cwt(y, fb), kernels, sigma)
            dense = oracle.evaluate(y, sigma)
            ru = dense.risk_unselected[:n_wav].reshape(fb.n_filters, N)
            rs = dense.risk_selected[:n_wav].reshape(fb.n_filters, N)
            for fast, ref in ((rep.risk_unselected, ru), (rep.risk_selected[:, None], rs),
                              (rep.empirical_risk, dense.risk)):
                ref = np.asarray(ref)
                gap = np.max(np.abs(np.asarray(fast) - ref)) / max(np.max(np.abs(ref)), 1e-300)
                worst = max(worst, float(gap))
            masks_equal &= bool(np.array_equal(rep.mask, dense.mask[:n_wav].reshape(fb.n_filters, N)))
        out[fam.label] = (worst, masks_equal)
    return out
