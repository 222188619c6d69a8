"""End-to-end acceptance checks, one test per criterion.

Run directly (``python3 tests/test_acceptance.py``) or under pytest; either
way a PASS/FAIL line per criterion is printed at the end.
"""
import time

import numpy as np
import pytest
from scipy.fft import dct

from smfdsn import scattering as sc, thresholding
from smfdsn.filterbank import build
from smfdsn.pipeline import LayerConfig, RunConfig, ScatteringNetwork, auc, extract_features
from smfdsn.thresholding import DenseOracle, gram_kernels, threshold
from smfdsn.transform import cwt
from smfdsn.wavelets import WaveletFamily

FAMILIES = [WaveletFamily.morlet(), WaveletFamily.gammatone(), WaveletFamily.paul()]


def chirp(N, f0, f1):
    t = np.arange(N)
    return np.cos(2 * np.pi * (f0 * t + (f1 - f0) * t**2 / (2 * N)))


def test_c1_orthonormal_reduction():
    start = time.perf_counter()
    rng = np.random.default_rng(101)
    dictionaries = [np.eye(64), dct(np.eye(64), norm="ortho", axis=0)]
    oracles = [DenseOracle(W) for W in dictionaries]
    for _ in range(50):
        x = rng.standard_normal(64) * rng.uniform(0.1, 3)
        sigma = rng.uniform(0.05, 2)
        for W, orc in zip(dictionaries, oracles):
            ideal = np.sum(np.minimum((W @ x) ** 2, sigma**2))
            assert abs(orc.evaluate(x, sigma).risk - ideal) <= 1e-10
    assert time.perf_counter() - start < 5


def test_c2_forced_selection():
    fb = build(WaveletFamily.morlet(), 64, 3, 2)
    orc = DenseOracle.from_bank(fb)
    K = gram_kernels(fb, trunc_eta=0.0)
    rng = np.random.default_rng(102)
    sigma = 0.7
    ones = np.ones(orc.W.shape[0], dtype=bool)
    x = rng.standard_normal(64)
    r_up = orc.risk_with_mask(x, sigma, ones)
    # fast-path constant: sigma^2 * sum over coefficients of sum |C||A|
    fast = sigma**2 * fb.N * K.selected_weight[:-1].sum()
    assert abs(r_up - fast) <= 1e-12 * abs(fast)
    for _ in range(10):
        y = x + rng.standard_normal(64) * rng.uniform(0.1, 5)
        assert abs(orc.risk_with_mask(y, sigma, ones) - r_up) <= 1e-12 * abs(r_up)


def test_c3_fast_matches_dense():
    start = time.perf_counter()
    rng = np.random.default_rng(103)
    for fam in FAMILIES:
        fb = build(fam, 64, 3, 2)
        K = gram_kernels(fb, trunc_eta=0.0)
        orc = DenseOracle.from_bank(fb)
        n = fb.n_filters * fb.N
        for _ in range(20):
            y = rng.standard_normal(64)
            sigma = rng.uniform(0.1, 1.5)
            _, rep = threshold(cwt(y, fb), K, sigma)
            dense = orc.evaluate(y, sigma)
            ru = dense.risk_unselected[:n].reshape(fb.n_filters, fb.N)
            rs = dense.risk_selected[:n].reshape(fb.n_filters, fb.N)
            assert np.max(np.abs(rep.risk_unselected - ru)) <= 1e-8 * np.max(np.abs(ru))
            np.testing.assert_allclose(np.broadcast_to(rep.risk_selected[:, None], rs.shape), rs, rtol=1e-8)
            np.testing.assert_array_equal(rep.mask, dense.mask[:n].reshape(fb.n_filters, fb.N))
            assert abs(rep.empirical_risk - dense.risk) <= 1e-8 * abs(dense.risk)
    assert time.perf_counter() - start < 30


def test_c4_frame_correctness():
    rng = np.random.default_rng(104)
    for fam in FAMILIES:
        fb = build(fam, 64, 3, 2)
        assert DenseOracle.from_bank(fb).identity_error() <= 1e-6
        big = build(fam, 4096, 5, 8)
        x = rng.standard_normal(4096)
        xh = thresholding.reconstruct(cwt(x, big), big)
        assert np.linalg.norm(xh - x) / np.linalg.norm(x) <= 1e-8


def test_c5_shift_invariance():
    N = 4096
    cfg = RunConfig(layer1=LayerConfig(J=4, Q=4), layer2=LayerConfig(J=3, Q=1), window=N)
    net = ScatteringNetwork(cfg)
    y = chirp(N, 0.01, 0.2) + 0.5 * chirp(N, 0.3, 0.05)
    a = extract_features(y, cfg, network=net)[0].values
    b = extract_features(np.roll(y, 32), cfg, network=net)[0].values
    assert np.linalg.norm(a - b) / np.linalg.norm(a) < 0.01


def test_c6_selected_risk_constant():
    rng = np.random.default_rng(106)
    for fam in FAMILIES:
        fb = build(fam, 64, 3, 2)
        rep = DenseOracle.from_bank(fb).evaluate(rng.standard_normal(64), 1.3)
        rs = rep.risk_selected[: fb.n_filters * fb.N].reshape(fb.n_filters, fb.N)
        assert np.max(np.ptp(rs, axis=1)) < 1e-10


def test_c7_denoising_gain():
    N = 8192
    fb = build(WaveletFamily.morlet(6), N, 5, 8)
    K = gram_kernels(fb)
    x = chirp(N, 0.02, 0.12) + chirp(N, 0.25, 0.08)
    sigma = np.sqrt(np.mean(x**2) / 10 ** 0.5)
    gains = []
    for seed in range(10):
        y = x + sigma * np.random.default_rng(seed).standard_normal(N)
        xh, _ = thresholding.denoise(y, fb, K)
        gains.append(10 * np.log10(np.mean((y - x) ** 2) / np.mean((xh - x) ** 2)))
    print(f"mean MSE improvement {np.mean(gains):.3f} dB")
    assert np.mean(gains) >= 3.0


def test_c8_family_ranking():
    N = 8192
    banks = [build(f, N, 5, 8) for f in FAMILIES]
    kernels = [gram_kernels(fb) for fb in banks]

    def risks(y):
        tree = sc.layer1(y, banks, sparse=True, kernels=kernels)
        return np.array([tree.risks[sc.PathKey.first(b)] for b in range(3)])

    noise = 0.01 * np.random.default_rng(108).standard_normal(N)
    train = np.zeros(N)
    train[::64] = 1.0
    tone = np.cos(2 * np.pi * 0.05 * np.arange(N))
    r_train, r_tone = risks(train + noise), risks(tone + noise)
    print(f"impulse train risks {r_train}, tone risks {r_tone}")
    assert int(np.argmin(r_train)) == 2
    assert int(np.argmin(r_tone)) == 0


def _two_class_set(N, rng):
    labels = np.array([0, 1] * 100)
    t = np.arange(N)
    X = []
    for lab in labels:
        if lab == 0:
            fc, fm, depth = rng.uniform(0.02, 0.2), rng.uniform(1, 4) * 8 / N, rng.uniform(0.5, 1)
            x = (1 + depth * np.cos(2 * np.pi * fm * t + rng.uniform(0, 2 * np.pi))) \
                * np.cos(2 * np.pi * fc * t + rng.uniform(0, 2 * np.pi))
        else:
            period = int(rng.integers(64, 257))
            x = np.zeros(N)
            pos = np.arange(int(rng.integers(0, period)), N, period)
            x[pos] = rng.choice([-1.0, 1.0], pos.size)
        x /= np.sqrt(np.mean(x**2))
        X.append(x + rng.standard_normal(N) * np.sqrt(0.1))  # 10 dB
    return np.array(X), labels


def _add_bursts(x, rng):
    y = x.copy()
    n = x.size
    for _ in range(int(rng.integers(1, 4))):
        L = int(rng.integers(n // 32, n // 8))
        s = int(rng.integers(0, n - L))
        y[s:s + L] += rng.uniform(1, 3) * np.hanning(L) * rng.standard_normal(L)
    return y


def nearest_centroid_scores(F, labels, seed=0):
    """Two-fold scores: distance to the class-0 centroid minus distance to class 1."""
    idx = np.random.default_rng(seed).permutation(len(labels))
    folds = [idx[: len(idx) // 2], idx[len(idx) // 2:]]
    scores = np.zeros(len(labels))
    for k in range(2):
        test, train = folds[k], folds[1 - k]
        mu, sd = F[train].mean(0), F[train].std(0)
        sd[sd == 0] = 1
        Z = (F - mu) / sd
        c0 = Z[train][labels[train] == 0].mean(0)
        c1 = Z[train][labels[train] == 1].mean(0)
        scores[test] = np.linalg.norm(Z[test] - c0, axis=1) - np.linalg.norm(Z[test] - c1, axis=1)
    return scores


def test_c9_synthetic_detection():
    N = 2048
    rng = np.random.default_rng(109)
    X, labels = _two_class_set(N, rng)
    burst = np.zeros(200, bool)
    burst[rng.permutation(200)[:100]] = True
    XB = np.array([_add_bursts(x, rng) if b else x for x, b in zip(X, burst)])

    def score(data, sparse):
        net = ScatteringNetwork(RunConfig(window=N, sparse=sparse))
        F = np.array([net.window_features(x) for x in data])
        return auc(nearest_centroid_scores(F, labels), labels)

    clean_sparse = score(X, True)
    burst_sparse, burst_plain = score(XB, True), score(XB, False)
    print(f"AUC clean sparse {clean_sparse:.4f}; bursts sparse {burst_sparse:.4f} vs plain {burst_plain:.4f}")
    assert clean_sparse >= 0.90
    assert burst_sparse >= burst_plain


def test_c10_full_window_runtime():
    N = 2**16
    y = np.random.default_rng(110).standard_normal(N)
    start = time.perf_counter()
    banks1 = [build(f, N, 5, 8) for f in FAMILIES]
    banks2 = [build(f, N, 4, 1) for f in FAMILIES]
    tree = sc.transform(y, banks1, banks2, sparse=True)
    elapsed = time.perf_counter() - start
    print(f"full sparse transform {elapsed:.1f} s")
    assert len(tree.keys(2)) == 36 and len(tree.risks) == 39
    assert elapsed < 30


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-v", "-s", "-p", "no:cacheprovider"]))
