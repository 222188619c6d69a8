import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from smfdsn import filterbank, thresholding, wavelets
from smfdsn.errors import FrameDeficientError, InvalidParameterError
from smfdsn.filterbank import build, dense_matrices, frame_bounds, omega_grid
from smfdsn.transform import cwt
from smfdsn.wavelets import WaveletFamily

from conftest import FAMILIES, FAMILY_IDS


@pytest.fixture(scope="module")
def morlet1024():
    return build(WaveletFamily.morlet(6), 1024, 5, 8)


def test_morlet_bank_shape_and_scales(morlet1024):
    fb = morlet1024
    assert fb.filters.shape == (40, 1024)
    assert fb.n_filters == 40
    assert fb.alpha == pytest.approx(1.98984, abs=1e-5)
    np.testing.assert_allclose(fb.scales, fb.alpha * 2.0 ** (np.arange(40) / 8), rtol=1e-15)
    ratios = fb.scales[1:] / fb.scales[:-1]
    np.testing.assert_allclose(ratios, 2 ** (1 / 8), rtol=1e-13)


@pytest.mark.parametrize("fam", FAMILIES, ids=FAMILY_IDS)
@pytest.mark.parametrize("J,Q", [(3, 2), (4, 1), (5, 8)])
def test_atoms_unit_norm_zero_dc(fam, J, Q):
    fb = build(fam, 512, J, Q)
    assert fb.filters.shape[0] == J * Q
    np.testing.assert_allclose(np.mean(np.abs(fb.filters) ** 2, axis=1), 1.0, atol=1e-9)
    assert np.all(fb.filters[:, 0] == 0)


@pytest.mark.parametrize("fam", FAMILIES, ids=FAMILY_IDS)
def test_spectral_dilation_recomputed(fam):
    fb = build(fam, 256, 3, 4)
    w = omega_grid(256)
    for j, lam in enumerate(fb.scales):
        raw = wavelets.spectrum(fb.family, lam * w)
        raw /= np.sqrt(np.mean(np.abs(raw) ** 2))
        np.testing.assert_allclose(fb.filters[j], raw, atol=1e-13)


def test_gammatone_quality_from_bank():
    fb = build(WaveletFamily.gammatone(4), 256, 3, 4)
    assert fb.family.quality_hint == 4


def test_paul_small_bank_bounds():
    fb = build(WaveletFamily.paul(2), 512, 4, 1)
    assert fb.n_filters == 4
    A, B = frame_bounds(fb)
    assert A == pytest.approx(0.724659, abs=1e-6)
    assert B == pytest.approx(15.0263, abs=1e-4)
    flat = build(WaveletFamily.paul(2), 512, 4, 1, flatten=True)
    A, B = frame_bounds(flat)
    assert 0.5 <= A <= B <= 1.5


def test_morlet_frame_bounds_recorded(morlet1024):
    A, B = frame_bounds(morlet1024)
    assert 0 < A <= B
    assert A == pytest.approx(0.80296, abs=1e-5)
    assert B == pytest.approx(294.838, abs=1e-3)


def test_scaling_function(morlet1024):
    fb = morlet1024
    phi = fb.phi_hat
    assert phi[0] == 1.0
    np.testing.assert_allclose(phi, filterbank.mirror(phi), rtol=1e-12, atol=1e-15)
    assert np.all(phi >= 0)
    assert fb.phi_width == pytest.approx(6 / (fb.alpha * 2 ** (39 / 8)), rel=1e-14)
    w = omega_grid(fb.N)
    np.testing.assert_allclose(phi, np.exp(-w**2 / (2 * fb.phi_width**2)), rtol=1e-14)


def test_dc_hole_without_scaling_function(morlet1024):
    s = np.sum(np.abs(morlet1024.filters) ** 2, axis=0)
    lp = 0.5 * (s + filterbank.mirror(s))
    assert lp[0] == 0
    assert lp[1] < 1e-3 * morlet1024.lp_sum[1]


@pytest.mark.parametrize("fam", FAMILIES, ids=FAMILY_IDS)
def test_dual_identity(fam):
    fb = build(fam, 1024, 5, 8)
    np.testing.assert_allclose(filterbank.dual_identity(fb), 1.0, atol=1e-9)
    np.testing.assert_allclose(fb.dual_filters, fb.filters / fb.lp_sum, rtol=1e-15)


def test_tight_bank_dual_equals_filters():
    fb = build(WaveletFamily.morlet(), 256, 3, 4, flatten=True)
    np.testing.assert_allclose(fb.lp_sum, 1.0, atol=1e-12)
    np.testing.assert_allclose(fb.dual_filters, fb.filters, atol=1e-12)
    assert frame_bounds(fb) == pytest.approx((1.0, 1.0), abs=1e-12)


@pytest.mark.parametrize("i", range(3), ids=FAMILY_IDS)
def test_dense_left_inverse(small_oracles, i):
    assert small_oracles[i].identity_error() < 1e-6


@pytest.mark.parametrize("i", range(3), ids=FAMILY_IDS)
def test_dense_pinv_matches_dual_atoms(small_banks, small_oracles, i):
    # the pseudo-inverse of a circular frame is synthesis with the canonical dual
    fb, orc = small_banks[i], small_oracles[i]
    duals = np.fft.ifft(fb.all_duals(), axis=-1)
    t = np.arange(fb.N)
    idx = (t[None, :] - t[:, None]) % fb.N
    D = duals[:, idx].reshape(-1, fb.N)
    np.testing.assert_allclose(orc.pinv.T, D, atol=1e-10)


@pytest.mark.parametrize("i", range(3), ids=FAMILY_IDS)
def test_dense_reconstruction(small_oracles, rng, i):
    orc = small_oracles[i]
    x = rng.standard_normal(64)
    xh = np.real(orc.pinv @ orc.coefficients(x))
    assert np.linalg.norm(xh - x) / np.linalg.norm(x) < 1e-10


@pytest.mark.parametrize("fam", FAMILIES, ids=FAMILY_IDS)
def test_fft_reconstruction(fam, rng):
    fb = build(fam, 2048, 5, 8)
    x = rng.standard_normal(2048)
    xh = thresholding.reconstruct(cwt(x, fb), fb)
    assert np.linalg.norm(xh - x) / np.linalg.norm(x) < 1e-8


def test_dense_matrix_rows_are_translated_atoms(small_banks, rng):
    fb = small_banks[0]
    M = dense_matrices(fb)
    x = rng.standard_normal(fb.N)
    c = cwt(x, fb)
    coeffs = np.conj(M) @ x
    np.testing.assert_allclose(coeffs[: fb.n_filters * fb.N], c.data.ravel(), atol=1e-12)
    np.testing.assert_allclose(coeffs[fb.n_filters * fb.N:].real, c.lowpass, atol=1e-12)


@pytest.mark.parametrize("fam", FAMILIES, ids=FAMILY_IDS)
def test_frame_sandwich(fam, rng):
    fb = build(fam, 256, 4, 4)
    A, B = frame_bounds(fb)
    for _ in range(100):
        x = rng.standard_normal(256)
        c = cwt(x, fb)
        e = np.sum(np.abs(c.data) ** 2) + np.sum(c.lowpass**2)
        nx = np.sum(x**2)
        assert A * nx * (1 - 1e-12) <= e <= B * nx * (1 + 1e-12)


def test_frame_deficient_names_band():
    with pytest.raises(FrameDeficientError) as exc:
        build(WaveletFamily.morlet(), 1024, 5, 8, frame_floor=0.9)
    lo, hi = exc.value.band
    assert -np.pi <= lo <= hi <= np.pi


@pytest.mark.parametrize("N,J,Q", [(16, 3, 1), (100, 2, 1), (64, 0, 1), (64, 2, 0)])
def test_invalid_sizes(N, J, Q):
    with pytest.raises(InvalidParameterError):
        build(WaveletFamily.morlet(), N, J, Q)


def test_bank_arrays_read_only(small_banks):
    with pytest.raises(ValueError):
        small_banks[0].filters[0, 0] = 1.0


def test_max_decimation_passes_guard(morlet1024):
    from smfdsn.transform import check_decimation

    d = morlet1024.max_decimation()
    assert d >= 1
    check_decimation(morlet1024.N, morlet1024.phi_hat, d)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(FAMILIES), st.integers(1, 4), st.integers(1, 6))
def test_lp_sum_above_floor(fam, J, Q):
    fb = build(fam, 2 ** (J + 4), J, Q)
    assert fb.lp_sum.min() > 1e-6
    np.testing.assert_allclose(fb.lp_sum, filterbank.littlewood_paley(fb.filters, fb.phi_hat))
