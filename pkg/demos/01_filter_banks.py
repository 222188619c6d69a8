"""Filter banks for the three wavelet families.

Builds a Morlet, a Gammatone and a Paul bank on the same grid, prints the
placement weight alpha, the frame bounds and two exactness checks: the
canonical dual identity in Fourier and the dense left inverse W^+ W = I.

    python3 demos/01_filter_banks.py
"""
import numpy as np

from smfdsn import filterbank
from smfdsn.thresholding import DenseOracle
from smfdsn.wavelets import WaveletFamily, center_and_bandwidth

families = [WaveletFamily.morlet(6), WaveletFamily.gammatone(4), WaveletFamily.paul(2)]

print("family       alpha     A        B        max|dual id - 1|")
for fam in families:
    fb = filterbank.build(fam, 1024, 5, 8)
    A, B = filterbank.frame_bounds(fb)
    err = np.max(np.abs(filterbank.dual_identity(fb) - 1))
    print(f"{fb.family.label:<12} {fb.alpha:.6f}  {A:.4f}  {B:8.3f}  {err:.1e}")

# the mother wavelet sits against Nyquist: center + bandwidth = pi
fb = filterbank.build(families[0], 1024, 5, 8)
wc, dw = center_and_bandwidth(fb.family, fb.alpha)
print(f"\nMorlet mother: center {wc:.4f} + bandwidth {dw:.4f} = {wc + dw:.12f} (pi = {np.pi:.12f})")
print(f"coarsest center {center_and_bandwidth(fb.family, fb.scales[-1])[0]:.5f} rad, "
      f"low-pass width {fb.phi_width:.5f} rad")

# flattening trades unit-norm atoms for a tight frame
flat = filterbank.build(families[2], 512, 4, 1, flatten=True)
print(f"\nPaul J=4 Q=1 raw bounds {filterbank.frame_bounds(filterbank.build(families[2], 512, 4, 1))}")
print(f"Paul J=4 Q=1 flattened bounds {filterbank.frame_bounds(flat)}")

# explicit matrices at toy size
print("\ndense check at N=64, J=3, Q=2")
for fam in families:
    orc = DenseOracle.from_bank(filterbank.build(fam, 64, 3, 2))
    print(f"  {fam.kind:<10} max |W+W - I| = {orc.identity_error():.2e}")
