"""From WAV files to a feature CSV and an AUC.

Writes a handful of synthetic clips, extracts scattering and risk
features through the command line, scores them with a nearest-centroid
rule and evaluates the scores with ``eval-auc``.

    python3 demos/04_feature_export.py
"""
import csv
import os
import tempfile

import numpy as np
from scipy.io import wavfile

from smfdsn.pipeline.cli import main

rng = np.random.default_rng(2)
N = 2048
t = np.arange(N)
work = tempfile.mkdtemp(prefix="smfdsn-demo-")

paths, labels = [], []
for i in range(24):
    lab = i % 2
    if lab == 0:
        x = (1 + np.cos(2 * np.pi * rng.uniform(0.002, 0.01) * t)) * np.cos(2 * np.pi * rng.uniform(0.03, 0.2) * t)
    else:
        x = np.zeros(N)
        x[int(rng.integers(0, 100))::int(rng.integers(64, 256))] = 1.0
    x = x / np.sqrt(np.mean(x**2)) + np.sqrt(0.1) * rng.standard_normal(N)
    p = os.path.join(work, f"clip{i:02d}.wav")
    wavfile.write(p, 16000, (np.clip(x / 8, -1, 1) * 32767).astype(np.int16))
    paths.append(p)
    labels.append(lab)

out_csv = os.path.join(work, "features.csv")
main(["features", *paths, "--window", str(N), "--out", out_csv])

with open(out_csv) as fh:
    rows = list(csv.reader(fh))
header, body = rows[0], rows[1:]
F = np.array([[float(v) for v in r[2:]] for r in body])
y = np.array(labels)
print(f"{F.shape[1]} features per clip, first columns {header[2:5]}, last {header[-1]}")

# leave-one-out nearest centroid on standardized features
scores = []
for i in range(len(y)):
    keep = np.arange(len(y)) != i
    mu, sd = F[keep].mean(0), F[keep].std(0) + 1e-12
    Z = (F - mu) / sd
    c0, c1 = Z[keep & (y == 0)].mean(0), Z[keep & (y == 1)].mean(0)
    scores.append(np.linalg.norm(Z[i] - c0) - np.linalg.norm(Z[i] - c1))

score_csv = os.path.join(work, "scores.csv")
with open(score_csv, "w") as fh:
    fh.write("score,label\n")
    fh.writelines(f"{s:.17g},{lab}\n" for s, lab in zip(scores, labels))
main(["eval-auc", score_csv])
print(f"files left in {work}")
