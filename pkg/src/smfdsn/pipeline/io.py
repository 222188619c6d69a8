"""WAV ingestion and the SMFT binary tensor format.

SMFT layout, all little-endian::

    b"SMFT" | version u32 | dtype u8 | ndim u8 | dims u64 * ndim | payload

``dtype`` 0 is float64, 1 is complex128 stored as interleaved re/im
float64 pairs. The payload is row-major.
"""
import struct

import numpy as np
from scipy.io import wavfile

from ..errors import FormatError
from ..filterbank import FilterBank
from ..thresholding import ThresholdReport
from ..transform import CoeffTensor

MAGIC = b"SMFT"
VERSION = 1
F64, C128 = 0, 1
MAX_ELEMENTS = 2**40


def _as_array(obj):
    if isinstance(obj, FilterBank):
        return obj.all_filters()
    if isinstance(obj, CoeffTensor):
        return obj.data
    if isinstance(obj, ThresholdReport):
        rs = np.broadcast_to(obj.risk_selected[:, None], obj.mask.shape)
        return np.stack([obj.mask.astype(float), obj.risk_unselected, rs])
    return np.asarray(obj)


def dump_tensor(obj, path):
    """Write an array, bank spectra, coefficients or threshold report."""
    a = _as_array(obj)
    if np.iscomplexobj(a):
        code, payload = C128, np.ascontiguousarray(a, dtype="<c16")
    else:
        code, payload = F64, np.ascontiguousarray(a, dtype="<f8")
    if a.ndim > 255:
        raise FormatError("too many dimensions")
    header = MAGIC + struct.pack("<IBB", VERSION, code, a.ndim) + struct.pack(f"<{a.ndim}Q", *a.shape)
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(payload.tobytes())


def load_tensor(path):
    with open(path, "rb") as fh:
        raw = fh.read()
    if len(raw) < 10 or raw[:4] != MAGIC:
        raise FormatError(f"{path}: not an SMFT file")
    version, code, ndim = struct.unpack_from("<IBB", raw, 4)
    if version != VERSION:
        raise FormatError(f"{path}: unsupported SMFT version {version}")
    if code not in (F64, C128):
        raise FormatError(f"{path}: unknown dtype code {code}")
    off = 10
    if len(raw) < off + 8 * ndim:
        raise FormatError(f"{path}: truncated header")
    dims = struct.unpack_from(f"<{ndim}Q", raw, off)
    off += 8 * ndim
    count = 1
    for d in dims:
        count *= d
        if count > MAX_ELEMENTS:
            raise FormatError(f"{path}: dimensions overflow")
    width = 16 if code == C128 else 8
    if len(raw) - off != count * width:
        raise FormatError(f"{path}: payload has {len(raw) - off} bytes, expected {count * width}")
    dt = "<c16" if code == C128 else "<f8"
    return np.frombuffer(raw, dtype=dt, offset=off, count=count).reshape(dims).copy()


def ingest_wav(path, window=None):
    """Read a PCM16 or float32 WAV as mono float samples in [-1, 1].

    Stereo is averaged across channels. When ``window`` is given the
    signal is zero-padded to a whole number of windows.

    Returns
    -------
    signal : ndarray
    rate : int
    n_samples : int
        Length before padding.
    """
    try:
        rate, data = wavfile.read(path)
    except (ValueError, EOFError, struct.error) as exc:
        raise FormatError(f"{path}: unreadable WAV ({exc})") from exc
    if data.dtype == np.int16:
        x = data.astype(float) / 32768.0
    elif data.dtype == np.float32:
        x = data.astype(float)
    else:
        raise FormatError(f"{path}: unsupported sample format {data.dtype}")
    if x.ndim == 2:
        x = x.mean(axis=1)
    n = x.size
    if window:
        total = max(1, -(-n // window)) * window
        x = np.concatenate([x, np.zeros(total - n)])
    return x, int(rate), n


def write_wav(path, x, rate, pcm16=True):
    x = np.asarray(x, dtype=float)
    if pcm16:
        data = np.clip(np.round(x * 32768.0), -32768, 32767).astype(np.int16)
    else:
        data = x.astype(np.float32)
    wavfile.write(path, rate, data)
