import os

import scipy.fft


def workers():
    """Thread cap for FFTs and window pools, from ``SMF_THREADS``."""
    raw = os.environ.get("SMF_THREADS")
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def fft(a, axis=-1):
    return scipy.fft.fft(a, axis=axis, workers=workers())


def ifft(a, axis=-1):
    return scipy.fft.ifft(a, axis=axis, workers=workers())


def rfft(a, axis=-1):
    return scipy.fft.rfft(a, axis=axis, workers=workers())


def irfft(a, n, axis=-1):
    return scipy.fft.irfft(a, n=n, axis=axis, workers=workers())
