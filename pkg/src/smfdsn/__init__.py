"""Sparse multi-family deep scattering networks for 1-D signals."""
from . import filterbank, scattering, thresholding, transform, wavelets
from .errors import (FormatError, FrameDeficientError, InvalidParameterError, PlacementError,
                     ShapeError, SMFError, StateError, UndefinedMetricError)
from .filterbank import FilterBank, build
from .scattering import PathKey, ScatteringTree
from .thresholding import ThresholdReport, dense_oracle, denoise, threshold
from .transform import CoeffTensor, cwt, lowpass_average, modulus
from .wavelets import WaveletFamily

__version__ = "0.1.0"
