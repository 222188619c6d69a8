"""Two-layer multi-family scattering network.

Layer 1 stacks one scalogram per wavelet family. Layer 2 filters every row
of every layer-1 scalogram with every layer-2 family, giving both
same-family and cross-family paths. Scattering coefficients are the
low-pass averages of these moduli.

With ``sparse=True`` each coefficient set is passed through the
empirical-risk mask before its modulus, and the risk it incurs becomes a
per-path feature.

Paths are keyed by :class:`PathKey`:

* layer 1: ``PathKey(((b1,),))`` - the whole scalogram of family ``b1``;
* layer 2: ``PathKey(((b1,), (b2, j2)))`` - rows ``j1`` of ``U1(b1)``
  filtered by wavelet ``j2`` of family ``b2``.
"""
from dataclasses import dataclass, field

import numpy as np

from . import thresholding
from .errors import ShapeError, StateError
from .transform import CoeffTensor, cwt, cwt_rows, lowpass_average, modulus

# layer-1 rows transformed together in layer 2
ROW_CHUNK = 8


@dataclass(frozen=True, order=True)
class PathKey:
    steps: tuple

    def __post_init__(self):
        if len(self.steps) not in (1, 2):
            raise ValueError("paths have one or two steps")

    @classmethod
    def first(cls, b1):
        return cls(((int(b1),),))

    @classmethod
    def second(cls, b1, b2, j2):
        return cls(((int(b1),), (int(b2), int(j2))))

    @property
    def order(self):
        return len(self.steps)

    @property
    def root(self):
        return self.steps[0][0]

    @property
    def is_cross(self):
        return self.order == 2 and self.steps[1][0] != self.steps[0][0]

    def label(self):
        if self.order == 1:
            return f"b{self.root}"
        b2, j2 = self.steps[1]
        return f"b{self.root}>b{b2}.j{j2}"


@dataclass(eq=False)
class ScatteringTree:
    banks1: list
    banks2: list = None
    sparse: bool = False
    u_tensors: dict = field(default_factory=dict)
    s_tensors: dict = field(default_factory=dict)
    risks: dict = field(default_factory=dict)
    reports: dict = field(default_factory=dict)
    s0: np.ndarray = None

    def keys(self, order=None):
        ks = sorted(self.u_tensors)
        return [k for k in ks if order is None or k.order == order]


def _kernels_for(banks, kernels, trunc_eta):
    if kernels is None:
        return [thresholding.gram_kernels(fb, trunc_eta) for fb in banks]
    if len(kernels) != len(banks):
        raise ShapeError("one kernel set per bank is required")
    return list(kernels)


def layer1(y, banks1, sparse=False, kernels=None, sigma=None, trunc_eta=thresholding.TOL.trunc_eta):
    """First layer: one (optionally thresholded) scalogram per family."""
    y = np.asarray(y, dtype=float)
    for fb in banks1:
        if fb.N != y.size:
            raise ShapeError(f"bank length {fb.N} does not match signal length {y.size}")
    tree = ScatteringTree(list(banks1), sparse=sparse)
    if sparse:
        kernels = _kernels_for(banks1, kernels, trunc_eta)
    for b, fb in enumerate(banks1):
        c = cwt(y, fb)
        key = PathKey.first(b)
        if sparse:
            c, rep = thresholding.threshold(c, kernels[b], sigma)
            tree.risks[key] = rep.empirical_risk
            tree.reports[key] = rep
        tree.u_tensors[key] = modulus(c)
    return tree


def iter_layer2(tree, banks2, sparse=False, kernels=None, trunc_eta=thresholding.TOL.trunc_eta):
    """Yield layer-2 blocks without holding the whole layer in memory.

    Each item is ``(b1, b2, rows, u, cost)`` where ``rows`` is a slice of
    layer-1 row indices, ``u`` the moduli of shape
    ``(len(rows), J2*Q2, N)`` and ``cost`` the per-scale empirical-risk
    contributions ``(len(rows), J2*Q2)`` (``None`` when not sparse).
    """
    l1 = tree.keys(1)
    if not l1:
        raise StateError("layer 1 has not been computed")
    if sparse:
        kernels = _kernels_for(banks2, kernels, trunc_eta)
    for key in l1:
        b1 = key.root
        U = np.real(tree.u_tensors[key].data)
        for b2, fb in enumerate(banks2):
            if fb.N != U.shape[-1]:
                raise ShapeError("layer-2 banks must share the layer-1 length")
            for start in range(0, U.shape[0], ROW_CHUNK):
                rows = slice(start, min(start + ROW_CHUNK, U.shape[0]))
                data, low = cwt_rows(U[rows], fb)
                cost = None
                if sparse:
                    mask, ru, rs, _ = thresholding.threshold_stack(data, low, kernels[b2])
                    cost = np.minimum(ru, rs[:, :, None]).sum(axis=-1)
                    data = np.where(mask, data, 0)
                yield b1, b2, rows, np.abs(data), cost


def layer2(tree, banks2, sparse=None, kernels=None, trunc_eta=thresholding.TOL.trunc_eta):
    """Second layer over every (layer-1 family, layer-2 family, scale) triple."""
    sparse = tree.sparse if sparse is None else sparse
    n1 = {k.root: tree.u_tensors[k].data.shape for k in tree.keys(1)}
    if not n1:
        raise StateError("layer 1 has not been computed")
    tree.banks2 = list(banks2)
    store = {}
    for b1, b2, rows, u, cost in iter_layer2(tree, banks2, sparse, kernels, trunc_eta):
        for j2 in range(u.shape[1]):
            key = PathKey.second(b1, b2, j2)
            if key not in store:
                store[key] = np.zeros(n1[b1])
                if sparse:
                    tree.risks[key] = 0.0
            store[key][rows] = u[:, j2]
            if sparse:
                tree.risks[key] += float(cost[:, j2].sum())
    for key, arr in store.items():
        tree.u_tensors[key] = CoeffTensor(arr, tree.banks2[key.steps[1][0]], True, None)
    return tree


def scatter_coeffs(tree, phi_hat=None, decimation=1, y=None):
    """Low-pass average every stored modulus tensor.

    ``phi_hat`` defaults to the first layer-1 bank's scaling function. The
    order-0 coefficient is computed when the input signal ``y`` is given.
    """
    if not tree.u_tensors:
        raise StateError("no modulus tensors to average")
    if phi_hat is None:
        phi_hat = tree.banks1[0].phi_hat
    for key, u in tree.u_tensors.items():
        # U and phi are non-negative; anything below zero is FFT roundoff
        tree.s_tensors[key] = np.maximum(lowpass_average(u, phi_hat, decimation), 0)
    if y is not None:
        tree.s0 = lowpass_average(np.asarray(y, dtype=float)[None, :], phi_hat, decimation)[0]
    return tree


def path_risks(tree):
    if not tree.sparse:
        raise StateError("risks exist only for sparse trees")
    return dict(tree.risks)


def transform(y, banks1, banks2, sparse=False, phi_hat=None, decimation=1,
              kernels1=None, kernels2=None, trunc_eta=thresholding.TOL.trunc_eta):
    """Full two-layer network with scattering coefficients."""
    tree = layer1(y, banks1, sparse, kernels1, trunc_eta=trunc_eta)
    layer2(tree, banks2, sparse, kernels2, trunc_eta)
    return scatter_coeffs(tree, phi_hat, decimation, y=y)
