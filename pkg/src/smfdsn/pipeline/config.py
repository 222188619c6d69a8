"""Run configuration: one JSON document, overridable from the command line."""
from dataclasses import asdict, dataclass, field
import json

from ..errors import InvalidParameterError
from ..wavelets import KINDS, WaveletFamily

DEFAULT_FAMILIES = [["morlet", 6.0], ["gammatone", 4], ["paul", 2]]


def _is_pow2(n):
    return n >= 1 and (n & (n - 1)) == 0


@dataclass
class LayerConfig:
    families: list = field(default_factory=lambda: [list(f) for f in DEFAULT_FAMILIES])
    J: int = 5
    Q: int = 8

    def wavelet_families(self):
        out = []
        for entry in self.families:
            kind, param = (entry[0], entry[1]) if len(entry) > 1 else (entry[0], None)
            out.append(WaveletFamily(kind, param))
        return out


@dataclass
class RunConfig:
    layer1: LayerConfig = field(default_factory=LayerConfig)
    layer2: LayerConfig = field(default_factory=lambda: LayerConfig(J=4, Q=1))
    window: int = 65536
    sparse: bool = True
    trunc_eta: float = 1e-6
    decimation: int = 1
    log_compress: bool = True
    sigma_override: float = None

    def __post_init__(self):
        if isinstance(self.layer1, dict):
            self.layer1 = LayerConfig(**self.layer1)
        if isinstance(self.layer2, dict):
            self.layer2 = LayerConfig(**self.layer2)
        self.validate()

    def validate(self):
        if not isinstance(self.window, int) or not _is_pow2(self.window):
            raise InvalidParameterError(f"window must be a power of two, got {self.window}")
        if not isinstance(self.decimation, int) or self.decimation < 1 or self.window % self.decimation:
            raise InvalidParameterError("decimation must be a positive divisor of the window")
        if self.trunc_eta < 0:
            raise InvalidParameterError("trunc_eta must be non-negative")
        if self.sigma_override is not None and self.sigma_override < 0:
            raise InvalidParameterError("sigma_override must be non-negative")
        for layer in (self.layer1, self.layer2):
            if not layer.families:
                raise InvalidParameterError("each layer needs at least one family")
            for entry in layer.families:
                if entry[0] not in KINDS:
                    raise InvalidParameterError(f"unknown family {entry[0]!r}")
            if layer.J < 1 or layer.Q < 1:
                raise InvalidParameterError("J and Q must be >= 1")

    def to_dict(self):
        return asdict(self)

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, d):
        known = set(cls.__dataclass_fields__)
        extra = set(d) - known
        if extra:
            raise InvalidParameterError(f"unknown config keys: {sorted(extra)}")
        return cls(**d)

    @classmethod
    def from_json(cls, text):
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidParameterError(f"invalid config JSON: {exc}") from exc
        return cls.from_dict(d)


def parse_families(spec):
    """``"morlet:6,paul:2"`` -> ``[["morlet", 6.0], ["paul", 2]]``."""
    out = []
    for item in spec.split(","):
        item = item.strip()
        if not item:
            continue
        kind, _, param = item.partition(":")
        if not param:
            out.append([kind])
        else:
            out.append([kind, float(param) if kind == "morlet" else int(param)])
    return out
