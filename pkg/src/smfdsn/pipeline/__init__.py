"""Audio I/O, configuration, feature export and the command line."""
from .config import LayerConfig, RunConfig, parse_families
from .features import FeatureRecord, ScatteringNetwork, extract_features, feature_labels, records_to_csv
from .io import dump_tensor, ingest_wav, load_tensor, write_wav
from .metrics import auc
from .commands import denoise_cmd, features_cmd, oracle_check, risk_cmd

__all__ = [
    "LayerConfig", "RunConfig", "parse_families", "FeatureRecord", "ScatteringNetwork",
    "extract_features", "feature_labels", "records_to_csv", "dump_tensor", "ingest_wav",
    "load_tensor", "write_wav", "auc", "denoise_cmd", "features_cmd", "oracle_check", "risk_cmd",
]
