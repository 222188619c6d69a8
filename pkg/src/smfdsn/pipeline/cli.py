"""Command-line entry point: ``python3 -m smfdsn <subcommand>``.

Exit codes: 0 success, 1 usage error, 2 data error.
"""
import argparse
import json
import sys

import numpy as np

from .. import filterbank
from ..errors import SMFError
from ..wavelets import WaveletFamily
from . import commands
from .config import LayerConfig, RunConfig, parse_families
from .io import dump_tensor
from .metrics import auc

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _family(args):
    return WaveletFamily(args.family, args.param)


def _add_bank_args(p, J=5, Q=8):
    p.add_argument("--family", default="morlet", choices=["morlet", "gammatone", "paul"])
    p.add_argument("--param", type=float, default=None, help="omega0 (Morlet) or order m")
    p.add_argument("-J", type=int, default=J)
    p.add_argument("-Q", type=int, default=Q)


def build_parser():
    parser = _Parser(prog="smfdsn", description="Sparse multi-family scattering toolkit")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("filterbank", help="build a bank, print its frame bounds, optionally dump spectra")
    _add_bank_args(p)
    p.add_argument("-N", type=int, default=65536)
    p.add_argument("--flatten", action="store_true")
    p.add_argument("--out", help="SMFT file for the analysis spectra")

    p = sub.add_parser("features", help="export scattering and risk features to CSV")
    p.add_argument("wavs", nargs="+")
    p.add_argument("--out", required=True)
    p.add_argument("--config", help="RunConfig JSON file")
    p.add_argument("--families1")
    p.add_argument("--families2")
    p.add_argument("--J1", type=int)
    p.add_argument("--Q1", type=int)
    p.add_argument("--J2", type=int)
    p.add_argument("--Q2", type=int)
    p.add_argument("--window", type=int)
    p.add_argument("--sparse", dest="sparse", action="store_true", default=None)
    p.add_argument("--no-sparse", dest="sparse", action="store_false")
    p.add_argument("--log-compress", dest="log_compress", action="store_true", default=None)
    p.add_argument("--no-log-compress", dest="log_compress", action="store_false")
    p.add_argument("--trunc-eta", type=float)
    p.add_argument("--decimation", type=int)
    p.add_argument("--sigma", type=float)

    p = sub.add_parser("denoise", help="threshold and reconstruct a WAV")
    p.add_argument("input")
    p.add_argument("output")
    _add_bank_args(p)
    p.add_argument("--window", type=int, default=65536)
    p.add_argument("--sigma", type=float)

    p = sub.add_parser("risk", help="per-window threshold reports for one family")
    p.add_argument("input")
    _add_bank_args(p)
    p.add_argument("--window", type=int, default=65536)
    p.add_argument("--sigma", type=float)
    p.add_argument("--out", help="SMFT file prefix; one report per window")

    p = sub.add_parser("eval-auc", help="AUC of externally produced scores")
    p.add_argument("scores", help="CSV with columns score,label (header optional)")

    p = sub.add_parser("oracle-check", help="compare fast risks with the dense oracle")
    p.add_argument("--signals", type=int, default=20)
    p.add_argument("--tol", type=float, default=1e-8)
    return parser


def _run_config(args):
    if args.config:
        with open(args.config) as fh:
            cfg = RunConfig.from_json(fh.read())
    else:
        cfg = RunConfig()
    d = cfg.to_dict()
    for layer, fams, J, Q in (("layer1", args.families1, args.J1, args.Q1),
                              ("layer2", args.families2, args.J2, args.Q2)):
        if fams is not None:
            d[layer]["families"] = parse_families(fams)
        if J is not None:
            d[layer]["J"] = J
        if Q is not None:
            d[layer]["Q"] = Q
    for key, val in (("window", args.window), ("sparse", args.sparse),
                     ("log_compress", args.log_compress), ("trunc_eta", args.trunc_eta),
                     ("decimation", args.decimation), ("sigma_override", args.sigma)):
        if val is not None:
            d[key] = val
    d["layer1"], d["layer2"] = LayerConfig(**d["layer1"]), LayerConfig(**d["layer2"])
    return RunConfig(**d)


def _cmd_filterbank(args, out):
    fb = filterbank.build(_family(args), args.N, args.J, args.Q, flatten=args.flatten)
    A, B = filterbank.frame_bounds(fb)
    print(f"{fb!r} frame_bounds=({A:.6g}, {B:.6g})", file=out)
    if args.out:
        dump_tensor(fb, args.out)
    return EXIT_OK


def _cmd_features(args, out):
    cfg = _run_config(args)
    records = commands.features_cmd(args.wavs, cfg, args.out)
    print(f"wrote {len(records)} records x {len(records[0].labels)} features to {args.out}", file=out)
    return EXIT_OK


def _cmd_denoise(args, out):
    reports = commands.denoise_cmd(args.input, args.output, _family(args), args.J, args.Q,
                                   args.window, args.sigma)
    for i, rep in enumerate(reports):
        print(f"window {i}: {rep.summary()}", file=out)
    return EXIT_OK


def _cmd_risk(args, out):
    _, reports = commands.risk_cmd(args.input, _family(args), args.J, args.Q, args.window, args.sigma)
    for i, rep in enumerate(reports):
        print(f"window {i}: {rep.summary()}", file=out)
        if args.out:
            dump_tensor(rep, f"{args.out}{i:04d}.smft")
    return EXIT_OK


def _read_scores(path):
    scores, labels = [], []
    with open(path) as fh:
        for n, line in enumerate(fh):
            line = line.strip()
            if not line:
                continue
            fields = line.split(",")
            try:
                s, y = float(fields[0]), int(float(fields[1]))
            except (ValueError, IndexError):
                if n == 0:
                    continue  # header
                raise ValueError(f"{path}:{n + 1}: expected 'score,label'")
            scores.append(s)
            labels.append(y)
    return np.array(scores), np.array(labels)


def _cmd_eval_auc(args, out):
    scores, labels = _read_scores(args.scores)
    print(f"auc={auc(scores, labels):.6f} n={labels.size}", file=out)
    return EXIT_OK


def _cmd_oracle_check(args, out):
    results = commands.oracle_check(n_signals=args.signals)
    ok = True
    for label, (err, masks) in results.items():
        good = err <= args.tol and masks
        ok &= good
        print(f"{label}: max_rel_err={err:.3g} masks_equal={masks} {'ok' if good else 'FAIL'}", file=out)
    return EXIT_OK if ok else EXIT_DATA


HANDLERS = {
    "filterbank": _cmd_filterbank,
    "features": _cmd_features,
    "denoise": _cmd_denoise,
    "risk": _cmd_risk,
    "eval-auc": _cmd_eval_auc,
    "oracle-check": _cmd_oracle_check,
}


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=err)
        return EXIT_USAGE
    if args.command is None:
        parser.print_usage(err)
        return EXIT_USAGE
    try:
        return HANDLERS[args.command](args, out)
    except (SMFError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
