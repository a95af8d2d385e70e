"""Command-line interface: ``generate``, ``infer`` and ``benchmark``.

Exit codes: 0 on success, 1 on runtime or I/O errors, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from pathlib import Path

import numpy as np

from .bench import BenchConfig, run_benchmark
from .binning import DEFAULT_N_BINS
from .core import CriterionKind, DataKind, ValidationError, validate_dataset
from .criteria import ALL_CRITERIA, evaluate_all
from .scm import GenConfig, NoiseMode, NoiseSpec, derive_seed, generate_dataset

DEFAULT_SEED = 0
DEFAULT_CARDINALITY = 20

log = logging.getLogger("treecause")


class CliError(Exception):
    """Runtime failure reported with exit code 1."""


def format_value(v: float, kind: DataKind) -> str:
    if kind is DataKind.DISCRETE:
        return str(int(v))
    return np.format_float_positional(float(v), unique=True, trim="-")


def write_csv(path: Path, x, y, kind: DataKind) -> None:
    with open(path, "w", newline="") as fh:
        fh.write("x,y\n")
        for a, b in zip(x, y):
            fh.write(f"{format_value(a, kind)},{format_value(b, kind)}\n")


def read_csv(path: Path):
    """Read a two-column ``x,y`` CSV; returns two float arrays."""
    try:
        fh = open(path, newline="")
    except OSError as exc:
        raise CliError(f"cannot open {path}: {exc.strerror}") from None
    xs, ys = [], []
    with fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise CliError(f"{path}: empty file")
        if [h.strip() for h in header] != ["x", "y"]:
            raise CliError(f"{path}:1: expected header 'x,y', got {','.join(header)!r}")
        for row in reader:
            lineno = reader.line_num
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != 2:
                raise CliError(f"{path}:{lineno}: expected 2 fields, got {len(row)}")
            try:
                xs.append(float(row[0]))
                ys.append(float(row[1]))
            except ValueError:
                raise CliError(f"{path}:{lineno}: non-numeric value in {row!r}") from None
    return np.array(xs), np.array(ys)


def _gen_config(args, parser) -> GenConfig:
    kind = DataKind(args.kind)
    if kind is DataKind.CONTINUOUS and args.cardinality is not None:
        parser.error("--cardinality only applies to --kind discrete")
    card = args.cardinality
    if kind is DataKind.DISCRETE:
        card = DEFAULT_CARDINALITY if card is None else card
        if card < 2:
            parser.error("--cardinality must be >= 2")
    if args.samples < 2:
        parser.error("--samples must be >= 2")
    return GenConfig(
        noise_x=NoiseSpec.make(kind, args.noise_x, card),
        noise_y=NoiseSpec.make(kind, args.noise_y, card),
        noise_mode=NoiseMode(args.mode),
        n_samples=args.samples,
        seed=args.seed,
    )


def cmd_generate(args, parser) -> int:
    if args.datasets < 1:
        parser.error("--datasets must be >= 1")
    gen = _gen_config(args, parser)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    width = max(4, len(str(args.datasets - 1)))
    records = []
    for i in range(args.datasets):
        seed = derive_seed(args.seed, i)
        ld = generate_dataset(gen.with_seed(seed))
        name = f"dataset_{i:0{width}d}.csv"
        write_csv(out / name, ld.data.x, ld.data.y, ld.data.kind)
        records.append(
            {
                "file": name,
                "truth": ld.truth.value,
                "seed": seed,
                "noise_x": gen.noise_x.to_dict(),
                "noise_y": gen.noise_y.to_dict(),
                "mode": gen.noise_mode.value,
                "f_cause": list(ld.mechanism.f_cause.coefficients),
                "f_noise": list(ld.mechanism.f_noise.coefficients),
                "flipped": ld.mechanism.flipped,
            }
        )
    with open(out / "manifest.jsonl", "w") as fh:
        for rec in records:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")
    print(f"wrote {len(records)} dataset(s) and manifest.jsonl to {out}")
    return 0


def cmd_infer(args, parser) -> int:
    if args.bins < 1:
        parser.error("--bins must be >= 1")
    x, y = read_csv(Path(args.input))
    try:
        ds = validate_dataset(x, y, args.kind)
    except ValidationError as exc:
        raise CliError(f"{args.input}: {exc}") from None
    criteria = [CriterionKind(c) for c in args.criterion] if args.criterion else ALL_CRITERIA
    for s in evaluate_all(ds, args.bins, criteria=criteria):
        print(f"J_{s.kind.value}\t{s.j_oriented:.6g}\t{s.decision.value}")
    return 0


def cmd_benchmark(args, parser) -> int:
    if args.datasets < 1:
        parser.error("--datasets must be >= 1")
    if args.bins < 1 or args.hist_bins < 1:
        parser.error("--bins and --hist-bins must be >= 1")
    cfg = BenchConfig(
        gen=_gen_config(args, parser),
        n_datasets=args.datasets,
        n_bins=args.bins,
        histogram_bins=args.hist_bins,
        n_jobs=args.jobs,
    )
    report = run_benchmark(cfg)
    Path(args.report).parent.mkdir(parents=True, exist_ok=True)
    with open(args.report, "w") as fh:
        json.dump(report.to_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"{'criterion':<10}{'accuracy':>10}{'acc_excl_abstain':>18}")
    for s in report.summaries:
        print(f"J_{s.kind.value:<8}{s.accuracy:>10.3f}{s.accuracy_excluding_abstentions:>18.3f}")
    return 0


def _add_gen_flags(p: argparse.ArgumentParser, datasets_default: int, samples_default: int) -> None:
    p.add_argument("--kind", choices=[k.value for k in DataKind], default="discrete")
    p.add_argument("--noise-x", choices=["uniform", "gaussian"], default="uniform")
    p.add_argument("--noise-y", choices=["uniform", "gaussian"], default="uniform")
    p.add_argument("--mode", choices=[m.value for m in NoiseMode], default="additive")
    p.add_argument("--cardinality", type=int, default=None,
                   help=f"noise cardinality R for discrete data (default {DEFAULT_CARDINALITY})")
    p.add_argument("--samples", type=int, default=samples_default)
    p.add_argument("--datasets", type=int, default=datasets_default)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treecause",
        description="Infer cause and effect between two variables from decision-tree complexity.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write synthetic cause-effect datasets")
    _add_gen_flags(g, datasets_default=1, samples_default=1000)
    g.add_argument("--out", required=True, help="output directory")
    g.set_defaults(func=cmd_generate)

    i = sub.add_parser("infer", help="decide the direction for a two-column CSV")
    i.add_argument("--input", required=True)
    i.add_argument("--kind", choices=[k.value for k in DataKind], required=True)
    i.add_argument("--bins", type=int, default=DEFAULT_N_BINS)
    i.add_argument("--criterion", action="append", choices=[c.value for c in CriterionKind],
                   help="criterion to report; repeatable (default: all six)")
    i.set_defaults(func=cmd_infer)

    b = sub.add_parser("benchmark", help="run the synthetic benchmark")
    _add_gen_flags(b, datasets_default=1000, samples_default=1000)
    b.add_argument("--bins", type=int, default=DEFAULT_N_BINS)
    b.add_argument("--hist-bins", type=int, default=50)
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--report", required=True)
    b.set_defaults(func=cmd_benchmark)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args, parser)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
