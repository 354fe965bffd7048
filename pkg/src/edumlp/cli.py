"""Command-line interface: inspect, train, evaluate, predict, plot.

Exit codes: 0 success, 1 usage or file/format problems, 2 data that is
structurally fine but violates the dataset rules or the fitted schema.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import dataset as ds
from .bundle import read_bundle, write_bundle
from .chart import render_history_svg
from .encoding import load_schema_file
from .errors import BundleFormatError, DatasetFormatError, EncodingError
from .network import forward
from .pipeline import PipelineConfig, apply_bundle, run_training
from .scaling import load_split_manifest, save_split_manifest
from .training import Metrics, history_from_csv, history_to_csv

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; this tool reserves 2
    # for data violations.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_text(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_table(path: str, require_label: bool = True) -> ds.RecordTable:
    return ds.parse_dataset(
        _read_text(path), source_name=path, require_label=require_label
    )


def _print_violations(report: ds.ValidationReport) -> None:
    for violation in report.violations:
        print(violation, file=sys.stderr)
    print(
        f"{len(report.violations)} violation(s) found", file=sys.stderr
    )


def _print_metrics(metrics: Metrics, label_order) -> None:
    total = int(metrics.confusion.sum())
    correct = int(np.trace(metrics.confusion))
    print(f"loss: {metrics.loss:.4f}")
    print(f"accuracy: {metrics.accuracy:.4f} ({correct}/{total})")
    print(f"confusion (rows=true, cols=predicted; order {','.join(label_order)}):")
    for i, row in enumerate(metrics.confusion):
        cells = " ".join(f"{int(v):4d}" for v in row)
        print(f"  {label_order[i]}: {cells}")


def cmd_inspect(args) -> int:
    table = _load_table(args.csv_path)
    report = ds.validate(table)
    if not report.ok:
        _print_violations(report)
        return EXIT_DATA
    summary = ds.summarize(table)
    if args.json:
        print(json.dumps(summary.to_json_dict(), indent=2))
    else:
        print(summary.to_text())
    return EXIT_OK


def cmd_train(args) -> int:
    table = _load_table(args.csv_path)
    report = ds.validate(table)
    if not report.ok:
        _print_violations(report)
        return EXIT_DATA
    schema = load_schema_file(args.schema) if args.schema else None
    config = PipelineConfig(
        epochs=args.epochs,
        batch_size=args.batch_size,
        seed=args.seed,
        test_fraction=args.test_fraction,
        val_fraction=args.val_fraction,
        scale_after_split=args.scale_after_split,
        learning_rate=args.lr,
        beta1=args.beta1,
        beta2=args.beta2,
        epsilon=args.epsilon,
        post_epoch_metrics=args.post_epoch_metrics,
    )
    result = run_training(table, config, schema)

    write_bundle(result.bundle, args.output)
    print(f"wrote bundle: {args.output}")
    if args.history:
        with open(args.history, "w", encoding="utf-8") as fh:
            fh.write(history_to_csv(result.history))
        print(f"wrote history: {args.history}")
    if args.split_manifest:
        save_split_manifest(result.split, args.split_manifest)
        print(f"wrote split manifest: {args.split_manifest}")

    label_order = result.bundle.fitted_schema.label_order
    for name, metrics in (
        ("train", result.train_metrics),
        ("val", result.val_metrics),
        ("test", result.test_metrics),
    ):
        if metrics is not None:
            print(f"{name}: loss={metrics.loss:.4f} acc={metrics.accuracy:.4f}")
    if result.test_metrics is not None:
        _print_metrics(result.test_metrics, label_order)
    return EXIT_OK


def cmd_evaluate(args) -> int:
    bundle = read_bundle(_read_text(args.bundle_path))
    table = _load_table(args.csv_path)
    X = apply_bundle(bundle, table)
    labels = []
    for i, record in enumerate(table.records, start=1):
        value = record.class_label
        if value not in bundle.fitted_schema.label_order:
            raise EncodingError(f"row {i}: unknown label {value!r}")
        labels.append(bundle.fitted_schema.label_order.index(value))
    y = np.asarray(labels, dtype=np.int64)

    if args.split_manifest:
        manifest = load_split_manifest(args.split_manifest)
        rows = list(manifest.test)
        if rows and (min(rows) < 0 or max(rows) >= X.shape[0]):
            raise ValueError(
                "split manifest indices out of range for this dataset"
            )
        X, y = X[rows], y[rows]

    from .training import evaluate as evaluate_model

    metrics = evaluate_model(bundle.model, X, y)
    if args.json:
        print(
            json.dumps(
                {
                    "loss": metrics.loss,
                    "accuracy": metrics.accuracy,
                    "confusion": metrics.confusion.tolist(),
                }
            )
        )
    else:
        _print_metrics(metrics, bundle.fitted_schema.label_order)
    return EXIT_OK


def cmd_predict(args) -> int:
    bundle = read_bundle(_read_text(args.bundle_path))
    table = _load_table(args.csv_path, require_label=False)
    X = apply_bundle(bundle, table)
    probabilities = forward(bundle.model, X).probabilities
    label_order = bundle.fitted_schema.label_order
    for i, record in enumerate(table.records):
        k = int(np.argmax(probabilities[i]))
        probs = " ".join(
            f"p_{label}={probabilities[i][j]:.9f}"
            for j, label in enumerate(label_order)
        )
        line = f"{label_order[k]} {probs}"
        if record.class_label is not None:
            line += f" actual={record.class_label}"
        print(line)
    return EXIT_OK


def cmd_plot(args) -> int:
    history = history_from_csv(_read_text(args.history_csv))
    if len(history) == 0:
        print("history is empty", file=sys.stderr)
        return EXIT_USAGE
    svg = render_history_svg(history)
    with open(args.output_path, "w", encoding="utf-8") as fh:
        fh.write(svg)
    print(f"wrote chart: {args.output_path}")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(
        prog="edumlp",
        description=(
            "Train and apply a grade-band classifier on LMS student "
            "activity exports."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_inspect = sub.add_parser(
        "inspect", help="validate a dataset and print its summary statistics"
    )
    p_inspect.add_argument("csv_path")
    p_inspect.add_argument("--json", action="store_true", help="JSON output")
    p_inspect.set_defaults(func=cmd_inspect)

    p_train = sub.add_parser("train", help="train a model on a dataset CSV")
    p_train.add_argument("csv_path")
    p_train.add_argument("-o", "--output", default="model.json",
                         help="bundle output path (default model.json)")
    p_train.add_argument("--history", help="write per-epoch history CSV here")
    p_train.add_argument("--split-manifest",
                         help="write the train/val/test row indices here")
    p_train.add_argument("--epochs", type=int, default=30)
    p_train.add_argument("--batch-size", type=int, default=16)
    p_train.add_argument("--seed", type=int, default=0)
    p_train.add_argument("--test-fraction", type=float, default=0.2)
    p_train.add_argument("--val-fraction", type=float, default=0.2)
    p_train.add_argument("--scale-after-split", action="store_true",
                         help="fit the scaler on training rows only")
    p_train.add_argument("--lr", type=float, default=0.001)
    p_train.add_argument("--beta1", type=float, default=0.9)
    p_train.add_argument("--beta2", type=float, default=0.999)
    p_train.add_argument("--epsilon", type=float, default=1e-7)
    p_train.add_argument("--post-epoch-metrics", action="store_true",
                         help="recompute epoch metrics after each epoch")
    p_train.add_argument("--schema", help="JSON feature schema file")
    p_train.set_defaults(func=cmd_train)

    p_eval = sub.add_parser("evaluate", help="evaluate a bundle on a CSV")
    p_eval.add_argument("bundle_path")
    p_eval.add_argument("csv_path")
    p_eval.add_argument("--split-manifest",
                        help="restrict to the manifest's test rows")
    p_eval.add_argument("--json", action="store_true", help="JSON output")
    p_eval.set_defaults(func=cmd_evaluate)

    p_predict = sub.add_parser(
        "predict", help="print per-row grade-band predictions"
    )
    p_predict.add_argument("bundle_path")
    p_predict.add_argument("csv_path")
    p_predict.set_defaults(func=cmd_predict)

    p_plot = sub.add_parser("plot", help="render a history CSV to SVG")
    p_plot.add_argument("history_csv")
    p_plot.add_argument("output_path")
    p_plot.set_defaults(func=cmd_plot)

    return parser


def _validate_train_args(parser: _Parser, args) -> None:
    if args.command != "train":
        return
    if args.epochs < 1:
        parser.error("--epochs must be >= 1")
    if args.batch_size < 1:
        parser.error("--batch-size must be >= 1")
    if args.test_fraction < 0 or args.val_fraction < 0:
        parser.error("fractions must be non-negative")
    if args.test_fraction + args.val_fraction >= 1:
        parser.error("--test-fraction plus --val-fraction must be < 1")
    if args.lr <= 0:
        parser.error("--lr must be positive")
    if not 0 <= args.beta1 < 1 or not 0 <= args.beta2 < 1:
        parser.error("--beta1/--beta2 must lie in [0, 1)")
    if args.epsilon <= 0:
        parser.error("--epsilon must be positive")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate_train_args(parser, args)
    try:
        return args.func(args)
    except EncodingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (DatasetFormatError, BundleFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
