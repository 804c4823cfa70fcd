"""Operator entry points: corpus generation, preprocessing, training,
evaluation, the hidden-unit sweep, one-shot recognition, and the service."""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from . import dataset as ds_mod
from . import synth
from .experiment import SweepSpec, render_table, rows_to_csv, run_sweep
from .mlp import init, load_model, save_model
from .pipeline import PipelineConfig, recognize
from .raster import BinaryImage, binary_from_rows, read_pnm
from .service import DEFAULT_PORT, RecognizerApp, serve
from .skeleton import EmptyGlyphError, glyph_rows, normalize, pool, thin
from .train import TrainConfig, evaluate, parse_report_summary, report_to_csv, train_dataset


def _add_train_flags(p: argparse.ArgumentParser, mse_default: float = 0.05) -> None:
    p.add_argument("--eta", type=float, default=0.2, help="learning rate (default 0.2)")
    p.add_argument("--alpha", type=float, default=0.1, help="momentum (default 0.1)")
    p.add_argument("--epochs", type=int, default=200, help="epoch cap (default 200)")
    p.add_argument(
        "--mse",
        type=float,
        default=mse_default,
        help=f"stop when mean error drops below (default {mse_default})",
    )
    p.add_argument("--seed", type=int, default=0, help="seed for init and pattern order")
    p.add_argument("--pool", action="store_true", help="compress glyphs to 10x10 (100 inputs)")
    p.add_argument("--no-bias", action="store_true", help="disable the per-layer bias units")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="farsiocr", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a synthetic labeled corpus")
    p.add_argument("--out", required=True, help="output .fds path")
    p.add_argument("--per-class", type=int, default=8, help="samples per letter (default 8)")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("prep", help="preprocess one image into a glyph text grid")
    p.add_argument("--in", dest="in_path", required=True, help="PGM (P2/P5), PBM (P1), or glyph text")
    p.add_argument("--out", required=True, help="output glyph text path")
    p.add_argument("--threshold", type=int, default=None, help="fixed binarization threshold (default: Otsu)")
    p.add_argument("--pool", action="store_true", help="emit the pooled 10x10 grid")

    p = sub.add_parser("train", help="train a network on a corpus")
    p.add_argument("--data", required=True, help="training corpus (.fds)")
    p.add_argument("--hidden", type=int, default=24, help="hidden units (default 24)")
    p.add_argument("--out", required=True, help="output model path (.mlp)")
    p.add_argument("--report", default=None, help="training report CSV (default: <out>.csv)")
    _add_train_flags(p)

    p = sub.add_parser("eval", help="report accuracy of a model on a corpus")
    p.add_argument("--data", required=True)
    p.add_argument("--model", required=True)

    p = sub.add_parser("sweep", help="hidden-unit sweep with a 50/50 split")
    p.add_argument("--data", required=True)
    p.add_argument("--hidden", default="12,24,36", help="comma-separated hidden counts")
    p.add_argument("--seeds", default="0,1,2,3,4", help="comma-separated seeds per cell")
    p.add_argument("--fraction", type=float, default=0.5, help="training fraction (default 0.5)")
    p.add_argument("--split-seed", type=int, default=0)
    p.add_argument("--csv", default=None, help="also write rows as CSV to this path")
    # the sweep mirrors the fixed-iteration reporting regime, so by default
    # the error threshold is set low enough never to stop a run early
    _add_train_flags(p, mse_default=1e-9)

    p = sub.add_parser("recognize", help="classify one image file")
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--threshold", type=int, default=None, help="fixed binarization threshold (default: Otsu)")

    p = sub.add_parser("serve", help="run the HTTP recognition/collection service")
    p.add_argument("--model", required=True)
    p.add_argument("--data", required=True, help="live sample store (.fds), created on first append")
    p.add_argument("--port", type=int, default=DEFAULT_PORT)
    p.add_argument("--host", default="127.0.0.1")

    return parser


def _load_image(path: str) -> "BinaryImage | object":
    suffix = Path(path).suffix.lower()
    if suffix in (".pgm", ".pbm"):
        return read_pnm(path)
    rows = [ln for ln in Path(path).read_text(encoding="utf-8").splitlines() if ln.strip()]
    return binary_from_rows(rows)


def _cfg_from_args(args) -> TrainConfig:
    return TrainConfig(
        eta=args.eta,
        alpha=args.alpha,
        max_epochs=args.epochs,
        mse_threshold=args.mse,
        seed=args.seed,
        update_bias=not args.no_bias,
    )


def _cmd_gen(args) -> int:
    ds = synth.generate_corpus(args.per_class, args.seed)
    ds_mod.save(ds, args.out)
    print(f"wrote {len(ds)} samples ({args.per_class} per letter) to {args.out}")
    return 0


def _cmd_prep(args) -> int:
    img = _load_image(args.in_path)
    if not isinstance(img, BinaryImage):
        from .raster import binarize, gaussian_smooth

        img = binarize(gaussian_smooth(img), args.threshold)
    glyph = normalize(thin(img))
    if args.pool:
        glyph = pool(glyph)
    Path(args.out).write_text("\n".join(glyph_rows(glyph)) + "\n", encoding="utf-8")
    print(f"wrote {glyph.side}x{glyph.side} glyph to {args.out}")
    return 0


def _cmd_train(args) -> int:
    if args.hidden < 1:
        raise ValueError(f"--hidden must be >= 1, got {args.hidden}")
    ds = ds_mod.load(args.data)
    n_in = 100 if args.pool else 900
    net = init(n_in, args.hidden, ds_mod.CODE_BITS, seed=args.seed, bias=not args.no_bias)
    _, report = train_dataset(net, ds, _cfg_from_args(args))
    save_model(net, args.out)
    report_path = args.report or f"{args.out}.csv"
    Path(report_path).write_text(report_to_csv(report), encoding="utf-8")
    accuracy = evaluate(net, ds)
    print(
        f"trained {n_in}-{args.hidden}-{ds_mod.CODE_BITS} for {report.epochs_run} epochs "
        f"({report.stop_reason}), final mse {report.mse_per_epoch[-1]:.5f}, "
        f"train accuracy {100 * accuracy:.1f}%"
    )
    print(f"model -> {args.out}\nreport -> {report_path}")
    return 0


def _cmd_eval(args) -> int:
    ds = ds_mod.load(args.data)
    net = load_model(args.model)
    accuracy = evaluate(net, ds)
    print(f"accuracy {100 * accuracy:.1f}% ({round(accuracy * len(ds))}/{len(ds)})")
    return 0


def _cmd_sweep(args) -> int:
    ds = ds_mod.load(args.data)
    train_set, test_set = ds_mod.split(ds, args.fraction, args.split_seed)
    spec = SweepSpec(
        hidden_counts=tuple(int(v) for v in args.hidden.split(",")),
        cfg=_cfg_from_args(args),
        input_size=100 if args.pool else 900,
        seeds=tuple(int(v) for v in args.seeds.split(",")),
    )
    rows = run_sweep(spec, train_set, test_set)
    print(render_table(rows, spec.input_size), end="")
    if args.csv:
        Path(args.csv).write_text(rows_to_csv(rows), encoding="utf-8")
        print(f"csv -> {args.csv}")
    return 0


def _cmd_recognize(args) -> int:
    net = load_model(args.model)
    cfg = PipelineConfig.for_model(net, threshold=args.threshold)
    result = recognize(_load_image(args.in_path), cfg)
    outputs = " ".join(f"{v:.4f}" for v in result.outputs)
    print(f"{result.label.display} (index {result.label.index})")
    print(f"outputs: {outputs}")
    return 0


def _cmd_serve(args) -> int:
    net = load_model(args.model)
    trained_epochs = 0
    report_path = Path(f"{args.model}.csv")
    if report_path.exists():
        try:
            _, trained_epochs, _ = parse_report_summary(report_path.read_text(encoding="utf-8"))
        except ValueError:
            pass
    app = RecognizerApp(net, args.data, trained_epochs=trained_epochs)
    print(f"serving on http://{args.host}:{args.port} (model {args.model}, samples {args.data})")
    serve(app, port=args.port, host=args.host)
    return 0


_COMMANDS = {
    "gen": _cmd_gen,
    "prep": _cmd_prep,
    "train": _cmd_train,
    "eval": _cmd_eval,
    "sweep": _cmd_sweep,
    "recognize": _cmd_recognize,
    "serve": _cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except EmptyGlyphError:
        print("nothing written", file=sys.stderr)
        return 1
    except (OSError, ValueError, RuntimeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
