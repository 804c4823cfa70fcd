"""Hidden-unit sweep: train one configuration per (hidden count, seed) cell
and report mean accuracies next to the published reference values."""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from . import dataset as ds_mod
from .mlp import init
from .train import TrainConfig, evaluate, train

# Reference test accuracies (%) reported for this architecture on the
# original 125/125 handwritten corpus; shown alongside, never gated on.
REFERENCE_TEST_ACCURACY = {12: 80.0, 24: 85.0, 36: 80.0}
REFERENCE_TRAIN_ACCURACY = {12: 100.0, 24: 100.0, 36: 100.0}


@dataclass(frozen=True)
class SweepSpec:
    """Which cells to run: hidden sizes x seeds, one TrainConfig for all."""

    hidden_counts: tuple[int, ...] = (12, 24, 36)
    cfg: TrainConfig = field(default_factory=TrainConfig)
    input_size: int = 900
    seeds: tuple[int, ...] = (0, 1, 2, 3, 4)

    def __post_init__(self):
        if not self.hidden_counts or not self.seeds:
            raise ValueError("hidden_counts and seeds must be non-empty")
        if self.input_size not in (900, 100):
            raise ValueError(f"input_size must be 900 or 100, got {self.input_size}")


@dataclass(frozen=True)
class SweepRow:
    """Per-hidden-count means over seeds; accuracies in percent."""

    hidden: int
    epochs_run: float
    wall_time: float
    train_accuracy: float
    test_accuracy: float

    def __post_init__(self):
        if not (0.0 <= self.train_accuracy <= 100.0 and 0.0 <= self.test_accuracy <= 100.0):
            raise ValueError("accuracies must lie in [0, 100]")


def run_sweep(spec: SweepSpec, train_set: ds_mod.Dataset, test_set: ds_mod.Dataset) -> list[SweepRow]:
    """Train and evaluate every cell; rows are means over the requested seeds.

    Each cell seeds both the weight init and the pattern shuffle, so a rerun
    of the same spec on the same corpora reproduces every number exactly.
    """
    if len(train_set) == 0 or len(test_set) == 0:
        raise ValueError("sweep needs non-empty train and test sets")
    pooled = spec.input_size == 100
    train_patterns = ds_mod.as_patterns(train_set, pooled=pooled)
    rows = []
    for hidden in spec.hidden_counts:
        epochs, seconds, train_accs, test_accs = [], [], [], []
        for seed in spec.seeds:
            try:
                net = init(spec.input_size, hidden, ds_mod.CODE_BITS, seed=seed)
                cfg = replace(spec.cfg, seed=seed)
                started = time.perf_counter()
                _, report = train(net, train_patterns, cfg)
                seconds.append(time.perf_counter() - started)
                epochs.append(report.epochs_run)
                train_accs.append(evaluate(net, train_set))
                test_accs.append(evaluate(net, test_set))
            except Exception as e:
                raise RuntimeError(f"sweep cell failed (hidden={hidden}, seed={seed}): {e}") from e
        rows.append(
            SweepRow(
                hidden=hidden,
                epochs_run=float(np.mean(epochs)),
                wall_time=float(np.mean(seconds)),
                train_accuracy=100.0 * float(np.mean(train_accs)),
                test_accuracy=100.0 * float(np.mean(test_accs)),
            )
        )
    return rows


def rows_to_csv(rows: Sequence[SweepRow]) -> str:
    lines = ["hidden,epochs,seconds,train_acc,test_acc"]
    for r in rows:
        lines.append(
            f"{r.hidden},{r.epochs_run:.1f},{r.wall_time:.2f},{r.train_accuracy:.2f},{r.test_accuracy:.2f}"
        )
    return "\n".join(lines) + "\n"


def render_table(rows: Sequence[SweepRow], input_size: int) -> str:
    """Aligned text table with the reference accuracies as a side column."""
    header = (
        f"{'Input':>7} {'Hidden':>7} {'Epochs':>7} {'Time (s)':>9} "
        f"{'Train %':>8} {'Test %':>7} {'Ref train/test %':>17}"
    )
    side = 30 if input_size == 900 else 10
    out = [header, "-" * len(header)]
    for r in rows:
        ref_train = REFERENCE_TRAIN_ACCURACY.get(r.hidden)
        ref_test = REFERENCE_TEST_ACCURACY.get(r.hidden)
        ref = f"{ref_train:.0f} / {ref_test:.0f}" if ref_test is not None else "-"
        out.append(
            f"{f'{side}x{side}':>7} {r.hidden:>7} {r.epochs_run:>7.1f} {r.wall_time:>9.2f} "
            f"{r.train_accuracy:>8.2f} {r.test_accuracy:>7.2f} {ref:>17}"
        )
    return "\n".join(out) + "\n"
