"""Online error backpropagation with momentum.

Weights are updated after every pattern presentation. The per-pattern cost
is E = 1/2 * sum((desired - actual)^2); the update for each weight is

    dW(n) = eta * delta_j * X_i + alpha * dW(n-1),    W(n+1) = W(n) + dW(n)

with delta = O(1-O)(D-O) at the output layer and
delta_j = O_j(1-O_j) * sum_k delta_k W_kj at the hidden layer (computed
against the output weights as they were before this pattern's update).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import dataset as ds_mod
from .mlp import Mlp, forward

Pattern = tuple[np.ndarray, np.ndarray]


class TrainingDivergedError(RuntimeError):
    """Raised when an error term or epoch MSE stops being finite."""


@dataclass(frozen=True)
class TrainConfig:
    """Hyperparameters and stopping rules for one training run."""

    eta: float = 0.2
    alpha: float = 0.1
    max_epochs: int = 200
    mse_threshold: float = 0.05
    seed: int = 0
    update_bias: bool = True

    def __post_init__(self):
        # eta 0 is allowed so a zero-rate run can be checked to be a no-op
        if self.eta < 0:
            raise ValueError(f"eta must be >= 0, got {self.eta}")
        if not 0.0 <= self.alpha < 1.0:
            raise ValueError(f"alpha must lie in [0, 1), got {self.alpha}")
        if self.max_epochs < 1:
            raise ValueError(f"max_epochs must be >= 1, got {self.max_epochs}")
        if self.mse_threshold <= 0:
            raise ValueError(f"mse_threshold must be > 0, got {self.mse_threshold}")


@dataclass
class TrainState:
    """Mutable per-run state: the net plus the previous weight changes."""

    net: Mlp
    prev_dw_hidden: np.ndarray
    prev_dw_out: np.ndarray
    epoch: int = 0

    @classmethod
    def fresh(cls, net: Mlp) -> "TrainState":
        return cls(
            net=net,
            prev_dw_hidden=np.zeros_like(net.w_hidden),
            prev_dw_out=np.zeros_like(net.w_out),
        )


@dataclass
class TrainReport:
    """Convergence record: per-epoch MSE, stop reason, final accuracy."""

    epochs_run: int
    mse_per_epoch: list[float]
    stop_reason: str  # "converged" | "max_epochs"
    final_train_accuracy: float
    wall_time: float = 0.0


def pattern_error(desired: np.ndarray, actual: np.ndarray) -> float:
    """Half the sum of squared residuals between desired and actual outputs."""
    desired = np.asarray(desired, dtype=np.float64)
    actual = np.asarray(actual, dtype=np.float64)
    if desired.shape != actual.shape:
        raise ValueError(f"length mismatch: desired {desired.shape} vs actual {actual.shape}")
    return 0.5 * float(((desired - actual) ** 2).sum())


def backprop_pattern(state: TrainState, x: np.ndarray, desired: np.ndarray, cfg: TrainConfig) -> TrainState:
    """One online update: forward, deltas, momentum step, weights applied in place."""
    net = state.net
    acts = forward(net, x)
    out = acts.output
    hid = acts.hidden
    desired = np.asarray(desired, dtype=np.float64)
    if desired.shape != out.shape:
        raise ValueError(f"desired length {desired.shape} does not match n_out={net.n_out}")

    delta_out = out * (1.0 - out) * (desired - out)
    delta_hidden = hid * (1.0 - hid) * (net.w_out[:, :-1].T @ delta_out)
    if not (np.isfinite(delta_out).all() and np.isfinite(delta_hidden).all()):
        raise TrainingDivergedError("non-finite error term during backpropagation")

    x_b = np.append(acts.input, 1.0)
    hid_b = np.append(hid, 1.0)
    dw_out = cfg.eta * np.outer(delta_out, hid_b) + cfg.alpha * state.prev_dw_out
    dw_hidden = cfg.eta * np.outer(delta_hidden, x_b) + cfg.alpha * state.prev_dw_hidden
    if not cfg.update_bias:
        dw_out[:, -1] = 0.0
        dw_hidden[:, -1] = 0.0

    net.w_out += dw_out
    net.w_hidden += dw_hidden
    state.prev_dw_out = dw_out
    state.prev_dw_hidden = dw_hidden
    return state


def mean_error(net: Mlp, patterns: Sequence[Pattern]) -> float:
    """Mean per-pattern cost over a pattern set with the current weights."""
    total = 0.0
    for x, desired in patterns:
        total += pattern_error(desired, forward(net, x).output)
    return total / len(patterns)


def _nearest_target_accuracy(net: Mlp, patterns: Sequence[Pattern]) -> float:
    """Fraction of patterns whose output lands nearest its own target vector."""
    targets = np.unique(np.vstack([d for _, d in patterns]), axis=0)
    correct = 0
    for x, desired in patterns:
        out = forward(net, x).output
        nearest = targets[np.argmin(((targets - out) ** 2).sum(axis=1))]
        if np.array_equal(nearest, desired):
            correct += 1
    return correct / len(patterns)


def train(net: Mlp, patterns: Sequence[Pattern], cfg: TrainConfig) -> tuple[Mlp, TrainReport]:
    """Train in place over (input, target) pairs until the MSE threshold or
    the epoch cap is reached.

    The presentation order is shuffled once with the config seed and then
    held fixed, so identical (net, patterns, config) give bit-identical
    weights. After each epoch the mean cost over all patterns is recorded.
    """
    if len(patterns) == 0:
        raise ValueError("cannot train on an empty pattern set")
    for x, d in patterns:
        if np.asarray(x).shape != (net.n_in,):
            raise ValueError(f"pattern input length {np.asarray(x).shape} != n_in={net.n_in}")
        if np.asarray(d).shape != (net.n_out,):
            raise ValueError(f"pattern target length {np.asarray(d).shape} != n_out={net.n_out}")

    order = np.random.default_rng(cfg.seed).permutation(len(patterns))
    state = TrainState.fresh(net)
    mse_per_epoch: list[float] = []
    stop_reason = "max_epochs"
    started = time.perf_counter()
    for epoch in range(1, cfg.max_epochs + 1):
        state.epoch = epoch
        for i in order:
            x, desired = patterns[i]
            backprop_pattern(state, x, desired, cfg)
        e = mean_error(net, patterns)
        if not np.isfinite(e):
            raise TrainingDivergedError(f"epoch {epoch}: mean error is not finite")
        mse_per_epoch.append(e)
        if e < cfg.mse_threshold:
            stop_reason = "converged"
            break
    report = TrainReport(
        epochs_run=len(mse_per_epoch),
        mse_per_epoch=mse_per_epoch,
        stop_reason=stop_reason,
        final_train_accuracy=_nearest_target_accuracy(net, patterns),
        wall_time=time.perf_counter() - started,
    )
    return net, report


def _pooled_for(net: Mlp) -> bool:
    if net.n_in == 900:
        return False
    if net.n_in == 100:
        return True
    raise ValueError(f"glyph networks take 900 or 100 inputs, got n_in={net.n_in}")


def train_dataset(net: Mlp, train_set: ds_mod.Dataset, cfg: TrainConfig) -> tuple[Mlp, TrainReport]:
    """Train on a labeled dataset; glyphs are pooled iff the net takes 100 inputs."""
    if len(train_set) == 0:
        raise ValueError("cannot train on an empty dataset")
    return train(net, ds_mod.as_patterns(train_set, pooled=_pooled_for(net)), cfg)


def evaluate(net: Mlp, ds: ds_mod.Dataset) -> float:
    """Fraction of samples whose decoded prediction matches the true label."""
    if len(ds) == 0:
        raise ValueError("cannot evaluate on an empty dataset")
    pooled = _pooled_for(net)
    correct = 0
    for sample, (x, _) in zip(ds, ds_mod.as_patterns(ds, pooled=pooled)):
        predicted = ds_mod.decode_output(forward(net, x).output)
        if predicted.index == sample.label_index:
            correct += 1
    return correct / len(ds)


def report_to_csv(report: TrainReport) -> str:
    """CSV rendering: one `epoch,mse` line per epoch plus a summary line."""
    lines = ["epoch,mse"]
    for epoch, e in enumerate(report.mse_per_epoch, start=1):
        lines.append(f"{epoch},{e:.17g}")
    lines.append(
        f"summary,{report.stop_reason},{report.epochs_run},{report.final_train_accuracy:.17g}"
    )
    return "\n".join(lines) + "\n"


def parse_report_summary(text: str) -> tuple[str, int, float]:
    """Extract (stop_reason, epochs_run, final_train_accuracy) from report CSV."""
    for line in text.splitlines():
        if line.startswith("summary,"):
            _, reason, epochs, acc = line.split(",")
            return reason, int(epochs), float(acc)
    raise ValueError("report has no summary line")
