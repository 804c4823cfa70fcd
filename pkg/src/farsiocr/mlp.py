"""Two-layer perceptron: weight storage, seeded init, sigmoid forward pass.

The network is input -> hidden -> output with logistic units throughout.
Each layer carries one extra weight column for a bias unit clamped to 1;
disabling the bias zeroes that column so the net matches the plain
weighted-sum formulation exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

# Largest double below 1.0; keeps activations strictly inside (0, 1) even
# where exp() would saturate.
_ONE_BELOW = float(np.nextafter(1.0, 0.0))
_ZERO_ABOVE = float(np.nextafter(0.0, 1.0))


def sigmoid(z: np.ndarray | float) -> np.ndarray:
    """Logistic function 1/(1+e^-z), safe for any finite argument."""
    z = np.clip(z, -500.0, 500.0)
    out = 1.0 / (1.0 + np.exp(-z))
    return np.clip(out, _ZERO_ABOVE, _ONE_BELOW)


@dataclass(eq=False)
class Mlp:
    """Weights of the two-layer perceptron.

    ``w_hidden`` has shape (n_hidden, n_in + 1) and ``w_out`` shape
    (n_out, n_hidden + 1); the last column of each is the bias weight.
    """

    n_in: int
    n_hidden: int
    n_out: int
    seed: int
    w_hidden: np.ndarray
    w_out: np.ndarray

    def __post_init__(self):
        if self.w_hidden.shape != (self.n_hidden, self.n_in + 1):
            raise ValueError(
                f"w_hidden shape {self.w_hidden.shape} != ({self.n_hidden}, {self.n_in + 1})"
            )
        if self.w_out.shape != (self.n_out, self.n_hidden + 1):
            raise ValueError(
                f"w_out shape {self.w_out.shape} != ({self.n_out}, {self.n_hidden + 1})"
            )
        if not (np.isfinite(self.w_hidden).all() and np.isfinite(self.w_out).all()):
            raise ValueError("weights must be finite")


@dataclass(frozen=True)
class Activations:
    """Unit outputs of one forward pass: input copy, hidden, and output vectors."""

    input: np.ndarray
    hidden: np.ndarray
    output: np.ndarray


def init(n_in: int, n_hidden: int, n_out: int, seed: int, bias: bool = True) -> Mlp:
    """Fresh network with weights drawn uniformly from [-0.5, 0.5].

    The same seed always produces bit-identical weights. With ``bias=False``
    the bias columns start at zero.
    """
    if n_in < 1 or n_hidden < 1 or n_out < 1:
        raise ValueError(f"layer sizes must be >= 1, got {n_in}-{n_hidden}-{n_out}")
    rng = np.random.default_rng(seed)
    w_hidden = rng.uniform(-0.5, 0.5, size=(n_hidden, n_in + 1))
    w_out = rng.uniform(-0.5, 0.5, size=(n_out, n_hidden + 1))
    if not bias:
        w_hidden[:, -1] = 0.0
        w_out[:, -1] = 0.0
    return Mlp(n_in, n_hidden, n_out, seed, w_hidden, w_out)


def forward(net: Mlp, x: np.ndarray) -> Activations:
    """Sigmoid forward pass: unit output = sigmoid(sum of weighted inputs)."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (net.n_in,):
        raise ValueError(f"input length {x.shape} does not match n_in={net.n_in}")
    if x.size and (x.min() < 0.0 or x.max() > 1.0):
        raise ValueError("input values must lie in [0, 1]")
    hidden = sigmoid(net.w_hidden[:, :-1] @ x + net.w_hidden[:, -1])
    output = sigmoid(net.w_out[:, :-1] @ hidden + net.w_out[:, -1])
    return Activations(input=x, hidden=hidden, output=output)


def save_model(net: Mlp, path: str | Path) -> None:
    """Write the versioned flat text format; weights round-trip exactly."""
    lines = [f"mlp v1 {net.n_in} {net.n_hidden} {net.n_out} {net.seed}"]
    for matrix in (net.w_hidden, net.w_out):
        for row in matrix:
            lines.append(" ".join(f"{v:.17g}" for v in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_model(path: str | Path) -> Mlp:
    """Read a model written by :func:`save_model`."""
    text = Path(path).read_text(encoding="utf-8")
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError(f"{path}: empty model file")
    header = lines[0].split()
    if len(header) != 6 or header[0] != "mlp" or header[1] != "v1":
        raise ValueError(f"{path}: bad model header {lines[0]!r}")
    n_in, n_hidden, n_out, seed = (int(v) for v in header[2:])
    expected = n_hidden + n_out
    if len(lines) - 1 != expected:
        raise ValueError(f"{path}: expected {expected} weight rows, found {len(lines) - 1}")
    rows = [np.array([float(v) for v in ln.split()], dtype=np.float64) for ln in lines[1:]]
    w_hidden = np.vstack(rows[:n_hidden])
    w_out = np.vstack(rows[n_hidden:])
    return Mlp(n_in, n_hidden, n_out, seed, w_hidden, w_out)
