"""Offline handwritten Farsi character recognition.

Preprocessing (smooth, binarize, thin, normalize, pool), a one-hidden-layer
sigmoid perceptron trained by online backpropagation with momentum, dataset
tooling, a hidden-unit sweep, a CLI, and an HTTP service with a browser
drawing pad.
"""

from .dataset import (
    ALPHABET,
    Dataset,
    Label,
    Sample,
    decode_output,
    encode_label,
    label_for,
    split,
)
from .mlp import Activations, Mlp, forward, init, load_model, save_model
from .pipeline import PipelineConfig, Recognition, recognize
from .raster import BinaryImage, GrayImage, binarize, gaussian_smooth, otsu_threshold, read_pnm
from .skeleton import EmptyGlyphError, Glyph, normalize, pool, thin
from .synth import generate_corpus
from .train import TrainConfig, TrainReport, evaluate, pattern_error, train, train_dataset

__version__ = "0.1.0"

__all__ = [
    "ALPHABET",
    "Activations",
    "BinaryImage",
    "Dataset",
    "EmptyGlyphError",
    "Glyph",
    "GrayImage",
    "Label",
    "Mlp",
    "PipelineConfig",
    "Recognition",
    "Sample",
    "TrainConfig",
    "TrainReport",
    "binarize",
    "decode_output",
    "encode_label",
    "evaluate",
    "forward",
    "gaussian_smooth",
    "generate_corpus",
    "init",
    "label_for",
    "load_model",
    "normalize",
    "otsu_threshold",
    "pattern_error",
    "pool",
    "read_pnm",
    "recognize",
    "save_model",
    "split",
    "thin",
    "train",
    "train_dataset",
]
