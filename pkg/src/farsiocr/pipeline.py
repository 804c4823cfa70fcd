"""End-to-end recognition: raw image -> smooth -> binarize -> thin ->
normalize -> (optional pool) -> classify."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import Label, decode_output
from .mlp import Mlp, forward
from .raster import BinaryImage, GrayImage, binarize, gaussian_smooth
from .skeleton import Glyph, normalize, pool, thin


@dataclass(frozen=True)
class PipelineConfig:
    """Recognition wiring: the model, the threshold rule, and the input size.

    ``threshold=None`` selects Otsu for grayscale inputs; binary inputs skip
    smoothing and thresholding entirely. ``use_pool`` must agree with the
    model: pooled glyphs feed 100 inputs, raw glyphs 900.
    """

    model: Mlp
    threshold: int | None = None
    use_pool: bool = False

    def __post_init__(self):
        expected = 100 if self.use_pool else 900
        if self.model.n_in != expected:
            raise ValueError(
                f"model takes {self.model.n_in} inputs but use_pool={self.use_pool} needs {expected}"
            )

    @classmethod
    def for_model(cls, model: Mlp, threshold: int | None = None) -> "PipelineConfig":
        """Infer pooling from the model's input size."""
        return cls(model=model, threshold=threshold, use_pool=model.n_in == 100)


@dataclass(frozen=True)
class Recognition:
    """Decoded label, the raw output activations, and the glyph the net saw."""

    label: Label
    outputs: np.ndarray
    glyph: Glyph


def recognize(img: GrayImage | BinaryImage, cfg: PipelineConfig) -> Recognition:
    """Run the full stage chain on one image.

    Grayscale inputs are smoothed and thresholded first; binary inputs (for
    example canvas grids, which are born binary) go straight to thinning.
    Raises EmptyGlyphError when no ink survives binarization.
    """
    if isinstance(img, GrayImage):
        img = binarize(gaussian_smooth(img), cfg.threshold)
    glyph = normalize(thin(img))
    if cfg.use_pool:
        glyph = pool(glyph)
    acts = forward(cfg.model, glyph.bits.ravel().astype(np.float64))
    return Recognition(label=decode_output(acts.output), outputs=acts.output, glyph=glyph)
