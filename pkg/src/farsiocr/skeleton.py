"""Stroke thinning, 30x30 normalization, and 10x10 block compression.

Binarized glyphs are reduced to one-pixel-wide skeletons, cropped to their
bounding box, rescaled with a single aspect-preserving factor, and anchored
at the top-left corner of a 30x30 grid. An optional 3x3 OR-pool compresses
the grid to 10x10 for the smaller classifier input.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .raster import BinaryImage

GLYPH_SIDE = 30
POOLED_SIDE = 10


class EmptyGlyphError(ValueError):
    """Raised when an operation needs foreground pixels and finds none."""


@dataclass(frozen=True, eq=False)
class Glyph:
    """Normalized square ink grid, side 30 (or 10 after pooling).

    A non-empty 30x30 glyph always carries ink in row 0: normalization
    anchors the glyph at the top-left corner. Pooled 10x10 glyphs keep the
    geometry of their source and are not re-anchored.
    """

    bits: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.bits)
        if b.ndim != 2 or b.shape[0] != b.shape[1]:
            raise ValueError(f"glyph must be square, got shape {b.shape}")
        if b.shape[0] not in (GLYPH_SIDE, POOLED_SIDE):
            raise ValueError(f"glyph side must be {GLYPH_SIDE} or {POOLED_SIDE}, got {b.shape[0]}")
        if np.any((b != 0) & (b != 1)):
            raise ValueError("glyph values must be 0 or 1")
        b = b.astype(np.uint8)
        if b.shape[0] == GLYPH_SIDE and b.any() and not b[0].any():
            raise ValueError("non-empty 30x30 glyph must have ink in row 0")
        object.__setattr__(self, "bits", b)

    @property
    def side(self) -> int:
        return self.bits.shape[0]

    def is_empty(self) -> bool:
        return not self.bits.any()


def glyph_rows(g: Glyph) -> list[str]:
    """Render a glyph as its text form: side lines of side '0'/'1' characters."""
    return ["".join("1" if v else "0" for v in row) for row in g.bits]


def glyph_from_rows(rows: list[str]) -> Glyph:
    """Parse the glyph text form back into a Glyph."""
    if len(rows) not in (GLYPH_SIDE, POOLED_SIDE):
        raise ValueError(f"glyph text must have {GLYPH_SIDE} or {POOLED_SIDE} rows, got {len(rows)}")
    side = len(rows)
    bits = np.zeros((side, side), dtype=np.uint8)
    for r, line in enumerate(rows):
        if len(line) != side or set(line) - {"0", "1"}:
            raise ValueError(f"glyph text row {r} must be {side} characters of 0/1")
        bits[r] = [1 if ch == "1" else 0 for ch in line]
    return Glyph(bits)


def _neighbor_views(padded: np.ndarray):
    """The eight neighbor planes P2..P9 (clockwise from north) of every pixel."""
    return (
        padded[:-2, 1:-1],  # P2 north
        padded[:-2, 2:],    # P3 north-east
        padded[1:-1, 2:],   # P4 east
        padded[2:, 2:],     # P5 south-east
        padded[2:, 1:-1],   # P6 south
        padded[2:, :-2],    # P7 south-west
        padded[1:-1, :-2],  # P8 west
        padded[:-2, :-2],   # P9 north-west
    )


def thin(img: BinaryImage) -> BinaryImage:
    """Zhang-Suen two-subiteration thinning, iterated to a fixed point.

    Pixels outside the image count as background, so strokes touching the
    border are thinned like any others. Output ink is always a subset of
    input ink.
    """
    a = img.bits.copy()
    changed = True
    while changed:
        changed = False
        for step in (0, 1):
            padded = np.pad(a, 1)
            n = _neighbor_views(padded)
            b = np.zeros(a.shape, dtype=np.int32)
            for plane in n:
                b += plane
            ring = n + (n[0],)
            transitions = np.zeros(a.shape, dtype=np.int32)
            for k in range(8):
                transitions += ((ring[k] == 0) & (ring[k + 1] == 1)).astype(np.int32)
            p2, p4, p6, p8 = n[0], n[2], n[4], n[6]
            if step == 0:
                corner = (p2 * p4 * p6 == 0) & (p4 * p6 * p8 == 0)
            else:
                corner = (p2 * p4 * p8 == 0) & (p2 * p6 * p8 == 0)
            kill = (a == 1) & (b >= 2) & (b <= 6) & (transitions == 1) & corner
            if kill.any():
                a[kill] = 0
                changed = True
    return BinaryImage(a)


def normalize(img: BinaryImage) -> Glyph:
    """Fit the ink into a 30x30 grid anchored at the top-left corner.

    The foreground bounding box is resampled (nearest neighbor) with the
    single factor 30/max(box_height, box_width), then shifted so the result
    touches row 0 and column 0. Index arithmetic is integral, so equal
    inputs always produce bit-identical glyphs.
    """
    bits = img.bits
    row_any = bits.any(axis=1)
    col_any = bits.any(axis=0)
    if not row_any.any():
        raise EmptyGlyphError("image has no foreground pixels")
    rows = np.flatnonzero(row_any)
    cols = np.flatnonzero(col_any)
    box = bits[rows[0] : rows[-1] + 1, cols[0] : cols[-1] + 1]
    h, w = box.shape
    m = max(h, w)
    out_h = (h * GLYPH_SIDE + m - 1) // m
    out_w = (w * GLYPH_SIDE + m - 1) // m
    src_r = (np.arange(out_h) * m) // GLYPH_SIDE
    src_c = (np.arange(out_w) * m) // GLYPH_SIDE
    sampled = box[np.ix_(src_r, src_c)]
    # downscaling can skip the extreme rows/columns; re-anchor literally
    srows = np.flatnonzero(sampled.any(axis=1))
    scols = np.flatnonzero(sampled.any(axis=0))
    if srows.size == 0:
        raise EmptyGlyphError("foreground vanished during resampling")
    sub = sampled[srows[0] : srows[-1] + 1, scols[0] : scols[-1] + 1]
    out = np.zeros((GLYPH_SIDE, GLYPH_SIDE), dtype=np.uint8)
    out[: sub.shape[0], : sub.shape[1]] = sub
    return Glyph(out)


def pool(g: Glyph) -> Glyph:
    """Compress 30x30 to 10x10: each output bit is the OR of a 3x3 block."""
    if g.side != GLYPH_SIDE:
        raise ValueError(f"pooling expects a {GLYPH_SIDE}x{GLYPH_SIDE} glyph, got side {g.side}")
    blocks = g.bits.reshape(POOLED_SIDE, 3, POOLED_SIDE, 3)
    return Glyph(blocks.any(axis=(1, 3)).astype(np.uint8))
