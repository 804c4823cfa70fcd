"""Grayscale rasters, noise smoothing, binarization, and PNM import.

The front of the preprocessing chain: scanned or synthetic glyph images come
in as 8-bit grayscale, get smoothed with a small binomial kernel, and are
thresholded into ink/background bitmaps (ink = dark = 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

# 3x3 binomial approximation of a Gaussian, integer weights summing to 16.
_SMOOTH_KERNEL = np.array([[1, 2, 1], [2, 4, 2], [1, 2, 1]], dtype=np.int64)


@dataclass(frozen=True, eq=False)
class GrayImage:
    """8-bit grayscale raster; ``pixels`` is row-major with shape (height, width)."""

    pixels: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.pixels)
        if p.ndim != 2 or p.shape[0] < 1 or p.shape[1] < 1:
            raise ValueError(f"grayscale image must be 2-D and non-empty, got shape {p.shape}")
        if p.dtype != np.uint8:
            if np.any((p < 0) | (p > 255)):
                raise ValueError("intensities must lie in [0, 255]")
            p = p.astype(np.uint8)
        object.__setattr__(self, "pixels", p)

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]


@dataclass(frozen=True, eq=False)
class BinaryImage:
    """Ink bitmap; ``bits`` is row-major {0,1} with shape (height, width), 1 = ink."""

    bits: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.bits)
        if b.ndim != 2 or b.shape[0] < 1 or b.shape[1] < 1:
            raise ValueError(f"binary image must be 2-D and non-empty, got shape {b.shape}")
        if np.any((b != 0) & (b != 1)):
            raise ValueError("binary image values must be 0 or 1")
        object.__setattr__(self, "bits", b.astype(np.uint8))

    @property
    def height(self) -> int:
        return self.bits.shape[0]

    @property
    def width(self) -> int:
        return self.bits.shape[1]


def gaussian_smooth(img: GrayImage) -> GrayImage:
    """Smooth with the 3x3 binomial kernel [1 2 1; 2 4 2; 1 2 1]/16.

    Borders are handled by edge replication; each output value is rounded
    half-up to the nearest integer. A constant image is returned unchanged.
    """
    p = img.pixels.astype(np.int64)
    padded = np.pad(p, 1, mode="edge")
    h, w = p.shape
    acc = np.zeros((h, w), dtype=np.int64)
    for dr in range(3):
        for dc in range(3):
            acc += _SMOOTH_KERNEL[dr, dc] * padded[dr : dr + h, dc : dc + w]
    out = (acc + 8) // 16
    return GrayImage(np.clip(out, 0, 255).astype(np.uint8))


def otsu_threshold(img: GrayImage) -> int:
    """Threshold maximizing between-class variance over the 256-bin histogram.

    Classes are split as intensity < t (ink) versus >= t (background); ties
    are broken toward the lowest threshold.
    """
    counts = np.bincount(img.pixels.ravel(), minlength=256).astype(np.float64)
    total = counts.sum()
    moments = counts * np.arange(256, dtype=np.float64)
    # w0[t], s0[t]: pixel count and intensity sum of the class {intensity < t}
    w0 = np.concatenate(([0.0], np.cumsum(counts)[:-1]))
    s0 = np.concatenate(([0.0], np.cumsum(moments)[:-1]))
    w1 = total - w0
    s1 = moments.sum() - s0
    valid = (w0 > 0) & (w1 > 0)
    mu0 = np.divide(s0, w0, out=np.zeros(256), where=valid)
    mu1 = np.divide(s1, w1, out=np.zeros(256), where=valid)
    between = np.where(valid, w0 * w1 * (mu0 - mu1) ** 2, 0.0)
    return int(np.argmax(between))


def binarize(img: GrayImage, threshold: int | None = None) -> BinaryImage:
    """Threshold to an ink bitmap: bit = 1 where intensity < threshold.

    With ``threshold=None`` the threshold is chosen by Otsu's method;
    otherwise the fixed value (in [0, 255]) is used.
    """
    if threshold is None:
        threshold = otsu_threshold(img)
    elif not 0 <= threshold <= 255:
        raise ValueError(f"fixed threshold must lie in [0, 255], got {threshold}")
    return BinaryImage((img.pixels < threshold).astype(np.uint8))


def binary_from_rows(rows: list[str]) -> BinaryImage:
    """Parse a glyph text grid: equal-length lines of '0'/'1' characters."""
    if not rows:
        raise ValueError("empty glyph text")
    width = len(rows[0])
    bits = np.zeros((len(rows), width), dtype=np.uint8)
    for r, line in enumerate(rows):
        if len(line) != width:
            raise ValueError(f"glyph text row {r} has length {len(line)}, expected {width}")
        if set(line) - {"0", "1"}:
            raise ValueError(f"glyph text row {r} contains characters outside 0/1")
        bits[r] = [1 if ch == "1" else 0 for ch in line]
    return BinaryImage(bits)


def _pnm_tokens(data: bytes):
    """Yield whitespace-separated PNM header/ascii tokens, skipping # comments."""
    i = 0
    n = len(data)
    while i < n:
        c = data[i : i + 1]
        if c in b" \t\r\n":
            i += 1
        elif c == b"#":
            while i < n and data[i : i + 1] not in b"\r\n":
                i += 1
        else:
            j = i
            while j < n and data[j : j + 1] not in b" \t\r\n":
                j += 1
            yield i, data[i:j]
            i = j


def read_pnm(path: str | Path) -> GrayImage | BinaryImage:
    """Read a plain PBM (P1) or plain/raw PGM (P2/P5) file.

    P1 maps black (1) to ink; PGM maxval must fit 8 bits.
    """
    data = Path(path).read_bytes()
    magic = data[:2]
    if magic == b"P1":
        return _read_p1(data)
    if magic == b"P2":
        return _read_p2(data)
    if magic == b"P5":
        return _read_p5(data)
    raise ValueError(f"unsupported PNM magic {magic!r} (expected P1, P2, or P5)")


def _read_p1(data: bytes) -> BinaryImage:
    # P1 bits need no separating whitespace, so scan characters after the dims
    toks = _pnm_tokens(data)
    next(toks)
    try:
        _, w_tok = next(toks)
        pos, h_tok = next(toks)
    except StopIteration:
        raise ValueError("truncated PBM header") from None
    width, height = int(w_tok), int(h_tok)
    body = data[pos + len(h_tok) :]
    bits = []
    in_comment = False
    for ch in body.decode("ascii", errors="replace"):
        if in_comment:
            in_comment = ch not in "\r\n"
        elif ch == "#":
            in_comment = True
        elif ch in "01":
            bits.append(int(ch))
        elif not ch.isspace():
            raise ValueError(f"unexpected character {ch!r} in PBM data")
    if len(bits) < width * height:
        raise ValueError(f"PBM data too short: {len(bits)} bits for {width}x{height}")
    arr = np.array(bits[: width * height], dtype=np.uint8).reshape(height, width)
    return BinaryImage(arr)


def _read_p2(data: bytes) -> GrayImage:
    toks = _pnm_tokens(data)
    values = [tok for _, tok in toks]
    if len(values) < 4:
        raise ValueError("truncated PGM header")
    width, height, maxval = int(values[1]), int(values[2]), int(values[3])
    if not 0 < maxval <= 255:
        raise ValueError(f"PGM maxval {maxval} outside 8-bit range")
    pixels = [int(v) for v in values[4:]]
    if len(pixels) < width * height:
        raise ValueError(f"PGM data too short: {len(pixels)} values for {width}x{height}")
    arr = np.array(pixels[: width * height], dtype=np.int64).reshape(height, width)
    if arr.max(initial=0) > maxval:
        raise ValueError("PGM sample exceeds declared maxval")
    return GrayImage(_rescale_gray(arr, maxval))


def _read_p5(data: bytes) -> GrayImage:
    toks = _pnm_tokens(data)
    next(toks)
    try:
        _, w_tok = next(toks)
        _, h_tok = next(toks)
        pos, max_tok = next(toks)
    except StopIteration:
        raise ValueError("truncated PGM header") from None
    width, height, maxval = int(w_tok), int(h_tok), int(max_tok)
    if not 0 < maxval <= 255:
        raise ValueError(f"PGM maxval {maxval} outside 8-bit range")
    start = pos + len(max_tok) + 1  # single whitespace byte after maxval
    raw = data[start : start + width * height]
    if len(raw) < width * height:
        raise ValueError(f"PGM data too short: {len(raw)} bytes for {width}x{height}")
    arr = np.frombuffer(raw, dtype=np.uint8).astype(np.int64).reshape(height, width)
    return GrayImage(_rescale_gray(arr, maxval))


def _rescale_gray(arr: np.ndarray, maxval: int) -> np.ndarray:
    if maxval == 255:
        return arr.astype(np.uint8)
    return ((arr * 255 + maxval // 2) // maxval).astype(np.uint8)
