"""Labeled glyph storage: the 32-letter alphabet, 5-bit output coding,
text persistence, and train/test splitting."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, NamedTuple

import numpy as np

from .skeleton import GLYPH_SIDE, Glyph, pool

# The 32 letters of the Farsi alphabet in conventional order, alef first.
ALPHABET: tuple[tuple[str, str], ...] = (
    ("ا", "alef"),
    ("ب", "be"),
    ("پ", "pe"),
    ("ت", "te"),
    ("ث", "se"),
    ("ج", "jim"),
    ("چ", "che"),
    ("ح", "hejimi"),
    ("خ", "khe"),
    ("د", "dal"),
    ("ذ", "zal"),
    ("ر", "re"),
    ("ز", "ze"),
    ("ژ", "zhe"),
    ("س", "sin"),
    ("ش", "shin"),
    ("ص", "sad"),
    ("ض", "zad"),
    ("ط", "ta"),
    ("ظ", "za"),
    ("ع", "eyn"),
    ("غ", "gheyn"),
    ("ف", "fe"),
    ("ق", "qaf"),
    ("ک", "kaf"),
    ("گ", "gaf"),
    ("ل", "lam"),
    ("م", "mim"),
    ("ن", "nun"),
    ("و", "vav"),
    ("ه", "he"),
    ("ی", "ye"),
)

N_CLASSES = len(ALPHABET)
CODE_BITS = 5  # 2**5 = 32 covers the alphabet exactly

VALID_SOURCES = ("scan", "canvas", "synthetic")


class LabelRangeError(ValueError):
    """Label index outside [0, 31]."""


class DatasetParseError(ValueError):
    """Malformed dataset record; the message names the offending line."""


class Label(NamedTuple):
    index: int
    display: str


def label_for(index: int) -> Label:
    """The Label for an alphabet index in [0, 31]."""
    if not 0 <= index < N_CLASSES:
        raise LabelRangeError(f"label index {index} outside [0, {N_CLASSES - 1}]")
    return Label(index, ALPHABET[index][0])


@dataclass(frozen=True, eq=False)
class Sample:
    """One labeled glyph; the glyph is always the normalized 30x30 form."""

    label_index: int
    glyph: Glyph
    writer: str = ""
    source: str = "synthetic"

    def __post_init__(self):
        if not 0 <= self.label_index < N_CLASSES:
            raise LabelRangeError(f"label index {self.label_index} outside [0, {N_CLASSES - 1}]")
        if self.glyph.side != GLYPH_SIDE:
            raise ValueError(f"sample glyphs must have side {GLYPH_SIDE}, got {self.glyph.side}")
        if self.glyph.is_empty():
            raise ValueError("sample glyph has no ink")
        if self.source not in VALID_SOURCES:
            raise ValueError(f"source must be one of {VALID_SOURCES}, got {self.source!r}")
        if "|" in self.writer or "\n" in self.writer:
            raise ValueError("writer id must not contain '|' or newlines")

    @property
    def label(self) -> Label:
        return label_for(self.label_index)


@dataclass
class Dataset:
    """Ordered collection of samples; order survives save/load round-trips."""

    samples: list[Sample] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.samples)

    def __iter__(self) -> Iterator[Sample]:
        return iter(self.samples)

    def __getitem__(self, i: int) -> Sample:
        return self.samples[i]


def encode_label(label: int | Label) -> np.ndarray:
    """5-bit big-endian binary code of the label index, bits as 0.0/1.0."""
    index = label.index if isinstance(label, Label) else label
    if not 0 <= index < N_CLASSES:
        raise LabelRangeError(f"label index {index} outside [0, {N_CLASSES - 1}]")
    return np.array([(index >> (CODE_BITS - 1 - b)) & 1 for b in range(CODE_BITS)], dtype=np.float64)


_ALL_CODES = None


def _code_table() -> np.ndarray:
    global _ALL_CODES
    if _ALL_CODES is None:
        _ALL_CODES = np.vstack([encode_label(i) for i in range(N_CLASSES)])
    return _ALL_CODES


def decode_output(outputs: np.ndarray) -> Label:
    """Label whose code vector is nearest (Euclidean) to the outputs.

    Ties break toward the lowest index. Values outside (0, 1) are accepted;
    only the vector length is validated.
    """
    outputs = np.asarray(outputs, dtype=np.float64)
    if outputs.shape != (CODE_BITS,):
        raise ValueError(f"output vector must have length {CODE_BITS}, got shape {outputs.shape}")
    dist = ((_code_table() - outputs) ** 2).sum(axis=1)
    return label_for(int(np.argmin(dist)))


def save(ds: Dataset, path: str | Path) -> None:
    """Write one `label|writer|source|bits` record per line, UTF-8 text."""
    lines = []
    for s in ds:
        bits = "".join("1" if v else "0" for v in s.glyph.bits.ravel())
        lines.append(f"{s.label_index}|{s.writer}|{s.source}|{bits}")
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")


def parse_record(line: str, lineno: int) -> Sample:
    """Parse one dataset record; errors name the 1-based line number."""
    parts = line.split("|")
    if len(parts) != 4:
        raise DatasetParseError(f"line {lineno}: expected 4 |-separated fields, got {len(parts)}")
    idx_text, writer, source, bits = parts
    try:
        index = int(idx_text)
    except ValueError:
        raise DatasetParseError(f"line {lineno}: label index {idx_text!r} is not an integer") from None
    if not 0 <= index < N_CLASSES:
        raise LabelRangeError(f"line {lineno}: label index {index} outside [0, {N_CLASSES - 1}]")
    if len(bits) != GLYPH_SIDE * GLYPH_SIDE or set(bits) - {"0", "1"}:
        raise DatasetParseError(
            f"line {lineno}: glyph field must be {GLYPH_SIDE * GLYPH_SIDE} characters of 0/1"
        )
    grid = np.frombuffer(bits.encode("ascii"), dtype=np.uint8) - ord("0")
    try:
        glyph = Glyph(grid.reshape(GLYPH_SIDE, GLYPH_SIDE))
        return Sample(index, glyph, writer=writer, source=source)
    except LabelRangeError:
        raise
    except ValueError as e:
        raise DatasetParseError(f"line {lineno}: {e}") from None


def load(path: str | Path) -> Dataset:
    """Read a dataset file written by :func:`save`."""
    samples = []
    text = Path(path).read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        samples.append(parse_record(line, lineno))
    return Dataset(samples)


def split(ds: Dataset, fraction: float, seed: int) -> tuple[Dataset, Dataset]:
    """Seeded shuffled partition; the first round(fraction*n) go to train.

    Rounding is half-up, so fraction 0.5 over 3 samples yields sizes 2 and 1.
    """
    if not 0.0 < fraction < 1.0:
        raise ValueError(f"fraction must lie strictly between 0 and 1, got {fraction}")
    if len(ds) == 0:
        raise ValueError("cannot split an empty dataset")
    order = np.random.default_rng(seed).permutation(len(ds))
    k = int(np.floor(fraction * len(ds) + 0.5))
    train = Dataset([ds[i] for i in order[:k]])
    test = Dataset([ds[i] for i in order[k:]])
    return train, test


def as_patterns(ds: Dataset, pooled: bool = False) -> list[tuple[np.ndarray, np.ndarray]]:
    """Training pairs (input vector, coded target) for every sample.

    With ``pooled=True`` glyphs are OR-pooled to 10x10 first (100 inputs),
    otherwise the raw 30x30 bits are used (900 inputs).
    """
    patterns = []
    for s in ds:
        g = pool(s.glyph) if pooled else s.glyph
        x = g.bits.ravel().astype(np.float64)
        patterns.append((x, encode_label(s.label_index)))
    return patterns
