"""Seeded synthetic glyph corpus.

Each of the 32 letters is drawn from a hand-designed stroke template
(polylines plus diacritic dots in unit coordinates, y pointing down).
Samples are produced by applying a small random affine jitter and an
occasional stroke gap, rendering onto a raster, then running the regular
thinning/normalization chain. Generation is fully seeded.
"""

from __future__ import annotations

import math

import numpy as np

from .dataset import Dataset, N_CLASSES, Sample
from .raster import BinaryImage
from .skeleton import normalize, thin

# Rendering close to the 30x30 target keeps resampling gentle, which is what
# lets jittered variants of a letter share most of their skeleton cells.
_CANVAS = 34
_MARGIN = 2
_SCALE = _CANVAS - 2 * _MARGIN - 1

Point = tuple[float, float]
Stroke = list[Point]


def _arc(cx: float, cy: float, rx: float, ry: float, start_deg: float, end_deg: float, steps: int = 10) -> Stroke:
    """Polyline along an ellipse arc, angles clockwise from the +x axis."""
    ts = np.linspace(math.radians(start_deg), math.radians(end_deg), steps)
    return [(cx + rx * math.cos(t), cy + ry * math.sin(t)) for t in ts]


def _loop(cx: float, cy: float, r: float, steps: int = 12) -> Stroke:
    return _arc(cx, cy, r, r, 0, 360, steps)


def _bowl(cx: float = 0.5, cy: float = 0.42, rx: float = 0.42, ry: float = 0.26) -> Stroke:
    # open-top cup from the right end, through the bottom, to the left end
    return _arc(cx, cy, rx, ry, 0, 180, 14)


def _template(strokes: list[Stroke], dots: list[Point] | None = None) -> dict:
    return {"strokes": strokes, "dots": dots or []}


def _letter_templates() -> list[dict]:
    t: list[dict] = [None] * N_CLASSES  # type: ignore[list-item]

    t[0] = _template([[(0.5, 0.08), (0.5, 0.92)]])  # alef: tall vertical stroke

    bowl = _bowl()
    t[1] = _template([bowl], [(0.5, 0.88)])                                # be: dot below
    t[2] = _template([bowl], [(0.38, 0.84), (0.5, 0.93), (0.62, 0.84)])    # pe: three below
    t[3] = _template([bowl], [(0.42, 0.2), (0.58, 0.2)])                   # te: two above
    t[4] = _template([bowl], [(0.38, 0.22), (0.5, 0.1), (0.62, 0.22)])     # se: three above

    jim_head: Stroke = [(0.78, 0.16), (0.38, 0.2), (0.6, 0.34)]
    jim_bowl = _arc(0.45, 0.52, 0.3, 0.26, -20, 200, 12)
    t[5] = _template([jim_head, jim_bowl], [(0.45, 0.58)])                               # jim
    t[6] = _template([jim_head, jim_bowl], [(0.36, 0.56), (0.46, 0.64), (0.56, 0.56)])   # che
    t[7] = _template([jim_head, jim_bowl])                                               # hejimi
    t[8] = _template([jim_head, jim_bowl], [(0.52, 0.02)])                               # khe

    dal: Stroke = [(0.52, 0.1), (0.7, 0.28), (0.64, 0.48), (0.4, 0.56), (0.24, 0.5)]
    t[9] = _template([dal])                       # dal
    t[10] = _template([dal], [(0.5, 0.0)])        # zal

    re: Stroke = [(0.62, 0.12), (0.68, 0.4), (0.55, 0.66), (0.34, 0.82), (0.16, 0.88)]
    t[11] = _template([re])                                            # re
    t[12] = _template([re], [(0.5, 0.02)])                             # ze
    t[13] = _template([re], [(0.4, 0.06), (0.5, 0.0), (0.6, 0.06)])    # zhe

    teeth: Stroke = [
        (0.96, 0.42), (0.86, 0.18), (0.76, 0.42), (0.66, 0.18), (0.56, 0.42), (0.46, 0.18), (0.4, 0.42),
    ]
    sin_tail = _arc(0.24, 0.52, 0.2, 0.26, 0, 190, 12)
    t[14] = _template([teeth, sin_tail])                                          # sin
    t[15] = _template([teeth, sin_tail], [(0.6, 0.04), (0.68, 0.0), (0.76, 0.04)])  # shin

    sad_loop = _arc(0.76, 0.36, 0.15, 0.1, 0, 360, 10)
    sad_tail = _arc(0.38, 0.5, 0.25, 0.24, -10, 190, 12)
    t[16] = _template([sad_loop, sad_tail])                   # sad
    t[17] = _template([sad_loop, sad_tail], [(0.78, 0.14)])   # zad

    ta_loop = _arc(0.68, 0.44, 0.16, 0.11, 0, 360, 10)
    ta_alef: Stroke = [(0.3, 0.06), (0.3, 0.56)]
    ta_base: Stroke = [(0.52, 0.52), (0.3, 0.56)]
    t[18] = _template([ta_loop, ta_alef, ta_base])                 # ta
    t[19] = _template([ta_loop, ta_alef, ta_base], [(0.62, 0.2)])  # za

    eyn_head = _arc(0.58, 0.2, 0.14, 0.1, -60, 190, 8)
    eyn_bowl = _arc(0.42, 0.56, 0.3, 0.24, -30, 195, 12)
    t[20] = _template([eyn_head, eyn_bowl])                  # eyn
    t[21] = _template([eyn_head, eyn_bowl], [(0.56, 0.0)])   # gheyn

    fe_loop = _loop(0.62, 0.26, 0.09, 10)
    fe_bowl = _arc(0.5, 0.42, 0.43, 0.2, 0, 180, 12)
    t[22] = _template([fe_loop, fe_bowl], [(0.62, 0.06)])                # fe
    qaf_bowl = _arc(0.5, 0.44, 0.4, 0.3, 0, 185, 12)
    t[23] = _template([fe_loop, qaf_bowl], [(0.54, 0.04), (0.7, 0.04)])  # qaf

    kaf_base: Stroke = [(0.84, 0.18), (0.8, 0.46), (0.58, 0.62), (0.3, 0.68), (0.1, 0.6)]
    t[24] = _template([kaf_base, [(0.9, 0.02), (0.52, 0.3)]])                            # kaf
    t[25] = _template([kaf_base, [(0.9, 0.02), (0.52, 0.3)], [(0.98, 0.1), (0.6, 0.38)]])  # gaf

    t[26] = _template([[(0.72, 0.06), (0.74, 0.5)], _arc(0.45, 0.56, 0.3, 0.22, 0, 190, 12)])  # lam

    mim_loop = _loop(0.62, 0.4, 0.11, 10)
    t[27] = _template([mim_loop, [(0.56, 0.48), (0.42, 0.62), (0.34, 0.92)]])  # mim

    nun_bowl = _arc(0.5, 0.4, 0.36, 0.32, -15, 195, 14)
    t[28] = _template([nun_bowl], [(0.5, 0.3)])  # nun: dot inside the cup

    vav_loop = _loop(0.6, 0.3, 0.1, 10)
    t[29] = _template([vav_loop, [(0.54, 0.38), (0.42, 0.6), (0.26, 0.84)]])  # vav

    t[30] = _template([_loop(0.5, 0.46, 0.22, 14)])  # he: round ring

    ye: Stroke = [(0.7, 0.16), (0.78, 0.42), (0.6, 0.64), (0.34, 0.68), (0.16, 0.56), (0.24, 0.4), (0.44, 0.38)]
    t[31] = _template([ye])  # ye

    return t


_TEMPLATES = _letter_templates()


def _affine(points: Stroke, rot: float, sx: float, sy: float, shear: float) -> Stroke:
    """Rotate/scale/shear around the template center (0.5, 0.5)."""
    c, s = math.cos(rot), math.sin(rot)
    out = []
    for x, y in points:
        px, py = x - 0.5, y - 0.5
        px, py = px + shear * py, py
        px, py = sx * px, sy * py
        out.append((0.5 + c * px - s * py, 0.5 + s * px + c * py))
    return out


def _stamp(canvas: np.ndarray, x: float, y: float, radius: int) -> None:
    cx = int(round(_MARGIN + x * _SCALE))
    cy = int(round(_MARGIN + y * _SCALE))
    r0 = max(cy - radius, 0)
    r1 = min(cy + radius + 1, canvas.shape[0])
    c0 = max(cx - radius, 0)
    c1 = min(cx + radius + 1, canvas.shape[1])
    if r0 < r1 and c0 < c1:
        canvas[r0:r1, c0:c1] = 1


def _draw_stroke(canvas: np.ndarray, stroke: Stroke, radius: int) -> None:
    if len(stroke) == 1:
        _stamp(canvas, *stroke[0], radius)
        return
    for (x0, y0), (x1, y1) in zip(stroke, stroke[1:]):
        steps = max(2, int(math.hypot(x1 - x0, y1 - y0) * _SCALE * 2))
        for t in np.linspace(0.0, 1.0, steps):
            _stamp(canvas, x0 + t * (x1 - x0), y0 + t * (y1 - y0), radius)


def _cut_gap(stroke: Stroke, rng: np.random.Generator) -> list[Stroke]:
    """Split one polyline in two with a short gap, simulating a pen skip."""
    if len(stroke) < 5:
        return [stroke]
    cut = int(rng.integers(2, len(stroke) - 2))
    return [stroke[:cut], stroke[cut + 1 :]]


def render_canvas(class_index: int, rng: np.random.Generator | None = None, jitter: bool = True) -> BinaryImage:
    """Raw rasterized letter before any preprocessing.

    With a generator, applies a small random jitter; the same generator
    state always yields the same raster.
    """
    tpl = _TEMPLATES[class_index]
    strokes = [list(s) for s in tpl["strokes"]]
    dots = list(tpl["dots"])
    if jitter and rng is not None:
        rot = math.radians(rng.uniform(-2.0, 2.0))
        sx = rng.uniform(0.96, 1.04)
        sy = rng.uniform(0.96, 1.04)
        shear = rng.uniform(-0.03, 0.03)
        strokes = [_affine(s, rot, sx, sy, shear) for s in strokes]
        dots = [_affine([d], rot, sx, sy, shear)[0] for d in dots]
        strokes = [
            [(x + rng.normal(0.0, 0.004), y + rng.normal(0.0, 0.004)) for x, y in s]
            for s in strokes
        ]
        if rng.random() < 0.15:
            pick = int(rng.integers(0, len(strokes)))
            strokes = strokes[:pick] + _cut_gap(strokes[pick], rng) + strokes[pick + 1 :]
    canvas = np.zeros((_CANVAS, _CANVAS), dtype=np.uint8)
    for stroke in strokes:
        _draw_stroke(canvas, stroke, radius=1)
    for dot in dots:
        _stamp(canvas, *dot, radius=1)
    return BinaryImage(canvas)


def render_glyph(class_index: int, rng: np.random.Generator | None = None, jitter: bool = True):
    """One letter taken through the regular preprocessing chain."""
    return normalize(thin(render_canvas(class_index, rng, jitter)))


def generate_corpus(per_class: int, seed: int) -> Dataset:
    """Seeded corpus of per_class samples for each of the 32 letters.

    The first sample of every class is the clean template; the rest are
    jittered variants. Identical seeds give identical corpora.
    """
    if per_class < 1:
        raise ValueError(f"per_class must be >= 1, got {per_class}")
    rng = np.random.default_rng(seed)
    samples = []
    for index in range(N_CLASSES):
        for k in range(per_class):
            glyph = render_glyph(index, rng, jitter=k > 0)
            samples.append(Sample(index, glyph, writer=f"synth{seed}", source="synthetic"))
    return Dataset(samples)
