# kernel.py
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, NamedTuple, Tuple

from core import OrthoPolygon, Rect, decompose_rectangles

logger = logging.getLogger(__name__)


class BilinearPiece(NamedTuple):
    """Half-open domain [l, r) x [b, t) carrying A + Bx + Cy + Dxy."""

    l: int
    r: int
    b: int
    t: int
    A: int
    B: int
    C: int
    D: int


class TranslationSlab(NamedTuple):
    """Half-open region [l, r) x [b, inf) carrying A + Bx + Cy + Dxy."""

    l: int
    r: int
    b: int
    A: int
    B: int
    C: int
    D: int


def interval_convolution(lp: int, rp: int, lq: int, rq: int) -> List[Tuple[int, int, int, int]]:
    """Length of [lp, rp] and [lq + s, rq + s] as a function of the shift s.

    Returns up to three (lo, hi, const, slope) pieces, each valid on [lo, hi)
    with value const + slope * s. Outside their union the length is 0. The
    flat middle piece disappears when both intervals have the same length.
    """
    start = lp - rq
    rise_end = min(lp - lq, rp - rq)
    fall_start = max(lp - lq, rp - rq)
    end = rp - lq
    flat = min(rp - lp, rq - lq)
    pieces = [(start, rise_end, rq - lp, 1)]
    if rise_end < fall_start:
        pieces.append((rise_end, fall_start, flat, 0))
    pieces.append((fall_start, end, rp - lq, -1))
    return pieces


def rect_pair_pieces(p: Rect, q: Rect) -> List[BilinearPiece]:
    """Overlap area of p and q + (x, y) as at most 9 disjoint bilinear pieces."""
    pieces = []
    for xl, xr, a0, a1 in interval_convolution(p.l, p.r, q.l, q.r):
        for yb, yt, c0, c1 in interval_convolution(p.b, p.t, q.b, q.t):
            pieces.append(BilinearPiece(xl, xr, yb, yt, a0 * c0, a1 * c0, a0 * c1, a1 * c1))
    return pieces


def rect_pair_slabs(p: Rect, q: Rect) -> List[TranslationSlab]:
    """Each piece [l, r) x [b, t) becomes +[l, r) x [b, inf) and -[l, r) x [t, inf)."""
    slabs = []
    for piece in rect_pair_pieces(p, q):
        slabs.append(TranslationSlab(piece.l, piece.r, piece.b, piece.A, piece.B, piece.C, piece.D))
        slabs.append(TranslationSlab(piece.l, piece.r, piece.t, -piece.A, -piece.B, -piece.C, -piece.D))
    return slabs


def piece_value(piece, tau):
    x, y = tau
    if piece.l <= x < piece.r and piece.b <= y < piece.t:
        return piece.A + piece.B * x + piece.C * y + piece.D * x * y
    return 0


def slab_value(slab: TranslationSlab, tau):
    x, y = tau
    if slab.l <= x < slab.r and y >= slab.b:
        return slab.A + slab.B * x + slab.C * y + slab.D * x * y
    return 0


@dataclass(frozen=True)
class SlabSet:
    slabs: Tuple[TranslationSlab, ...]
    rects_p: int
    rects_q: int

    @property
    def count(self) -> int:
        return len(self.slabs)

    def value_at(self, tau):
        return sum(slab_value(slab, tau) for slab in self.slabs)

    def associated_counts(self) -> Counter:
        """Number of slabs whose lower boundary is b, for every b."""
        return Counter(slab.b for slab in self.slabs)


def build_translation_slabs(P, Q) -> SlabSet:
    rects_p = decompose_rectangles(P)
    rects_q = decompose_rectangles(Q)
    slabs: List[TranslationSlab] = []
    for p in rects_p:
        for q in rects_q:
            slabs.extend(rect_pair_slabs(p, q))
    logger.debug(
        "built %d slabs from %d x %d rectangles", len(slabs), len(rects_p), len(rects_q)
    )
    return SlabSet(slabs=tuple(slabs), rects_p=len(rects_p), rects_q=len(rects_q))


@dataclass(frozen=True)
class CandidateGrid:
    X: Tuple[int, ...]
    Y: Tuple[int, ...]
    x_index: Dict[int, int] = field(init=False, repr=False, compare=False)
    y_index: Dict[int, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "x_index", {x: i for i, x in enumerate(self.X)})
        object.__setattr__(self, "y_index", {y: j for j, y in enumerate(self.Y)})

    @property
    def size(self) -> int:
        return len(self.X) * len(self.Y)


def candidate_grid(P: OrthoPolygon, Q: OrthoPolygon) -> CandidateGrid:
    X = sorted({px - qx for px in P.xs() for qx in Q.xs()})
    Y = sorted({py - qy for py in P.ys() for qy in Q.ys()})
    return CandidateGrid(X=tuple(X), Y=tuple(Y))
