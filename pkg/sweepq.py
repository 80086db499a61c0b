# sweepq.py
import logging
from collections import Counter
from typing import List, NamedTuple, Optional, Sequence, Tuple

from errors import QueryOffGrid
from kernel import CandidateGrid, SlabSet, TranslationSlab

logger = logging.getLogger(__name__)


class CoeffQuad(NamedTuple):
    A: int
    B: int
    C: int
    D: int

    def value(self, x, y):
        return self.A + self.B * x + self.C * y + self.D * x * y


ZERO_QUAD = CoeffQuad(0, 0, 0, 0)


class SlabTree:
    """Static perfect binary tree over the sorted x-candidates.

    Leaf i stands for X[i]; a slab [l, r) adds its weights to the canonical
    nodes covering leaves [index(l), index(r)). A point query sums the
    weights on the path from leaf to root.
    """

    def __init__(self, leaf_count: int, counters: Optional[Counter] = None):
        size = 1
        while size < max(leaf_count, 1):
            size *= 2
        self.size = size
        self.leaf_count = leaf_count
        self.a = [0] * (2 * size)
        self.b = [0] * (2 * size)
        self.c = [0] * (2 * size)
        self.d = [0] * (2 * size)
        self.max_touches = 0
        self.counters = counters if counters is not None else Counter()

    def add(self, lo: int, hi: int, A: int, B: int, C: int, D: int) -> int:
        """Add weights on leaves [lo, hi); returns the number of touched nodes."""
        touched = 0
        lo += self.size
        hi += self.size
        a, b, c, d = self.a, self.b, self.c, self.d
        while lo < hi:
            if lo & 1:
                a[lo] += A
                b[lo] += B
                c[lo] += C
                d[lo] += D
                lo += 1
                touched += 1
            if hi & 1:
                hi -= 1
                a[hi] += A
                b[hi] += B
                c[hi] += C
                d[hi] += D
                touched += 1
            lo >>= 1
            hi >>= 1
        self.counters["node_touches"] += touched
        self.counters["slab_inserts"] += 1
        if touched > self.max_touches:
            self.max_touches = touched
        return touched

    def point(self, i: int) -> CoeffQuad:
        node = i + self.size
        A = B = C = D = 0
        steps = 0
        while node:
            A += self.a[node]
            B += self.b[node]
            C += self.c[node]
            D += self.d[node]
            node >>= 1
            steps += 1
        self.counters["query_steps"] += steps
        self.counters["queries"] += 1
        return CoeffQuad(A, B, C, D)


class SlabSweep:
    """Horizontal sweep over a slab set, advanced monotonically in y.

    After advance_to(y) the tree holds every slab with b <= y, so query(x)
    returns the coefficients of the overlap function at (x, y).
    """

    def __init__(self, slabs: SlabSet, grid: CandidateGrid, counters: Optional[Counter] = None):
        self.grid = grid
        self.counters = counters if counters is not None else Counter()
        self.tree = SlabTree(len(grid.X), self.counters)
        self.pending: List[TranslationSlab] = sorted(slabs.slabs, key=lambda s: s.b)
        self.cursor = 0
        self.position: Optional[int] = None

    def advance_to(self, y: int) -> None:
        if self.position is not None and y < self.position:
            raise ValueError(f"sweep cannot move back from {self.position} to {y}")
        x_index = self.grid.x_index
        pending = self.pending
        while self.cursor < len(pending) and pending[self.cursor].b <= y:
            slab = pending[self.cursor]
            self.tree.add(x_index[slab.l], x_index[slab.r], slab.A, slab.B, slab.C, slab.D)
            self.cursor += 1
        self.position = y

    def query(self, x: int) -> CoeffQuad:
        i = self.grid.x_index.get(x)
        if i is None:
            raise QueryOffGrid(f"x = {x} is not a candidate x-coordinate")
        return self.tree.point(i)


def batch_query(
    slabs: SlabSet,
    grid: CandidateGrid,
    queries: Sequence[Tuple[int, int]],
    counters: Optional[Counter] = None,
) -> List[CoeffQuad]:
    """Answer coefficient queries at grid points, in input order."""
    for x, y in queries:
        if x not in grid.x_index:
            raise QueryOffGrid(f"x = {x} is not a candidate x-coordinate")
        if y not in grid.y_index:
            raise QueryOffGrid(f"y = {y} is not a candidate y-coordinate")

    sweep = SlabSweep(slabs, grid, counters)
    order = sorted(range(len(queries)), key=lambda i: queries[i][1])
    answers: List[CoeffQuad] = [ZERO_QUAD] * len(queries)
    for i in order:
        x, y = queries[i]
        sweep.advance_to(y)
        answers[i] = sweep.query(x)
    logger.debug("answered %d queries over %d slabs", len(queries), slabs.count)
    return answers


def direct_query(slabs: SlabSet, q: Tuple[int, int]) -> CoeffQuad:
    """Sum of the weights of every slab containing q, by a full scan."""
    x, y = q
    A = B = C = D = 0
    for slab in slabs.slabs:
        if slab.l <= x < slab.r and y >= slab.b:
            A += slab.A
            B += slab.B
            C += slab.C
            D += slab.D
    return CoeffQuad(A, B, C, D)
