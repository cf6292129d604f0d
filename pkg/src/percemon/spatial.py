"""Exact region algebra over finite unions of axis-aligned rectangles.

Regions live inside a bounded universe (the image rectangle). Every
operation keeps the representation as pairwise interior-disjoint,
non-degenerate rectangles, so area is a plain sum and emptiness means "no
rectangles". Regions are compared by area (Lebesgue measure): shared edges
and zero-width slivers count as empty. Coordinates are ordinary IEEE
doubles; the operations only ever take mins and maxes of input
coordinates, so no epsilon handling is needed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ContractViolation
from .trace import BoundingBox


@dataclass(frozen=True)
class Universe:
    """The bounded rectangle within which all regions are interpreted."""

    width: float
    height: float

    def __post_init__(self) -> None:
        if not (self.width > 0 and self.height > 0):
            raise ContractViolation(f"universe extent must be positive, got {self.width}x{self.height}")
        object.__setattr__(self, "width", float(self.width))
        object.__setattr__(self, "height", float(self.height))

    @property
    def box(self) -> BoundingBox:
        return BoundingBox(0.0, 0.0, self.width, self.height)

    @property
    def area(self) -> float:
        return self.width * self.height


@dataclass(frozen=True)
class Region:
    """A finite union of interior-disjoint rectangles inside a universe.

    Construct regions through the module functions; they maintain the
    disjointness invariant. Two regions with different rectangle
    decompositions may denote the same point set, so compare regions by
    area of their symmetric difference, not by equality.
    """

    universe: Universe
    rects: tuple[BoundingBox, ...] = ()


def _nondegenerate(box: BoundingBox) -> bool:
    return box.xmax > box.xmin and box.ymax > box.ymin


def _subtract_box(piece: BoundingBox, cutter: BoundingBox) -> list[BoundingBox]:
    """Split ``piece`` minus ``cutter`` into at most four disjoint rectangles."""
    ox1 = max(piece.xmin, cutter.xmin)
    oy1 = max(piece.ymin, cutter.ymin)
    ox2 = min(piece.xmax, cutter.xmax)
    oy2 = min(piece.ymax, cutter.ymax)
    if ox1 >= ox2 or oy1 >= oy2:
        # No overlap of positive area; edge contact does not cut anything.
        return [piece]
    out = []
    if piece.xmin < ox1:
        out.append(BoundingBox(piece.xmin, piece.ymin, ox1, piece.ymax))
    if ox2 < piece.xmax:
        out.append(BoundingBox(ox2, piece.ymin, piece.xmax, piece.ymax))
    if piece.ymin < oy1:
        out.append(BoundingBox(ox1, piece.ymin, ox2, oy1))
    if oy2 < piece.ymax:
        out.append(BoundingBox(ox1, oy2, ox2, piece.ymax))
    return out


def _subtract_all(pieces: list[BoundingBox], cutters: tuple[BoundingBox, ...]) -> list[BoundingBox]:
    for cutter in cutters:
        pieces = [part for piece in pieces for part in _subtract_box(piece, cutter)]
        if not pieces:
            break
    return pieces


def _same_universe(a: Region, b: Region) -> Universe:
    if a.universe != b.universe:
        raise ContractViolation(
            f"regions belong to different universes: {a.universe} vs {b.universe}"
        )
    return a.universe


def empty_region(universe: Universe) -> Region:
    return Region(universe, ())


def full_region(universe: Universe) -> Region:
    return Region(universe, (universe.box,))


def from_box(box: BoundingBox, universe: Universe) -> Region:
    """The region of a single box, clipped into the universe.

    A box that is degenerate after clipping yields the empty region.
    """
    clipped = box.clip(universe.width, universe.height)
    if not _nondegenerate(clipped):
        return empty_region(universe)
    return Region(universe, (clipped,))


def union(a: Region, b: Region) -> Region:
    """Point-set union, re-decomposed into disjoint rectangles."""
    u = _same_universe(a, b)
    rects = list(a.rects)
    for box in b.rects:
        rects.extend(_subtract_all([box], a.rects))
    return Region(u, tuple(rects))


def intersect(a: Region, b: Region) -> Region:
    """Point-set intersection (equal, by area, to the De Morgan double complement)."""
    u = _same_universe(a, b)
    rects = []
    for pa in a.rects:
        for pb in b.rects:
            x1 = max(pa.xmin, pb.xmin)
            y1 = max(pa.ymin, pb.ymin)
            x2 = min(pa.xmax, pb.xmax)
            y2 = min(pa.ymax, pb.ymax)
            if x1 < x2 and y1 < y2:
                rects.append(BoundingBox(x1, y1, x2, y2))
    return Region(u, tuple(rects))


def complement(a: Region) -> Region:
    """The universe minus the region, as a point set."""
    pieces = _subtract_all([a.universe.box], a.rects)
    return Region(a.universe, tuple(pieces))


def difference(a: Region, b: Region) -> Region:
    """Points of ``a`` not in ``b``; handy for symmetric-difference checks."""
    u = _same_universe(a, b)
    rects = []
    for piece in a.rects:
        rects.extend(_subtract_all([piece], b.rects))
    return Region(u, tuple(rects))


def area(a: Region) -> float:
    """Total area in square pixels (exact sum over disjoint rectangles)."""
    return sum(r.area for r in a.rects)


def is_empty(a: Region) -> bool:
    """True if the point set has zero area."""
    return not a.rects


def symmetric_difference_area(a: Region, b: Region) -> float:
    return area(difference(a, b)) + area(difference(b, a))
