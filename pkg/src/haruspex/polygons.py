"""Self-avoiding polygons on the square lattice.

A polygon is a set of unit bonds forming a single closed curve in which
every touched lattice vertex has degree two.  Polygons are counted up to
translation only; rotations and reflections are distinct.  Bonds are
stored as (x, y, orientation) triples where a horizontal bond spans
(x, y)-(x+1, y) and a vertical bond spans (x, y)-(x, y+1), sorted, with
the minimal x and y coordinates normalized to zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence


class PolygonError(ValueError):
    """A bond set that is not a single degree-two closed curve."""


@dataclass(frozen=True)
class RowProfile:
    """Vertical-bond counts per row, listed top to bottom."""

    counts: tuple

    @classmethod
    def two_four_two(cls, k: int) -> "RowProfile":
        """The alternating profile (2,4,2,...,4,2) with k twos."""
        if k < 1:
            raise ValueError("k must be positive")
        counts = [2] * (2 * k - 1)
        for i in range(1, 2 * k - 1, 2):
            counts[i] = 4
        return cls(tuple(counts))

    def matches_242(self) -> bool:
        n = len(self.counts)
        if n % 2 == 0:
            return False
        return all(
            c == (4 if i % 2 else 2) for i, c in enumerate(self.counts)
        )

    def total(self) -> int:
        return sum(self.counts)

    def __iter__(self):
        return iter(self.counts)

    def __len__(self):
        return len(self.counts)


def _bond_endpoints(bond) -> tuple:
    x, y, o = bond
    return ((x, y), (x + 1, y)) if o == "h" else ((x, y), (x, y + 1))


def _to_triple(item) -> tuple:
    """Accept (x, y, o) or a pair of endpoints; return the triple."""
    if (
        len(item) == 3
        and isinstance(item[0], int)
        and isinstance(item[1], int)
        and item[2] in ("h", "v")
    ):
        return (item[0], item[1], item[2])
    (x1, y1), (x2, y2) = item
    if not all(isinstance(c, int) for c in (x1, y1, x2, y2)):
        raise PolygonError("bond coordinates must be integers")
    dx, dy = x2 - x1, y2 - y1
    if (abs(dx), abs(dy)) == (1, 0):
        return (min(x1, x2), y1, "h")
    if (abs(dx), abs(dy)) == (0, 1):
        return (x1, min(y1, y2), "v")
    raise PolygonError(f"not a unit axis-aligned bond: {item!r}")


@dataclass(frozen=True)
class Polygon:
    bonds: tuple

    @property
    def hhp(self) -> int:
        return sum(1 for b in self.bonds if b[2] == "h") // 2

    @property
    def vhp(self) -> int:
        return sum(1 for b in self.bonds if b[2] == "v") // 2

    def row_profile(self) -> RowProfile:
        rows: dict = {}
        for x, y, o in self.bonds:
            if o == "v":
                rows[y] = rows.get(y, 0) + 1
        # top row first
        return RowProfile(tuple(rows[y] for y in sorted(rows, reverse=True)))

    def measure(self) -> tuple:
        return (self.hhp, self.vhp, self.row_profile())

    def vertices(self) -> set:
        out = set()
        for b in self.bonds:
            p, q = _bond_endpoints(b)
            out.add(p)
            out.add(q)
        return out

    def translate(self, dx: int, dy: int) -> "Polygon":
        return Polygon(
            tuple(sorted((x + dx, y + dy, o) for x, y, o in self.bonds))
        )

    def width(self) -> int:
        xs = [v[0] for v in self.vertices()]
        return max(xs) - min(xs)

    def height(self) -> int:
        ys = [v[1] for v in self.vertices()]
        return max(ys) - min(ys)

    def to_bond_pairs(self) -> list:
        return [
            [list(p), list(q)]
            for p, q in (_bond_endpoints(b) for b in self.bonds)
        ]

    @classmethod
    def from_bond_pairs(cls, pairs: Iterable) -> "Polygon":
        return validate(pairs)

    def __repr__(self) -> str:
        return f"Polygon(hhp={self.hhp}, vhp={self.vhp}, bonds={len(self.bonds)})"


def validate(bonds: Iterable) -> Polygon:
    """Check the degree-two single-curve invariants and normalize.

    Raises PolygonError naming the violated invariant: empty input,
    duplicate or malformed bonds, a vertex of degree other than two, or
    a disconnected bond set (which covers separate loops).
    """
    triples = [_to_triple(b) for b in bonds]
    if not triples:
        raise PolygonError("empty bond set")
    if len(set(triples)) != len(triples):
        raise PolygonError("duplicate bond")

    degree: dict = {}
    adjacency: dict = {}
    for b in triples:
        p, q = _bond_endpoints(b)
        degree[p] = degree.get(p, 0) + 1
        degree[q] = degree.get(q, 0) + 1
        adjacency.setdefault(p, []).append(q)
        adjacency.setdefault(q, []).append(p)
    bad = [v for v, d in degree.items() if d != 2]
    if bad:
        v = min(bad)
        raise PolygonError(f"vertex {v} has degree {degree[v]}, expected 2")

    start = next(iter(adjacency))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adjacency[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != len(adjacency):
        raise PolygonError("disconnected bond set")

    minx = min(x for x, _, _ in triples)
    miny = min(y for _, y, _ in triples)
    return Polygon(
        tuple(sorted((x - minx, y - miny, o) for x, y, o in triples))
    )


def measure(p: Polygon) -> tuple:
    return p.measure()


def cells_to_polygon(cells: Iterable) -> Polygon:
    """Boundary of a set of unit cells, validated.

    A cell (x, y) spans corners (x, y)-(x+1, y+1).  Edges shared by two
    cells cancel; what remains is the boundary, which validate() accepts
    only when the cell set is simply connected with no pinch points.
    """
    edges: set = set()
    for cx, cy in cells:
        for bond in (
            (cx, cy, "h"),
            (cx, cy + 1, "h"),
            (cx, cy, "v"),
            (cx + 1, cy, "v"),
        ):
            edges.symmetric_difference_update({bond})
    if not edges:
        raise PolygonError("empty cell set")
    return validate(edges)


def generate_all(max_total_half_perimeter: int) -> Iterator[Polygon]:
    """Every polygon with hhp + vhp at most the bound, once per translate.

    Cycle growth: normalize so (0,0) is the lexicographically least
    vertex (min x, then min y).  The cycle's two bonds at the origin
    then necessarily go east and north, so growing an open path that
    starts east and closes from (0,1), while forbidding vertices with
    x < 0 and those below the origin in column 0, visits each polygon
    exactly once.
    """
    bound = max_total_half_perimeter
    if bound < 2:
        return
    origin = (0, 0)
    path = [origin, (1, 0)]
    visited = {origin, (1, 0)}

    def close_path() -> Polygon:
        triples = [
            _to_triple((a, b)) for a, b in zip(path, path[1:] + [origin])
        ]
        miny = min(y for _, y, _ in triples)
        return Polygon(tuple(sorted((x, y - miny, o) for x, y, o in triples)))

    def grow(pos, h: int, v: int) -> Iterator[Polygon]:
        if pos == (0, 1):
            # the north bond at the origin is forced, so (0,1) is always
            # the final vertex: close here, never continue past it
            if h % 2 == 0 and (v + 1) % 2 == 0 and h // 2 + (v + 1) // 2 <= bound:
                yield close_path()
            return
        px, py = pos
        for nxt in ((px + 1, py), (px - 1, py), (px, py + 1), (px, py - 1)):
            nx, ny = nxt
            if nx < 0 or (nx == 0 and ny < 0) or nxt == origin:
                continue
            if nxt in visited:
                continue
            dh = 1 if ny == py else 0
            # completing from nxt takes at least |nx| more horizontal
            # bonds and |ny-1| vertical ones, plus the closing bond; the
            # parities of these totals are invariant along any return
            need_h = h + dh + abs(nx)
            need_v = v + (1 - dh) + abs(ny - 1) + 1
            if need_h % 2 or need_v % 2:
                continue
            if need_h // 2 + need_v // 2 > bound:
                continue
            path.append(nxt)
            visited.add(nxt)
            yield from grow(nxt, h + dh, v + (1 - dh))
            visited.discard(path.pop())

    yield from grow((1, 0), 1, 0)


def generate_with_vertical_bonds(
    two_v: int,
    max_hhp: int,
    profile_filter: Optional[RowProfile] = None,
) -> Iterator[Polygon]:
    """All polygons with the given vertical-bond count and hhp cap.

    Row-by-row construction: a polygon with 2V vertical bonds has at
    most V rows, and row j holds v_j/2 maximal runs of cells.  Runs are
    enumerated per row, adjacent rows must share at least one column,
    and validate() is the final authority (it rejects pinched or
    multiply-connected cell sets).
    """
    if two_v < 2 or two_v % 2:
        if two_v == 0:
            return
        raise ValueError("vertical bond count must be positive and even")
    target_v = two_v
    if profile_filter is not None and profile_filter.total() != two_v:
        return

    def run_sets(n_runs: int, width: int):
        # ascending tuples a1<b1<=a2<b2<=... of cell intervals in [0,width)
        def rec(start: int, remaining: int):
            if remaining == 0:
                yield ()
                return
            for a in range(start, width):
                for b in range(a + 1, width + 1):
                    for rest in rec(b + 1, remaining - 1):
                        yield ((a, b),) + rest

        return rec(0, n_runs)

    def runs_touch(above, below) -> bool:
        return any(
            a < d and c < b for (a, b) in above for (c, d) in below
        )

    profiles: list
    if profile_filter is not None:
        profiles = [tuple(profile_filter.counts)]
    else:
        profiles = []

        def compositions(total: int, acc: list):
            if total == 0 and acc:
                profiles.append(tuple(acc))
                return
            for vj in range(2, total + 1, 2):
                compositions(total - vj, acc + [vj])

        compositions(target_v, [])

    seen = set()
    for profile in profiles:
        rows = [list(run_sets(vj // 2, max_hhp)) for vj in profile]
        if any(not r for r in rows):
            continue

        def build(j: int, chosen: list):
            if j == len(profile):
                cells = set()
                for depth, runs in enumerate(chosen):
                    # row index: top row has the largest y
                    ry = len(profile) - 1 - depth
                    for (a, b) in runs:
                        for cx in range(a, b):
                            cells.add((cx, ry))
                try:
                    poly = cells_to_polygon(cells)
                except PolygonError:
                    return
                if poly.hhp > max_hhp:
                    return
                if 2 * poly.vhp != target_v:
                    return
                if profile_filter is not None and poly.row_profile() != profile_filter:
                    return
                key = poly.bonds
                if key not in seen:
                    seen.add(key)
                    results.append(poly)
                return
            for runs in rows[j]:
                if j and not runs_touch(chosen[-1], runs):
                    continue
                build(j + 1, chosen + [runs])

        results: list = []
        build(0, [])
        for poly in results:
            yield poly
