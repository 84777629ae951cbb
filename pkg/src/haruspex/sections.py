"""Section decomposition of polygons and reduction to section-minimal form.

Horizontal rays are drawn along every midline of a row of lattice cells,
entering from the far left and the far right and stopping at the first
vertical bond.  Cutting along these rays, and vertically through their
blocking bonds, splits a polygon into pages.  The horizontal bonds of one
column of one page form a section; repeatedly deleting sections identical
to a neighbour yields the unique section-minimal polygon.  The section
census over these reduced polygons is what bounds the denominators of the
column generating functions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .polygons import Polygon, PolygonError, cells_to_polygon, validate


class SectionError(ValueError):
    """Raised when a section operation's precondition fails."""


@dataclass(frozen=True)
class SectionLine:
    """One horizontal ray at a row midline, with the bond that stopped it.

    The ray runs at ordinate ``row + 1/2`` from infinity on the named side
    up to ``blocking_bond``.
    """

    row: int
    side: str
    blocking_bond: tuple[int, int, str]


@dataclass(frozen=True)
class Section:
    """The horizontal bonds of one column of one page."""

    page: int
    column: int
    ordinates: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.ordinates) // 2

    @property
    def x_interval(self) -> tuple[int, int]:
        return (self.column, self.column + 1)

    def bonds(self) -> tuple[tuple[int, int, str], ...]:
        return tuple((self.column, y, "h") for y in self.ordinates)


@dataclass(frozen=True)
class PageDecomposition:
    """Result of cutting a polygon along its section lines."""

    section_lines: tuple[SectionLine, ...]
    pages: tuple[frozenset, ...]
    sections: tuple[Section, ...]
    between_page_vertical_bonds: int
    within_page_vertical_bonds: int

    def sigma(self) -> dict[int, int]:
        census: dict[int, int] = {}
        for s in self.sections:
            census[s.k] = census.get(s.k, 0) + 1
        return census

    def to_report(self) -> dict:
        """JSON-ready summary of pages, sections and the census."""
        return {
            "pages": [sorted(map(list, page)) for page in self.pages],
            "sections": [
                {
                    "page": s.page,
                    "column": s.column,
                    "k": s.k,
                    "ordinates": list(s.ordinates),
                }
                for s in self.sections
            ],
            "section_lines": [
                {
                    "row": line.row,
                    "side": line.side,
                    "midline": line.row + 0.5,
                    "blocking_bond": list(line.blocking_bond),
                }
                for line in self.section_lines
            ],
            "sigma": {str(k): n for k, n in sorted(self.sigma().items())},
            "vertical_bonds": {
                "between_pages": self.between_page_vertical_bonds,
                "within_pages": self.within_page_vertical_bonds,
            },
        }


def interior_cells(p: Polygon) -> set:
    """Cells enclosed by the boundary curve.

    Walking a row left to right, each vertical bond toggles between
    outside and inside, so consecutive pairs of abscissas bound the
    occupied runs.
    """
    rows: dict[int, list[int]] = {}
    for x, y, o in p.bonds:
        if o == "v":
            rows.setdefault(y, []).append(x)
    cells = set()
    for y, xs in rows.items():
        xs.sort()
        for a, b in zip(xs[0::2], xs[1::2]):
            for x in range(a, b):
                cells.add((x, y))
    return cells


def decompose(p: Polygon) -> PageDecomposition:
    """Cut a polygon into pages and group its horizontal bonds into sections."""
    rows: dict[int, list[int]] = {}
    vbonds = []
    for x, y, o in p.bonds:
        if o == "v":
            rows.setdefault(y, []).append(x)
            vbonds.append((x, y))
    height = max(rows) + 1
    lo = {y: min(xs) for y, xs in rows.items()}
    hi = {y: max(xs) for y, xs in rows.items()}

    lines = []
    for y in range(height):
        lines.append(SectionLine(y, "left", (lo[y], y, "v")))
        lines.append(SectionLine(y, "right", (hi[y], y, "v")))

    # Cut coverage per (abscissa, row): which halves of the row the vertical
    # cut through that abscissa severs.  A cut runs through whole rows until
    # it meets a midline whose ray reaches it, where it covers one half only.
    coverage: dict[tuple[int, int], set[int]] = {}

    def cover(a, m, halves):
        coverage.setdefault((a, m), set()).update(halves)

    for y in range(height):
        for a in (lo[y], hi[y]):
            cover(a, y, (0, 1))
            m = y + 1
            while m < height and lo[m] < a < hi[m]:
                cover(a, m, (0, 1))
                m += 1
            if m < height:
                cover(a, m, (0,))
            m = y - 1
            while m >= 0 and lo[m] < a < hi[m]:
                cover(a, m, (0, 1))
                m -= 1
            if m >= 0:
                cover(a, m, (1,))

    # Pages: interior cells stay connected unless a cut severs both halves
    # of the shared edge.  Vertical neighbours are never severed; only a
    # full-height cut separates horizontal neighbours.
    cells = interior_cells(p)
    page_of: dict[tuple[int, int], int] = {}
    pages = []
    for seed in sorted(cells):
        if seed in page_of:
            continue
        idx = len(pages)
        members = set()
        stack = [seed]
        page_of[seed] = idx
        while stack:
            cx, cy = stack.pop()
            members.add((cx, cy))
            neighbours = (
                ((cx, cy + 1), None),
                ((cx, cy - 1), None),
                ((cx + 1, cy), (cx + 1, cy)),
                ((cx - 1, cy), (cx, cy)),
            )
            for nb, edge in neighbours:
                if nb not in cells or nb in page_of:
                    continue
                if edge is not None and coverage.get(edge) == {0, 1}:
                    continue
                page_of[nb] = idx
                stack.append(nb)
        pages.append(frozenset(members))

    groups: dict[tuple[int, int], list[int]] = {}
    for x, y, o in p.bonds:
        if o != "h":
            continue
        owner = (x, y) if (x, y) in cells else (x, y - 1)
        groups.setdefault((page_of[owner], x), []).append(y)
    sections = []
    for (page, x), ys in sorted(groups.items()):
        ys.sort()
        if len(ys) % 2:
            raise PolygonError(
                f"column {x} of page {page} holds an odd number of horizontal bonds"
            )
        sections.append(Section(page, x, tuple(ys)))
    sections.sort(key=lambda s: (s.column, -s.ordinates[-1]))

    between = sum(1 for b in vbonds if coverage.get(b) == {0, 1})
    return PageDecomposition(
        section_lines=tuple(lines),
        pages=tuple(pages),
        sections=tuple(sections),
        between_page_vertical_bonds=between,
        within_page_vertical_bonds=len(vbonds) - between,
    )


def sigma(p: Polygon) -> dict[int, int]:
    """Census of sections by k: how many k-sections the polygon carries."""
    return decompose(p).sigma()


def _identical(a: Section | None, b: Section) -> bool:
    return a is not None and a.ordinates == b.ordinates


def _duplicate_indices(d: PageDecomposition) -> list[int]:
    """Indices of sections whose immediate left neighbour is identical."""
    by_loc = {(s.page, s.column): s for s in d.sections}
    out = []
    for i, s in enumerate(d.sections):
        if _identical(by_loc.get((s.page, s.column - 1)), s):
            out.append(i)
    return out


def delete_duplicate(
    p: Polygon, section: int, parts: PageDecomposition | None = None
) -> Polygon:
    """Remove a duplicate section and recombine the two remaining pieces.

    The named section must have an identical neighbour in its page.  Its
    2k horizontal bonds are removed, splitting the boundary into open
    arcs; arcs hanging off the right-hand cut translate one step left and
    fuse with the rest.
    """
    d = parts if parts is not None else decompose(p)
    if not 0 <= section < len(d.sections):
        raise SectionError(f"no section with index {section}")
    s = d.sections[section]
    by_loc = {(t.page, t.column): t for t in d.sections}
    if not (
        _identical(by_loc.get((s.page, s.column - 1)), s)
        or _identical(by_loc.get((s.page, s.column + 1)), s)
    ):
        raise SectionError(
            f"section at column {s.column} of page {s.page} is not a duplicate"
        )

    removed = set(s.bonds())
    rest = [b for b in p.bonds if b not in removed]
    incidence: dict[tuple[int, int], list] = {}
    for b in rest:
        x, y, o = b
        head = (x + 1, y) if o == "h" else (x, y + 1)
        for v in ((x, y), head):
            incidence.setdefault(v, []).append(b)

    loose = sorted(v for v, bs in incidence.items() if len(bs) == 1)
    seen: set = set()
    new_bonds: list = []
    for start in loose:
        first = incidence[start][0]
        if first in seen:
            continue
        arc = []
        vertex, bond = start, first
        while True:
            seen.add(bond)
            arc.append(bond)
            x, y, o = bond
            u, w = (x, y), ((x + 1, y) if o == "h" else (x, y + 1))
            vertex = w if vertex == u else u
            nxt = [b for b in incidence[vertex] if b not in seen]
            if not nxt:
                break
            bond = nxt[0]
        # both ends of the arc sit on the slice through the deleted column
        if {start[0], vertex[0]} - {s.column, s.column + 1}:
            raise PolygonError("duplicate deletion split the boundary badly")
        if start[0] != vertex[0]:
            raise PolygonError("duplicate deletion left a crossing arc")
        if start[0] == s.column:
            new_bonds.extend(arc)
        else:
            new_bonds.extend((x - 1, y, o) for x, y, o in arc)
    return validate(new_bonds)


def reduce_minimal(p: Polygon) -> Polygon:
    """Delete duplicate sections, leftmost and topmost first, to a fixpoint.

    The result is independent of the deletion order; the chosen order just
    makes runs reproducible.
    """
    while True:
        d = decompose(p)
        dups = _duplicate_indices(d)
        if not dups:
            return p
        p = delete_duplicate(p, dups[0], d)


def _ladder_cells(k: int, q: int) -> list:
    """Cell list for a spine, a corridor of q k-stacks, and guard arms.

    Rows 0..2k-2: odd rows hold the spine cell and an arm cell at column
    q+2; even rows alternate narrow (columns 0..q) and wide (columns
    0..q+2).  Columns 1..q are then k-stacks with gaps at the odd rows,
    each gap flanked by spine bonds on the left and arm bonds on the
    right.  Every arm leans on a wide row while the empty cells around it
    drain past a narrow one; a wide row closing both sides of a gap would
    seal a hole.
    """
    cells = []
    for y in range(2 * k - 1):
        if y % 2:
            cells += [(0, y), (q + 2, y)]
        elif (y // 2) % 2:
            cells += [(x, y) for x in range(q + 3)]
        else:
            cells += [(x, y) for x in range(q + 1)]
    return cells


def construct_hook(k: int) -> Polygon:
    """Section-minimal witness with 6k-4 vertical bonds and a single k-section.

    A full-height spine along column 0 carries the k-section in column 1;
    single-cell arms in the odd rows guard its gaps from the right.
    """
    if k < 1:
        raise ValueError("hook witnesses need k >= 1")
    if k == 1:
        return cells_to_polygon([(0, 0)])
    return cells_to_polygon(_ladder_cells(k, 1))


def construct_many(k: int, m: int) -> Polygon:
    """Witness with 6k-4+2m vertical bonds carrying 2m+1 k-sections.

    Built from the hook by slicing just right of its k-section and
    splicing in m copies of a two-column block whose columns are both
    k-stacks, widening the corridor to 2m+1 identical k-sections.  The
    splices reuse the hook's gap rows, so the two extra vertical bonds
    each copy owes are paid by a full-width floor row under the splice;
    full-width rows leave every stack whole because no row midline can
    cut a column that lies between that row's extreme vertical bonds.
    """
    if k < 1 or m < 0:
        raise ValueError("need k >= 1 and m >= 0")
    if m == 0:
        return construct_hook(k)
    if k == 1:
        cells = [(0, 0), (1, 0)]
        for j in range(1, m):
            cells += [(x, j) for x in range(2 * j - 1, 2 * j + 2)]
        cells += [(2 * m - 1, m), (2 * m, m)]
        return cells_to_polygon(cells)
    q = 2 * m + 1
    cells = _ladder_cells(k, q)
    for j in range(1, m + 1):
        cells += [(x, -j) for x in range(q + 3)]
    return cells_to_polygon(cells)
