"""Strip-transfer enumeration of polygons by half-bond counts.

A polygon with 2n vertical bonds occupies at most n unit rows, so for
small n every polygon lives inside a horizontal strip.  Sweeping a
vertical cut across that strip, column by column, reduces enumeration
to a dynamic program whose states record how the open boundary arcs
left of the cut pair up on the crossed horizontal edges.  The pairing
is always non-crossing, which keeps the state space tiny at the
heights this module targets.

Counts land in a SeriesTable keyed by (m, n) = (horizontal half-bond
pairs, vertical half-bond pairs).  Cells outside the computed window
are unknown, never silently zero.  The same sweep supports exact
per-row vertical-bond quotas, used to restrict enumeration to a fixed
row profile.

The table feeds two closed-form helpers: denominator_bound builds the
product of cyclotomic-style factors that caps the denominator of the
fixed-n generating function, and reconstruct fits a rational function
to a coefficient list against such a bound, with spare series terms
acting as a guard against accidental low-degree fits.
"""

from __future__ import annotations

import csv
import json
import os
import tempfile
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra.cyclotomic import cyclotomic
from .algebra.intpoly import IntPoly
from .algebra.ratfunc import RatFunc
from .polygons import RowProfile

__all__ = [
    "BudgetError",
    "IncompleteTableError",
    "ReconstructionError",
    "SeriesTable",
    "cache_key",
    "cached_table",
    "denominator_bound",
    "enumerate_table",
    "h_series",
    "load_table",
    "reconstruct",
    "save_table",
]

TABLE_FORMAT_VERSION = 1

# Heights beyond this make the cut-state space and the bond caps grow
# past what a desk run should attempt; callers wanting more must split
# the job rather than silently burn hours.
MAX_UNFILTERED_N = 8


class BudgetError(RuntimeError):
    """Raised when an enumeration exceeds its state-space or time budget."""


class IncompleteTableError(LookupError):
    """Raised when a requested table cell lies outside the computed window."""


class ReconstructionError(ValueError):
    """Raised when no numerator under the degree cap fits the series."""


# ---------------------------------------------------------------------------
# Series table


@dataclass
class SeriesTable:
    """Counts of polygons by (m, n) with explicit completeness bounds.

    counts holds only nonzero cells; completeness maps each computed n
    to the largest m for which the row is exact.  Cells with m = 0 or
    n = 0 are always known and zero: a polygon needs bonds of both
    orientations.
    """

    counts: Dict[Tuple[int, int], int] = field(default_factory=dict)
    completeness: Dict[int, int] = field(default_factory=dict)
    profile: Optional[Tuple[int, ...]] = None

    def known(self, m: int, n: int) -> bool:
        if m < 0 or n < 0:
            return False
        if m == 0 or n == 0:
            return True
        return n in self.completeness and m <= self.completeness[n]

    def count(self, m: int, n: int) -> int:
        if not self.known(m, n):
            raise IncompleteTableError(
                f"cell (m={m}, n={n}) is outside the computed window"
            )
        if m == 0 or n == 0:
            return 0
        return self.counts.get((m, n), 0)

    def max_m(self, n: int) -> int:
        if n not in self.completeness:
            raise IncompleteTableError(f"row n={n} was not computed")
        return self.completeness[n]

    def rows(self) -> List[int]:
        return sorted(self.completeness)


def h_series(table: SeriesTable, n: int, up_to: Optional[int] = None) -> List[int]:
    """Coefficient list [x^m] of the fixed-n generating function.

    Returns counts for m = 0 .. up_to (default: the full computed row).
    Rows that were never computed, or degrees beyond the completeness
    bound, raise IncompleteTableError rather than padding with zeros.

    >>> t = enumerate_table(2, 6)
    >>> h_series(t, 1)
    [0, 1, 1, 1, 1, 1, 1]
    >>> h_series(t, 0, up_to=3)
    [0, 0, 0, 0]
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        if up_to is None:
            raise IncompleteTableError("row n=0 has no finite completeness bound")
        return [0] * (up_to + 1)
    hi = table.max_m(n)
    if up_to is not None:
        if up_to > hi:
            raise IncompleteTableError(
                f"row n={n} is complete only to m={hi}, requested {up_to}"
            )
        hi = up_to
    return [table.count(m, n) for m in range(hi + 1)]


# ---------------------------------------------------------------------------
# Cut-line transfer dynamic program
#
# The cut sits between lattice columns.  Crossing it are horizontal
# bonds at integer heights 0..H; the open arcs to the left pair those
# heights up.  A state is the pairing, stored as a tuple `match` with
# match[y] = partner height, or -1 on empty slots.  Advancing the cut
# past lattice column x places a set V of vertical bonds at that
# abscissa (slot j = the bond from height j to j+1) and forces the set
# B of outgoing horizontal bonds, because every lattice vertex on the
# column must have degree exactly 0 or 2.


@lru_cache(maxsize=None)
def _column_moves(match: Tuple[int, ...]):
    """All legal single-column advances from a cut state.

    Returns a tuple of (new_match, v_slots, b_count, closed) entries.
    closed=True marks moves that seal the unique loop: every open arc
    joins into one cycle and nothing crosses the new cut.  Moves that
    would create a loop while other arcs survive, or more than one
    loop, are illegal and omitted.
    """
    height = len(match) - 1
    in_a = tuple(y for y in range(height + 1) if match[y] >= 0)
    a_set = frozenset(in_a)
    moves = []
    for v_bits in range(1 << height):
        v_slots = tuple(j for j in range(height) if v_bits >> j & 1)
        if not v_slots and not in_a:
            # nothing enters, nothing placed: the do-nothing move is
            # excluded so a sweep pins the leftmost column at x = 0
            continue
        v_set = frozenset(v_slots)
        b = []
        ok = True
        for y in range(height + 1):
            rest = (y in a_set) + (y - 1 in v_set) + (y in v_set)
            if rest == 3:
                ok = False
                break
            if rest == 1:
                b.append(y)
        if not ok:
            continue
        b_set = frozenset(b)

        # Trace every path through the column.  At a vertex the walk
        # leaves by the one incident edge it did not arrive on; arcs
        # teleport between their two endpoints.
        new_match = [-1] * (height + 1)
        seen_a: set = set()
        seen_v: set = set()

        def other_exit(y: int, came: str) -> str:
            exits = []
            if y in a_set:
                exits.append("arc")
            if y in b_set:
                exits.append("out")
            if y - 1 in v_set:
                exits.append("down")
            if y in v_set:
                exits.append("up")
            exits.remove(came)
            return exits[0]

        def walk(y: int, came: str) -> int:
            # follow the path until it leaves by an outgoing bond
            while True:
                ex = other_exit(y, came)
                if ex == "out":
                    return y
                if ex == "arc":
                    seen_a.add(y)
                    y = match[y]
                    seen_a.add(y)
                    came = "arc"
                elif ex == "down":
                    seen_v.add(y - 1)
                    y, came = y - 1, "up"
                else:
                    seen_v.add(y)
                    y, came = y + 1, "down"

        for y0 in sorted(b_set):
            if new_match[y0] >= 0:
                continue
            y1 = walk(y0, "out")
            new_match[y0] = y1
            new_match[y1] = y0

        # leftover arcs and vertical bonds belong to closed loops
        loops = 0
        for y0 in in_a:
            if y0 in seen_a:
                continue
            loops += 1
            seen_a.add(y0)
            y, came = match[y0], "arc"
            seen_a.add(y)
            while y != y0:
                ex = other_exit(y, came)
                if ex == "arc":
                    seen_a.add(y)
                    y, came = match[y], "arc"
                    seen_a.add(y)
                elif ex == "down":
                    seen_v.add(y - 1)
                    y, came = y - 1, "up"
                else:
                    seen_v.add(y)
                    y, came = y + 1, "down"
        if len(seen_v) != len(v_set):
            # a vertical cycle with no arcs cannot happen on a line
            raise AssertionError("unvisited vertical bonds after tracing")
        if loops:
            if loops == 1 and not b_set:
                moves.append((None, v_slots, 0, True))
            continue
        moves.append((tuple(new_match), v_slots, len(b_set), False))
    return tuple(moves)


def _min_future_v(match: Tuple[int, ...]) -> int:
    """Vertical bonds any completion must still place.  The crossed
    heights get joined up pairwise to the right, possibly after
    re-pairing, and a join between heights a < b costs at least b - a
    vertical bonds; the cheapest conceivable joining pairs adjacent
    heights, so its gap sum is a safe lower bound."""
    occ = [y for y in range(len(match)) if match[y] >= 0]
    return sum(occ[i + 1] - occ[i] for i in range(0, len(occ), 2))


class _SweepState:
    """One column sweep, advanced a column at a time and checkpointable.

    Counts polygons inside a strip of `height` rows, leftmost column at
    x = 0, any vertical position, with at most v_cap vertical and
    2*m_max horizontal bonds.  With quotas, row j must hold exactly
    quotas[j] vertical bonds (row 0 at the bottom), which also pins the
    vertical position.  After advance_column() has run k times, `out`
    holds final {(m, n): count} cells for every m <= k - 1.
    """

    def __init__(
        self,
        height: int,
        m_max: int,
        v_cap: int,
        quotas: Optional[Tuple[int, ...]] = None,
    ):
        self.height = height
        self.m_max = m_max
        self.v_cap = v_cap
        self.quotas = quotas
        self.next_col = 0
        self.out: Dict[Tuple[int, int], int] = {}
        # dp: (match, used) -> {(tv, th): count}; used is None unquotaed
        self.dp: Dict[tuple, Dict[Tuple[int, int], int]] = {}
        if height > 0:
            empty = (-1,) * (height + 1)
            zero_used = (0,) * height if quotas is not None else None
            self.dp = {(empty, zero_used): {(0, 0): 1}}

    @property
    def done(self) -> bool:
        return not self.dp or self.next_col > self.m_max

    def complete_m(self) -> int:
        """Largest width for which the counts are already final."""
        if self.done:
            return self.m_max
        return self.next_col - 1

    def advance_column(self) -> None:
        if self.done:
            return
        quotas = self.quotas
        ndp: Dict[tuple, Dict[Tuple[int, int], int]] = {}
        out = self.out
        for (match, used), weights in self.dp.items():
            for new_match, v_slots, b_count, closed in _column_moves(match):
                dv = len(v_slots)
                if used is not None:
                    nused = list(used)
                    bad = False
                    for j in v_slots:
                        nused[j] += 1
                        if nused[j] > quotas[j]:
                            bad = True
                            break
                    if bad:
                        continue
                    nused = tuple(nused)
                else:
                    nused = None
                if closed:
                    if used is not None and nused != quotas:
                        continue
                    for (tv, th), c in weights.items():
                        ntv = tv + dv
                        if ntv <= self.v_cap:
                            key = (th // 2, ntv // 2)
                            out[key] = out.get(key, 0) + c
                    continue
                slack = _min_future_v(new_match)
                bucket = None
                for (tv, th), c in weights.items():
                    ntv, nth = tv + dv, th + b_count
                    if ntv + slack > self.v_cap or nth > 2 * self.m_max:
                        continue
                    if bucket is None:
                        bucket = ndp.setdefault((new_match, nused), {})
                    nkey = (ntv, nth)
                    bucket[nkey] = bucket.get(nkey, 0) + c
        self.dp = ndp
        self.next_col += 1

    # -- checkpoint serialization (JSON-safe plain structures) ---------

    def to_blob(self) -> dict:
        return {
            "height": self.height,
            "m_max": self.m_max,
            "v_cap": self.v_cap,
            "quotas": None if self.quotas is None else list(self.quotas),
            "next_col": self.next_col,
            "out": [[m, n, c] for (m, n), c in sorted(self.out.items())],
            "dp": [
                [
                    list(match),
                    None if used is None else list(used),
                    [[tv, th, c] for (tv, th), c in sorted(weights.items())],
                ]
                for (match, used), weights in sorted(self.dp.items())
            ],
        }

    @classmethod
    def from_blob(cls, blob: dict) -> "_SweepState":
        quotas = blob["quotas"]
        state = cls(
            blob["height"],
            blob["m_max"],
            blob["v_cap"],
            None if quotas is None else tuple(quotas),
        )
        state.next_col = blob["next_col"]
        state.out = {(m, n): c for m, n, c in blob["out"]}
        state.dp = {
            (
                tuple(match),
                None if used is None else tuple(used),
            ): {(tv, th): c for tv, th, c in weights}
            for match, used, weights in blob["dp"]
        }
        return state


def _sweep(
    height: int,
    m_max: int,
    v_cap: int,
    quotas: Optional[Tuple[int, ...]] = None,
    deadline: Optional[float] = None,
) -> Dict[Tuple[int, int], int]:
    """Run a full strip sweep in one call; returns {(m, n): count}."""
    state = _SweepState(height, m_max, v_cap, quotas)
    while not state.done:
        if deadline is not None and time.monotonic() > deadline:
            raise BudgetError("enumeration exceeded its time budget")
        state.advance_column()
    return state.out


# ---------------------------------------------------------------------------
# Public enumeration API


def enumerate_table(
    n_max: int,
    m_max: int,
    profile_filter: Optional[RowProfile] = None,
    budget_seconds: Optional[float] = None,
) -> SeriesTable:
    """Exact polygon counts for all n <= n_max and m <= m_max.

    Counting runs in a strip of n_max rows: a polygon with 2n vertical
    bonds has at most n occupied rows, so the strip holds every shape,
    and subtracting the one-row-shorter sweep cancels the redundant
    vertical placements.  With profile_filter, only polygons whose
    per-row vertical-bond counts equal the profile are kept (a single
    quota-tracking sweep; the profile pins the vertical position).

    >>> t = enumerate_table(2, 4)
    >>> t.count(1, 1), t.count(2, 2)
    (1, 5)
    >>> t.count(9, 1)
    Traceback (most recent call last):
        ...
    haruspex.enumerator.IncompleteTableError: cell (m=9, n=1) is outside the computed window
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    if m_max < 1:
        raise ValueError("m_max must be at least 1")
    deadline = None
    if budget_seconds is not None:
        deadline = time.monotonic() + budget_seconds

    if profile_filter is not None:
        quotas_top_down = tuple(profile_filter)
        if not quotas_top_down:
            raise ValueError("profile filter must name at least one row")
        if any(q < 2 or q % 2 for q in quotas_top_down):
            raise ValueError("row quotas must be even and at least 2")
        total = sum(quotas_top_down)
        if total // 2 > n_max:
            raise ValueError(
                f"profile needs n={total // 2}, beyond n_max={n_max}"
            )
        quotas = tuple(reversed(quotas_top_down))  # row 0 at the bottom
        counts = _sweep(
            len(quotas), m_max, total, quotas=quotas, deadline=deadline
        )
        return SeriesTable(
            counts=counts,
            completeness={n: m_max for n in range(n_max + 1)},
            profile=quotas_top_down,
        )

    if n_max > MAX_UNFILTERED_N:
        raise BudgetError(
            f"state space cap: unfiltered n_max is limited to {MAX_UNFILTERED_N}"
        )
    big = _sweep(n_max, m_max, 2 * n_max, deadline=deadline)
    small = _sweep(n_max - 1, m_max, 2 * n_max, deadline=deadline)
    counts: Dict[Tuple[int, int], int] = {}
    for key, c in big.items():
        rem = c - small.get(key, 0)
        if rem:
            counts[key] = rem
    for key in small:
        if key not in big:
            raise AssertionError("narrow strip counted a shape the wide one missed")
    return SeriesTable(
        counts=counts,
        completeness={n: m_max for n in range(n_max + 1)},
        profile=None,
    )


# ---------------------------------------------------------------------------
# Denominator bound and rational reconstruction


def denominator_bound(n: int) -> IntPoly:
    """Product of cyclotomic-style factors capping the fixed-n denominator.

    Factor k enters with exponent 2n - 6k + 5 for k up to ceil(n/3);
    the exponent stays positive across that whole range.

    >>> from .algebra.cyclotomic import cyclotomic_factor
    >>> cyclotomic_factor(denominator_bound(2)).exponents
    {1: 3}
    >>> cyclotomic_factor(denominator_bound(5)).exponents
    {1: 9, 2: 3}
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    out = IntPoly.one(("x",))
    for k in range(1, -(-n // 3) + 1):
        out = out * cyclotomic(k) ** (2 * n - 6 * k + 5)
    return out


def reconstruct(series: Sequence[int], bound: IntPoly, guard: int = 10) -> RatFunc:
    """Fit numerator/bound to a coefficient list and reduce the result.

    Multiplying the series by the bound must leave a polynomial of
    degree at most deg(bound); every supplied coefficient beyond that,
    at least guard of them, must come out zero, or the fit is rejected.
    The returned fraction is in lowest terms, so its denominator is
    the true one even when the bound overshoots.

    >>> f = reconstruct([0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
    ...                 denominator_bound(1), guard=10)
    >>> str(f)
    '(x)/((1-x))'
    """
    if guard < 1:
        raise ValueError("guard must be at least 1")
    if bound.is_zero:
        raise ZeroDivisionError("zero denominator bound")
    deg_b = bound.degree("x")
    need = 2 * deg_b + guard + 1
    if len(series) < need:
        raise ValueError(
            f"need at least {need} coefficients against this bound, got {len(series)}"
        )
    if all(c == 0 for c in series):
        return RatFunc.from_poly(0)
    b_coeffs = [bound.coeff_of("x", k).constant_term() for k in range(deg_b + 1)]
    length = len(series)
    prod = [0] * length
    for j, bj in enumerate(b_coeffs):
        if bj == 0:
            continue
        for i in range(length - j):
            prod[i + j] += bj * series[i]
    tail = [k for k in range(deg_b + 1, length) if prod[k] != 0]
    if tail:
        raise ReconstructionError(
            "series inconsistent with the bound: product has degree-"
            f"{tail[0]} term past the numerator cap {deg_b}"
        )
    num = IntPoly.from_terms(
        ("x",), [((k,), prod[k]) for k in range(deg_b + 1) if prod[k]]
    )
    return RatFunc.from_num_den(num, bound)


# ---------------------------------------------------------------------------
# On-disk cache: CSV cell list plus a JSON manifest


def cache_key(
    n_max: int, m_max: int, profile: Optional[Sequence[int]] = None
) -> str:
    tag = "all" if profile is None else "r" + "-".join(str(c) for c in profile)
    return f"n{n_max}_m{m_max}_{tag}"


def _atomic_write(path: str, text: str) -> None:
    d = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save_table(table: SeriesTable, directory: str) -> None:
    """Write series.csv (m,n,count rows) and manifest.json atomically."""
    os.makedirs(directory, exist_ok=True)
    lines = ["m,n,count"]
    for (m, n) in sorted(table.counts):
        lines.append(f"{m},{n},{table.counts[m, n]}")
    _atomic_write(os.path.join(directory, "series.csv"), "\n".join(lines) + "\n")
    manifest = {
        "format_version": TABLE_FORMAT_VERSION,
        "completeness": {str(n): m for n, m in sorted(table.completeness.items())},
        "profile": None if table.profile is None else list(table.profile),
    }
    _atomic_write(
        os.path.join(directory, "manifest.json"),
        json.dumps(manifest, indent=2, sort_keys=True) + "\n",
    )


def load_table(directory: str) -> SeriesTable:
    with open(os.path.join(directory, "manifest.json"), encoding="utf-8") as fh:
        manifest = json.load(fh)
    if manifest.get("format_version") != TABLE_FORMAT_VERSION:
        raise ValueError(
            f"unsupported table format {manifest.get('format_version')!r}"
        )
    counts: Dict[Tuple[int, int], int] = {}
    with open(os.path.join(directory, "series.csv"), newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            counts[int(row["m"]), int(row["n"])] = int(row["count"])
    profile = manifest.get("profile")
    return SeriesTable(
        counts=counts,
        completeness={int(k): v for k, v in manifest["completeness"].items()},
        profile=None if profile is None else tuple(profile),
    )


def cached_table(
    n_max: int,
    m_max: int,
    profile_filter: Optional[RowProfile] = None,
    cache_dir: Optional[str] = None,
    budget_seconds: Optional[float] = None,
) -> SeriesTable:
    """enumerate_table with a per-key on-disk cache in front of it."""
    if cache_dir is None:
        return enumerate_table(n_max, m_max, profile_filter, budget_seconds)
    profile = None if profile_filter is None else tuple(profile_filter)
    directory = os.path.join(cache_dir, "table_" + cache_key(n_max, m_max, profile))
    if os.path.isdir(directory):
        try:
            return load_table(directory)
        except (OSError, ValueError, KeyError):
            pass  # unreadable cache entries are rebuilt below
    table = enumerate_table(n_max, m_max, profile_filter, budget_seconds)
    save_table(table, directory)
    return table
