"""Generating functions for the height-3 blocks of 2-4-2 polygons.

A 2-4-2 polygon (row profile 2,4,2,...,4,2) decomposes uniquely into a
unit-height rectangle plus a stack of height-3 polygons with profile
(2,4,2), glued bottom row to top row.  This module builds the
generating function of those blocks twice over: once assembled from a
five-term product formula over "frill" decorations, and once by brute
enumeration, keyed by top row length (t), bottom row length (s) and
horizontal half-perimeter (x).  Every block carries vertical
half-perimeter 2, so a single global y**4 is tracked as an exponent
rather than as a variable.

The Hadamard pairing that drives the row recurrence needs the block
kernel T(t/x, s; x)/y in partial-fraction form over t; the coefficient
extraction lives here too, both for general s and for the coalesced
s = 1 case.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Tuple, Union

from .algebra.intpoly import IntPoly
from .algebra.partialfrac import PartialFractionForm, partial_fraction_t
from .algebra.ratfunc import RatFunc
from .polygons import RowProfile, generate_with_vertical_bonds

__all__ = [
    "BuildingBlockGF",
    "PoleShapeError",
    "brute_blocks",
    "coefficients_c",
    "coefficients_chat",
    "frills",
    "geometric",
    "swap_ts",
    "t_hat",
    "transition_kernel",
]

BLOCK_Y_POWER = 4

_T = IntPoly.variable("t")
_S = IntPoly.variable("s")
_X = IntPoly.variable("x")
_ONE = IntPoly.one(())


class PoleShapeError(ValueError):
    """The block kernel's poles do not fit the expected basis."""


def geometric(f: Union[IntPoly, RatFunc]) -> RatFunc:
    """f/(1-f): a nonempty sequence of parts weighted f each."""
    if isinstance(f, IntPoly):
        return RatFunc(f, [(1 - f, 1)])
    return f / (RatFunc(_ONE) - f)


def frills() -> Tuple[RatFunc, RatFunc, RatFunc]:
    """The three end decorations (A, B, C) of a block.

    A collects the eleven ways the far columns of a block may overhang
    on either side, B and C the three ways each extremity closes off.
    A is symmetric in s and t; B depends only on t and C only on s.
    """
    gx = geometric(_X)
    gs = geometric(_S * _X)
    gt = geometric(_T * _X)
    one = RatFunc(_ONE)
    a = (
        one
        + gx
        + 2 * gs
        + 2 * gt
        + gs * gt
        + gs * gs
        + gs * gx
        + gt * gt
        + gt * gx
    )
    b = one + gt + gx
    c = one + gs + gx
    return a, b, c


@dataclass(frozen=True)
class BuildingBlockGF:
    """Block generating function with the y**4 weight kept as an exponent.

    one_orientation counts blocks in a single reference orientation;
    full() applies the reflection recipe 2*(G(t,s) + G(s,t)) to cover
    all four.
    """

    one_orientation: RatFunc
    y_power: int = BLOCK_Y_POWER

    def full(self) -> RatFunc:
        return 2 * (self.one_orientation + swap_ts(self.one_orientation))


def swap_ts(f: RatFunc) -> RatFunc:
    """Exchange the roles of t and s (y is free to serve as scratch)."""
    if "y" in f.vars():
        raise ValueError("swap needs y unused")
    g = f.subs_ratio("t", IntPoly.variable("y"), _ONE)
    g = g.subs_ratio("s", _T, _ONE)
    return g.subs_ratio("y", _S, _ONE)


def t_hat() -> BuildingBlockGF:
    """Assemble the one-orientation block generating function.

    Five shapes of section-minimal core, each dressed with one frill at
    either end; the middle factors are geometric sequences over the
    column weights stx, stx**2, tx and sx.
    """
    a, b, c = frills()
    g_stx = geometric(_S * _T * _X)
    g_stxx = geometric(_S * _T * _X * _X)
    g_tx = geometric(_T * _X)
    g_sx = geometric(_S * _X)
    g_x = geometric(_X)
    core = (
        a * g_stx * g_tx**2 * b
        + a * g_stx * g_stxx * g_tx**2 * b
        + a * g_stx * g_tx**3 * b
        + c * g_sx * g_tx**3 * b
        + c * g_sx * g_x * g_tx**3 * b
    )
    return BuildingBlockGF(core)


def brute_blocks(max_row_length: int) -> Dict[Tuple[int, int, int], int]:
    """Census of profile-(2,4,2) polygons keyed (top, bottom, hhp).

    Exhaustive up to the given row-length cap, which also caps the
    horizontal half-perimeter: entries with hhp <= max_row_length are
    complete.  Every counted block weighs y**4 on top of the returned
    key, uniformly.
    """
    if max_row_length < 1:
        raise ValueError("row-length cap must be positive")
    profile = RowProfile.two_four_two(2)
    census: Dict[Tuple[int, int, int], int] = {}
    for poly in generate_with_vertical_bonds(
        2 * BLOCK_Y_POWER, max_row_length, profile
    ):
        rows: Dict[int, list] = {}
        for x, y, o in poly.bonds:
            if o == "v":
                rows.setdefault(y, []).append(x)
        top = max(rows)
        lo, hi = sorted(rows[top])
        t_len = hi - lo
        lo, hi = sorted(rows[min(rows)])
        s_len = hi - lo
        key = (t_len, s_len, poly.hhp)
        census[key] = census.get(key, 0) + 1
    return census


def transition_kernel() -> RatFunc:
    """T(t/x, s; x)/y with the y bookkeeping already stripped.

    Joining a block onto a polygon along a row of n cells removes two
    vertical and 2n horizontal bonds, so the block's weight enters the
    row recurrence as T_n(s;x) / (y x**n); dividing the t-conjugate
    variable by x and the whole function by y performs both shifts at
    once.  The y**4 block weight then leaves a net y**3, exactly the
    vertical growth from one recurrence level to the next, so no y
    survives in the kernel.
    """
    full = t_hat().full()
    return full.subs_ratio("t", _T, _X)


_COEFF_CACHE: dict = {}


def _unit_coefficients(pf: PartialFractionForm, max_order: int) -> Dict[int, RatFunc]:
    out: Dict[int, RatFunc] = {}
    for alpha, order, coeff in pf.terms:
        if alpha == _ONE:
            if order > max_order:
                raise PoleShapeError(
                    f"pole at t = 1 of order {order}, expected <= {max_order}"
                )
            out[order] = coeff
    return out


def coefficients_c() -> Dict[int, RatFunc]:
    """Partial-fraction coefficients c_0..c_8 of the block kernel.

    The kernel decomposes as
        c_0 + sum_{k=0..5} c_{k+1} k! t^k/(1-t)^(k+1)
            + c_7/(1-s t) + c_8/(1-s t x),
    with each c_i a rational function of s and x.  Raises
    PoleShapeError if the kernel's poles fall outside that basis.
    """
    cached = _COEFF_CACHE.get("c")
    if cached is None:
        kernel = transition_kernel()
        try:
            pf = partial_fraction_t(kernel)
        except ValueError as exc:
            raise PoleShapeError(str(exc)) from exc
        if not (pf.reassemble() - kernel).is_zero:
            raise PoleShapeError("partial fractions do not reassemble the kernel")
        units = _unit_coefficients(pf, 6)
        out = {0: pf.c0}
        for k in range(6):
            out[k + 1] = units.get(k + 1, RatFunc(0))
        out[7] = pf.coefficient(_S)
        out[8] = pf.coefficient(_S * _X)
        seen = {(a.key(), j) for a, j, _ in pf.terms}
        expected = {(_ONE.key(), j) for j in units} | {
            (_S.key(), 1),
            ((_S * _X).key(), 1),
        }
        if seen - expected:
            raise PoleShapeError("unexpected pole in the block kernel")
        cached = _COEFF_CACHE["c"] = out
    return dict(cached)


def coefficients_chat() -> Dict[int, RatFunc]:
    """Coefficients of the kernel at s = 1, where two poles coalesce.

    The 1/(1-s t) pole merges into the t = 1 stack, which then reaches
    order 7:
        chat_0 + sum_{k=0..6} chat_{k+1} k! t^k/(1-t)^(k+1)
               + chat_8/(1-t x),
    with each chat_i a rational function of x alone.
    """
    cached = _COEFF_CACHE.get("chat")
    if cached is None:
        kernel = transition_kernel().subs_value("s", 1)
        try:
            pf = partial_fraction_t(kernel)
        except ValueError as exc:
            raise PoleShapeError(str(exc)) from exc
        if not (pf.reassemble() - kernel).is_zero:
            raise PoleShapeError("partial fractions do not reassemble the kernel")
        units = _unit_coefficients(pf, 7)
        out = {0: pf.c0}
        for k in range(7):
            out[k + 1] = units.get(k + 1, RatFunc(0))
        out[8] = pf.coefficient(_X)
        seen = {(a.key(), j) for a, j, _ in pf.terms}
        expected = {(_ONE.key(), j) for j in units} | {(_X.key(), 1)}
        if seen - expected:
            raise PoleShapeError("unexpected pole in the s = 1 block kernel")
        cached = _COEFF_CACHE["chat"] = out
    return dict(cached)
