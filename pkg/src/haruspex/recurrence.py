"""Row recurrence for 2-4-2 polygons and its singularity bookkeeping.

f_n(s; x) counts 2-4-2 polygons with n rows of two vertical bonds,
s conjugate to bottom-row length and x to horizontal half-perimeter.
Starting from the unit-height rectangles sx/(1-sx), each step applies
the block kernel through its partial-fraction coefficients: six
derivative evaluations at s = 1, one straight term, and one term with
s dilated to sx.  The same step is run a second time through the
coalesced s = 1 coefficients, and the two routes must agree at s = 1;
a disagreement means a corrupted kernel and stops the iteration.

Every f_n is rational with denominator (1-sx^n) times factors drawn
from (1-sx^j), j < n, and low-order cyclotomics; in particular no
(1-s) survives, so s = 1 is always a regular point.  The certificate
of that shape is recomputed and checked at each step, since the whole
singularity argument rests on it: at s = 1 the only factor that can
vanish on the unit circle for the first time is the cyclotomic carried
in from the dilation chain, and its multiplicity is what the final
verdicts report.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional

from .algebra.cyclotomic import cyclotomic
from .algebra.intpoly import NEG_INF, IntPoly
from .algebra.ratfunc import RatFunc
from .blocks import coefficients_c, coefficients_chat

__all__ = [
    "DenominatorShape",
    "RecurrenceError",
    "RecurrenceState",
    "f1",
    "pk_check",
    "psi_multiplicity",
    "states_through",
    "step",
]

_S = IntPoly.variable("s")
_X = IntPoly.variable("x")
_ONE = IntPoly.one(())


class RecurrenceError(RuntimeError):
    """An exact invariant of the recurrence failed to hold."""


@dataclass(frozen=True)
class DenominatorShape:
    """Exponents of (1-s*x^j) and cyclotomic factors in a denominator."""

    shifted: Dict[int, int]
    cyclotomic: Dict[int, int]

    def as_dict(self) -> dict:
        return {
            "shifted": dict(sorted(self.shifted.items())),
            "cyclotomic": dict(sorted(self.cyclotomic.items())),
        }


def _match_shifted(f: IntPoly) -> Optional[int]:
    """j if f == 1 - s*x^j, else None; j = 0 means a bare (1-s)."""
    if "s" not in f.vars or f.degree("s") != 1:
        return None
    if f.coeff_of("s", 0) != _ONE:
        return None
    lead = -f.coeff_of("s", 1)
    if lead.num_terms() != 1:
        return None
    ((exps, coeff),) = lead.terms()
    if coeff != 1 or any(v != "x" and e for v, e in zip(lead.vars, exps)):
        return None
    return lead.degree("x") if "x" in lead.vars else 0


def _match_cyclotomic(f: IntPoly) -> Optional[int]:
    if any(v != "x" for v in f.vars):
        return None
    d = f.degree("x") if "x" in f.vars else f.degree()
    if d is NEG_INF or d < 1:
        return None
    # phi(k) = d forces k <= 2 d^2, with plenty of slack; the degree
    # filter keeps the scan cheap
    for k in range(1, 2 * int(d) * int(d) + 3):
        target = cyclotomic(k)
        if target.degree() == d and f == target:
            return k
    return None


def classify_denominator(f: RatFunc, n: int) -> DenominatorShape:
    """Certify that f's denominator stays inside the allowed class.

    Allowed: (1-s*x^j) with 1 <= j <= n, the j = n exponent at most
    one, and cyclotomic factors of index at most n - 1.  Anything else,
    including any power of (1-s), raises RecurrenceError.
    """
    shifted: Dict[int, int] = {}
    cyclo: Dict[int, int] = {}
    for poly, e in f.factors:
        j = _match_shifted(poly)
        if j is not None:
            if j == 0:
                raise RecurrenceError(
                    f"(1-s) factor in the denominator at level {n}"
                )
            if j > n:
                raise RecurrenceError(
                    f"(1-s*x^{j}) beyond level {n} in the denominator"
                )
            shifted[j] = shifted.get(j, 0) + e
            continue
        k = _match_cyclotomic(poly)
        if k is not None:
            if k > n - 1:
                raise RecurrenceError(
                    f"cyclotomic factor of index {k} too high for level {n}"
                )
            cyclo[k] = cyclo.get(k, 0) + e
            continue
        raise RecurrenceError(
            f"denominator factor outside the certified class at level {n}"
        )
    if shifted.get(n, 0) > 1:
        raise RecurrenceError(
            f"(1-s*x^{n}) enters the denominator more than once at level {n}"
        )
    return DenominatorShape(shifted, cyclo)


@dataclass(frozen=True)
class RecurrenceState:
    """Level n of the recurrence: f_n(s;x), f_n(1;x), denominator shape."""

    n: int
    f_s: RatFunc
    f_at_1: RatFunc
    certificate: DenominatorShape


def _check_no_constant_row(f_s: RatFunc, n: int) -> None:
    # the Hadamard pairing silently drops the t-free kernel term; that is
    # only sound while [s^0] f_n = 0, so insist on it at every level
    if not f_s.subs_value("s", 0).is_zero:
        raise RecurrenceError(f"f_{n} has a zero-length-row term")


def f1() -> RecurrenceState:
    """Unit-height rectangles: f_1(s;x) = sx/(1-sx)."""
    f_s = RatFunc(_S * _X, [(1 - _S * _X, 1)])
    f_at_1 = RatFunc(_X, [(1 - _X, 1)])
    return RecurrenceState(1, f_s, f_at_1, classify_denominator(f_s, 1))


def step(state: RecurrenceState) -> RecurrenceState:
    """Advance one level, running both coefficient routes.

    The general-s route builds f_{n+1}(s;x); the coalesced route builds
    f_{n+1}(1;x) directly.  Their agreement at s = 1 is checked before
    anything is returned, as is the denominator-class certificate.
    """
    c = coefficients_c()
    chat = coefficients_chat()
    n = state.n
    f_s = state.f_s
    _check_no_constant_row(f_s, n)

    derivs_at_1: List[RatFunc] = []
    g = f_s
    for k in range(7):
        derivs_at_1.append(g.subs_value("s", 1))
        if k < 6:
            g = g.differentiate("s")

    dilated = f_s.subs_ratio("s", _S * _X, _ONE)
    new_f_s = c[7] * f_s + c[8] * dilated
    for k in range(6):
        new_f_s = new_f_s + c[k + 1] * derivs_at_1[k]

    at_x = f_s.subs_ratio("s", _X, _ONE)
    new_f_1 = chat[8] * at_x
    for k in range(7):
        new_f_1 = new_f_1 + chat[k + 1] * derivs_at_1[k]

    if not (new_f_s.subs_value("s", 1) - new_f_1).is_zero:
        raise RecurrenceError(
            f"s = 1 routes disagree between levels {n} and {n + 1}"
        )
    _check_no_constant_row(new_f_s, n + 1)
    cert = classify_denominator(new_f_s, n + 1)
    return RecurrenceState(n + 1, new_f_s, new_f_1, cert)


def states_through(n_max: int) -> List[RecurrenceState]:
    """All levels 1..n_max, in order."""
    if n_max < 1:
        raise ValueError("need n_max >= 1")
    states = [f1()]
    while states[-1].n < n_max:
        states.append(step(states[-1]))
    return states


def psi_multiplicity(f: RatFunc, k: int) -> int:
    """Exponent of the k-th cyclotomic factor in f's denominator.

    f is kept reduced, so the factor list is canonical; a composite
    factor that slipped through normalization is still handled by
    explicit division.
    """
    if k < 1:
        raise ValueError("cyclotomic index must be positive")
    target = cyclotomic(k)
    total = 0
    for poly, e in f.factors:
        if poly == target:
            total += e
        elif set(poly.vars) <= {"x"} and not poly.is_constant():
            while True:
                try:
                    poly = poly.exact_div(target)
                except ValueError:
                    break
                total += e
    return total


def pk_check(k: int) -> dict:
    """Root report for p_k(x) = x^(2k+2) + x^(k+1) - x^k + 1 at x = +-1.

    These are the on-circle zeros of the dilation coefficient after s
    is bound to x^k, the one place the singularity induction could
    lose a factor; a simple zero at -1 for even k is the expected
    shape, anything else would break the argument.
    """
    if k < 1:
        raise ValueError("need k >= 1")
    p = _X ** (2 * k + 2) + _X ** (k + 1) - _X**k + 1
    at_one = p.subs("x", 1).constant_term()
    at_minus_one = p.subs("x", -1).constant_term()
    report = {
        "k": k,
        "value_at_one": at_one,
        "value_at_minus_one": at_minus_one,
        "root_at_minus_one": at_minus_one == 0,
        "simple_root": None,
    }
    if at_minus_one == 0:
        d = p.partial("x").subs("x", -1).constant_term()
        report["simple_root"] = d != 0
    return report
