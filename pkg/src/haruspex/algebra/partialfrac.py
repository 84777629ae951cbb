"""Partial fractions over t in a fixed basis, and the Hadamard pairing.

The basis is the one the 2-4-2 machinery needs: a t-free part, poles at
t = 1 of order up to seven written as (j-1)! t^(j-1) / (1-t)^j, and
simple geometric poles 1/(1 - a*t) for monomial a (in practice s, s*x,
or x).  Against that basis the coefficientwise product of two series in
t collapses to evaluations: pairing f with (j-1)! t^(j-1) / (1-a*t)^j
gives the (j-1)-st t-derivative of f at t = a, so a simple pole gives
plain evaluation f(a).  Both identities need [t^0] f = 0 only to let
the t-free part of the kernel drop out, which is how the caller uses
them; hadamard_apply checks that and ignores c0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial

from .intpoly import IntPoly
from .ratfunc import RatFunc

MAX_UNIT_ORDER = 7

_ONE = IntPoly.const((), 1)


def basis_element(alpha: IntPoly, order: int) -> RatFunc:
    """(order-1)! t^(order-1) / (1 - alpha*t)^order as a RatFunc."""
    num = IntPoly.monomial(("t",), (order - 1,), factorial(order - 1))
    den = 1 - IntPoly.variable("t") * alpha
    return RatFunc(num, [(den, order)])


@dataclass
class PartialFractionForm:
    """t-free part c0 plus terms (alpha, order, coefficient).

    A term stands for coefficient * (order-1)! t^(order-1) / (1-alpha*t)^order.
    Unit poles are the terms with alpha = 1.
    """

    c0: RatFunc = field(default_factory=lambda: RatFunc(0))
    terms: list = field(default_factory=list)

    def coefficient(self, alpha, order: int = 1) -> RatFunc:
        for a, j, c in self.terms:
            if j == order and a == alpha:
                return c
        return RatFunc(0)

    def reassemble(self) -> RatFunc:
        total = self.c0
        for alpha, order, c in self.terms:
            total = total + c * basis_element(alpha, order)
        return total


def partial_fraction_t(f: RatFunc) -> PartialFractionForm:
    """Decompose over t; the denominator's t-part must fit the basis.

    Allowed t-dependence of the denominator: a pole at t = 1 of order at
    most seven plus simple poles 1 - a*t with monomial a.  Geometric
    poles are peeled by residue (clear the factor, evaluate at its
    root), then the pole at t = 1 from the highest order down.
    """
    one = IntPoly.one(())
    unit_order = 0
    geoms = []
    for poly, e in f.factors:
        if "t" not in poly.vars or poly.degree("t") == 0:
            continue
        if poly.degree("t") != 1 or poly.coeff_of("t", 0) != 1:
            raise ValueError("denominator outside the partial-fraction basis")
        alpha = -poly.coeff_of("t", 1)
        if alpha == 1:
            unit_order += e
            continue
        if alpha.num_terms() != 1 or e != 1:
            raise ValueError("denominator outside the partial-fraction basis")
        geoms.append(alpha)
    if unit_order > MAX_UNIT_ORDER:
        raise ValueError("pole at t = 1 of order beyond the basis")

    pf = PartialFractionForm()
    rest = f
    for alpha in geoms:
        factor = 1 - IntPoly.variable("t") * alpha
        c = (f * factor).subs_ratio("t", one, alpha)
        pf.terms.append((alpha, 1, c))
        rest = rest - c * basis_element(alpha, 1)
    t1 = 1 - IntPoly.variable("t")
    unit_terms = []
    for m in range(unit_order, 0, -1):
        val = (rest * t1**m).subs_value("t", 1)
        if val.is_zero:
            continue
        c = val / factorial(m - 1)
        unit_terms.append((_ONE, m, c))
        rest = rest - c * basis_element(_ONE, m)
    pf.terms = list(reversed(unit_terms)) + pf.terms
    if "t" in rest.vars():
        raise ValueError("residual t dependence after decomposition")
    pf.c0 = rest
    return pf


def hadamard_apply(f: RatFunc, pf: PartialFractionForm) -> RatFunc:
    """Coefficientwise-in-t pairing of f with a decomposed kernel.

    Requires [t^0] f = 0, so the t-free part of the kernel contributes
    nothing.  A term (alpha, order, c) pairs to c times the t-derivative
    of f of order-1 evaluated at t = alpha.  A PoleError escapes if an
    evaluation lands on a pole of f.
    """
    if "t" not in f.vars():
        if f.is_zero:
            return RatFunc(0)
        raise ValueError("pairing needs a series in t with no constant term")
    if not f.subs_value("t", 0).is_zero:
        raise ValueError("pairing requires a vanishing constant term in t")
    one = IntPoly.one(())
    total = RatFunc(0)
    derivs: dict = {}
    for alpha, order, c in pf.terms:
        k = order - 1
        if k not in derivs:
            derivs[k] = f.differentiate("t", k)
        d = derivs[k]
        val = d.subs_value("t", 1) if alpha == 1 else d.subs_ratio("t", alpha, one)
        total = total + c * val
    return total
