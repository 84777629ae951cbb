"""Cyclotomic-style factors of 1 - x**n and exact factor extraction.

The factor family is defined multiplicatively: 1 - x**n is the product of
psi(k) over the divisors k of n, with psi(1) = 1 - x.  So psi(2) = 1 + x,
psi(3) = 1 + x + x**2, psi(4) = 1 + x**2, psi(6) = 1 - x + x**2, and in
general psi(k) is the usual k-th cyclotomic polynomial up to the sign of
psi(1).  Each psi(k) is irreducible over the rationals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .intpoly import IntPoly


@lru_cache(maxsize=None)
def cyclotomic(k: int) -> IntPoly:
    """The factor psi(k) of 1 - x**k, an IntPoly in x.

    >>> from .textform import poly_text
    >>> poly_text(cyclotomic(1), style="factor")
    '1-x'
    >>> poly_text(cyclotomic(4), style="factor")
    '1+x^2'
    >>> poly_text(cyclotomic(6), style="factor")
    '1-x+x^2'
    """
    if k < 1:
        raise ValueError("cyclotomic index must be a positive integer")
    x = IntPoly.variable("x")
    p = 1 - x**k
    for d in range(1, k):
        if k % d == 0:
            p = p.exact_div(cyclotomic(d))
    return p


def _phi(k: int) -> int:
    n, result, p = k, k, 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


@dataclass(frozen=True)
class CyclotomicFactorization:
    """A maximal split p = unit * prod(psi(k)**e) * remainder.

    The remainder is divisible by no psi(k) at all, and the unit carries the
    sign so the remainder's lowest coefficient is positive.
    """

    exponents: dict = field(default_factory=dict)
    remainder: IntPoly = field(default_factory=lambda: IntPoly.one(("x",)))
    unit: int = 1

    def reassemble(self) -> IntPoly:
        p = self.remainder * self.unit
        for k, e in self.exponents.items():
            p = p * cyclotomic(k) ** e
        return p

    def degree_of_product(self) -> int:
        return sum(_phi(k) * e for k, e in self.exponents.items())

    def to_dict(self) -> dict:
        from .textform import poly_text

        return {
            "exponents": {str(k): e for k, e in sorted(self.exponents.items())},
            "remainder": poly_text(self.remainder, style="factor"),
            "unit": self.unit,
        }


def cyclotomic_factor(p: IntPoly) -> CyclotomicFactorization:
    """Extract every psi(k) factor from a univariate polynomial in x.

    >>> x = IntPoly.variable("x")
    >>> cyclotomic_factor((1 - x) ** 3).exponents
    {1: 3}
    >>> f = cyclotomic_factor((1 - x) ** 9 * (1 + x) ** 2)
    >>> (f.exponents, f.remainder == 1, f.unit)
    ({1: 9, 2: 2}, True, 1)
    >>> r = cyclotomic_factor(1 + 2 * x)
    >>> (r.exponents, r.remainder == 1 + 2 * x)
    ({}, True)
    """
    if p.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    if p.nvars > 1 or (p.nvars == 1 and p.vars != ("x",)):
        p = p.drop_unused()
        if p.nvars > 1 or (p.nvars == 1 and p.vars != ("x",)):
            raise ValueError("cyclotomic factoring expects a polynomial in x alone")
    if p.nvars == 0:
        p = p.lift(("x",))
    exps: dict = {}
    k = 1
    while True:
        d = p.degree()
        if d <= 0:
            break
        if _phi(k) <= d:
            psi = cyclotomic(k)
            while True:
                try:
                    q = p.exact_div(psi)
                except ValueError:
                    break
                p = q
                exps[k] = exps.get(k, 0) + 1
        # phi(k) >= sqrt(k/2), so beyond 2d^2 + 1 no factor can fit
        k += 1
        if k > 2 * d * d + 1:
            break
    unit = 1
    low = None
    for e, c in sorted(p.terms()):
        low = c
        break
    if low is not None and low < 0:
        unit = -1
        p = -p
    return CyclotomicFactorization(exponents=exps, remainder=p, unit=unit)
