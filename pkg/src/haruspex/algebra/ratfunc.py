"""Exact rational functions with factored denominators.

A RatFunc is num / (den_const * prod(F_i ** e_i)) with integer-polynomial
numerator and a canonically ordered list of denominator factors.  The
denominator side carries no sign and no common content: reduction cancels
the integer content against den_const and trial-divides the numerator by
each factor.  Factors recognized as irreducible (the cyclotomic family,
anything linear in one variable with coprime parts) make that reduction
complete; an unrecognized composite factor falls back to a real polynomial
gcd so the reduced-form invariant holds for arbitrary input too.

Substitutions all go through one clearing routine able to send a variable
to any polynomial ratio p/q, which covers the whole binding family used
here: s -> 1, s -> x**j, s -> s*x, t -> t/x, t -> 1/s, t -> 1/(s*x).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .cyclotomic import cyclotomic, cyclotomic_factor
from .intpoly import NEG_INF, VAR_ORDER, IntPoly, gcd_int_poly

Scalar = Union[int, Fraction]


class PoleError(ZeroDivisionError):
    """A substitution landed on a zero of the denominator."""


_IRREDUCIBLE_CACHE: dict = {}


def _likely_irreducible(f: IntPoly) -> bool:
    key = f.key()
    hit = _IRREDUCIBLE_CACHE.get(key)
    if hit is not None:
        return hit
    result = False
    g = f.drop_unused()
    if g.nvars == 1:
        if g.degree() == 1:
            result = True
        else:
            fac = cyclotomic_factor(g) if g.vars == ("x",) else None
            if fac is not None:
                result = (
                    len(fac.exponents) == 1
                    and next(iter(fac.exponents.values())) == 1
                    and fac.remainder.is_constant()
                )
    elif g.nvars >= 2:
        for v in g.vars:
            if g.degree(v) == 1:
                a = g.coeff_of(v, 1)
                b = g.coeff_of(v, 0)
                if gcd_int_poly(a, b).is_constant():
                    result = True
                break
    _IRREDUCIBLE_CACHE[key] = result
    return result


def _split_monomial(f: IntPoly):
    """Factor out the largest monomial dividing f; returns (exps_by_var, core)."""
    mins = None
    for e, _ in f.terms():
        if mins is None:
            mins = list(e)
        else:
            mins = [min(a, b) for a, b in zip(mins, e)]
    if mins is None or not any(mins):
        return {}, f
    core = IntPoly.from_terms(
        f.vars, ((tuple(a - b for a, b in zip(e, mins)), c) for e, c in f.terms())
    )
    out = {v: m for v, m in zip(f.vars, mins) if m}
    return out, core


def _sign_canon(f: IntPoly):
    """Return (sign, g) with g's graded-lex-lowest coefficient positive."""
    low = min((sum(e), e) for e, _ in f.terms())[1]
    for e, c in f.terms():
        if e == low:
            return (-1, -f) if c < 0 else (1, f)
    raise AssertionError("unreachable")


class RatFunc:
    """An exact rational function num / (den_const * prod(factors))."""

    __slots__ = ("num", "factors", "den_const", "_den")

    def __init__(
        self,
        num: Union[IntPoly, int],
        factors: Iterable = (),
        den_const: int = 1,
    ):
        if isinstance(num, int):
            num = IntPoly.const((), num)
        if den_const == 0:
            raise ZeroDivisionError("zero denominator")
        sign = 1
        if den_const < 0:
            sign, den_const = -1, -den_const

        fmap: dict = {}
        polys: dict = {}

        def push(f: IntPoly, e: int):
            nonlocal sign, den_const
            if e == 0:
                return
            if f.is_zero:
                raise ZeroDivisionError("zero factor in denominator")
            f = f.drop_unused()
            c = f.content()
            if c > 1:
                f = f.div_int(c)
                den_const *= c**e
            s, f = _sign_canon(f)
            if s < 0 and e % 2:
                sign = -sign
            if f.is_constant():
                den_const *= f.constant_term() ** e
                return
            mono, core = _split_monomial(f)
            for v, m in mono.items():
                vp = IntPoly.variable(v)
                k = vp.key()
                fmap[k] = fmap.get(k, 0) + m * e
                polys[k] = vp
            if core.is_constant():
                den_const *= core.constant_term() ** e
                return
            # substitutions can hand us a composite like 1 - x**3; keep the
            # factor list canonical by splitting pure-x cores into cyclotomics
            if core.vars == ("x",) and not _likely_irreducible(core):
                fac = cyclotomic_factor(core)
                if fac.exponents:
                    if fac.unit < 0 and e % 2:
                        sign = -sign
                    for kk, ee in fac.exponents.items():
                        psi = cyclotomic(kk)
                        pk = psi.key()
                        fmap[pk] = fmap.get(pk, 0) + ee * e
                        polys[pk] = psi
                    if fac.remainder.is_constant():
                        den_const *= fac.remainder.constant_term() ** e
                    else:
                        push(fac.remainder, e)
                    return
            k = core.key()
            fmap[k] = fmap.get(k, 0) + e
            polys[k] = core

        for f, e in factors:
            if isinstance(f, int):
                f = IntPoly.const((), f)
            if e < 0:
                raise ValueError("factor exponents must be nonnegative")
            push(f, e)

        self.num = num * sign
        self.factors = tuple(
            (polys[k], fmap[k]) for k in sorted(fmap) if fmap[k] > 0
        )
        self.den_const = den_const
        self._den = None
        self._reduce()

    # ------------------------------------------------------------------
    # construction helpers

    @classmethod
    def from_poly(cls, p: Union[IntPoly, int]) -> "RatFunc":
        return cls(p)

    @classmethod
    def from_scalar(cls, q: Scalar) -> "RatFunc":
        if isinstance(q, Fraction):
            return cls(IntPoly.const((), q.numerator), (), q.denominator)
        return cls(IntPoly.const((), q))

    @classmethod
    def from_num_den(cls, num: IntPoly, den: Union[IntPoly, int]) -> "RatFunc":
        """Build from an unfactored denominator, recovering standard factors."""
        if isinstance(den, int):
            return cls(num, (), den)
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        return cls(num, _factor_denominator(den))

    # ------------------------------------------------------------------
    # normalization

    def _reduce(self) -> None:
        num = self.num
        if num.is_zero:
            self.factors = ()
            self.den_const = 1
            self.num = IntPoly.zero(())
            return
        dc = self.den_const
        g = math.gcd(num.content(), dc)
        if g > 1:
            num = num.div_int(g)
            dc //= g
        factors = list(self.factors)
        while True:
            kept = []
            for f, e in factors:
                while e > 0:
                    try:
                        num = num.exact_div(f)
                    except ValueError:
                        break
                    e -= 1
                if e:
                    kept.append((f, e))
            factors = kept
            split = None
            for i, (f, e) in enumerate(factors):
                if _likely_irreducible(f):
                    continue
                g2 = gcd_int_poly(num, f)
                if not g2.is_constant():
                    split = (i, g2)
                    break
            if split is None:
                break
            i, g2 = split
            f, e = factors[i]
            h = f.exact_div(g2)
            repl = [(g2, e)] + ([] if h.is_constant() else [(h, e)])
            factors[i : i + 1] = repl
        g = math.gcd(num.content(), dc)
        if g > 1:
            num = num.div_int(g)
            dc //= g
        merged: dict = {}
        polys: dict = {}
        for f, e in factors:
            f = f.drop_unused()
            k = f.key()
            merged[k] = merged.get(k, 0) + e
            polys[k] = f
        self.num = num.drop_unused()
        self.factors = tuple((polys[k], merged[k]) for k in sorted(merged))
        self.den_const = dc
        self._den = None

    # ------------------------------------------------------------------
    # inspection

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def den_poly(self) -> IntPoly:
        """The expanded denominator, den_const included."""
        if self._den is None:
            d = IntPoly.const((), self.den_const)
            for f, e in self.factors:
                d = d * f**e
            self._den = d
        return self._den

    def vars(self) -> tuple:
        seen = set(self.num.vars)
        for f, _ in self.factors:
            seen.update(f.vars)
        return tuple(v for v in VAR_ORDER if v in seen)

    def as_poly(self) -> IntPoly:
        """The numerator, provided the denominator is exactly 1."""
        if self.factors or self.den_const != 1:
            raise ValueError("not a polynomial")
        return self.num

    def as_scalar(self) -> Fraction:
        if self.factors or not self.num.is_constant():
            raise ValueError("not a constant")
        return Fraction(self.num.constant_term(), self.den_const)

    def __bool__(self) -> bool:
        return not self.is_zero

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self.num * other.den_poly()) == (other.num * self.den_poly())

    def __repr__(self) -> str:
        from . import textform

        return f"RatFunc({textform.rat_text(self)!r})"

    def __str__(self) -> str:
        from . import textform

        return textform.rat_text(self)

    # ------------------------------------------------------------------
    # arithmetic

    def __neg__(self) -> "RatFunc":
        out = object.__new__(RatFunc)
        out.num = -self.num
        out.factors = self.factors
        out.den_const = self.den_const
        out._den = self._den
        return out

    def __add__(self, other) -> "RatFunc":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        fa = {f.key(): (f, e) for f, e in self.factors}
        fb = {f.key(): (f, e) for f, e in other.factors}
        keys = set(fa) | set(fb)
        lcm_f = []
        comp_a = IntPoly.one(())
        comp_b = IntPoly.one(())
        for k in sorted(keys):
            f, ea = fa.get(k, (None, 0))
            g, eb = fb.get(k, (None, 0))
            poly = f if f is not None else g
            e = max(ea, eb)
            lcm_f.append((poly, e))
            if e > ea:
                comp_a = comp_a * poly ** (e - ea)
            if e > eb:
                comp_b = comp_b * poly ** (e - eb)
        dc = self.den_const * other.den_const // math.gcd(
            self.den_const, other.den_const
        )
        na = self.num * comp_a * (dc // self.den_const)
        nb = other.num * comp_b * (dc // other.den_const)
        return RatFunc(na + nb, lcm_f, dc)

    __radd__ = __add__

    def __sub__(self, other) -> "RatFunc":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RatFunc":
        return (-self) + other

    def __mul__(self, other) -> "RatFunc":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(
            self.num * other.num,
            list(self.factors) + list(other.factors),
            self.den_const * other.den_const,
        )

    __rmul__ = __mul__

    def reciprocal(self) -> "RatFunc":
        if self.is_zero:
            raise ZeroDivisionError("reciprocal of zero")
        c = self.num.content()
        s, p = _sign_canon(self.num.div_int(c))
        num = IntPoly.const((), s * self.den_const)
        for f, e in self.factors:
            num = num * f**e
        return RatFunc(num, _factor_denominator(p), c)

    def __truediv__(self, other) -> "RatFunc":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.reciprocal()

    def __rtruediv__(self, other) -> "RatFunc":
        return _coerce(other) * self.reciprocal()

    def __pow__(self, k: int) -> "RatFunc":
        if k < 0:
            return self.reciprocal() ** (-k)
        out = RatFunc(IntPoly.one(()))
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    # ------------------------------------------------------------------
    # calculus

    def differentiate(self, var: str, order: int = 1) -> "RatFunc":
        """Exact partial derivative of the given order."""
        f = self
        for _ in range(order):
            f = f._diff_once(var)
        return f

    def _diff_once(self, var: str) -> "RatFunc":
        active = []
        passive = []
        for f, e in self.factors:
            if var in f.vars and f.degree(var) > 0:
                active.append((f, e))
            else:
                passive.append((f, e))
        num = self.num
        dnum = num.partial(var) if var in num.vars else IntPoly.zero(num.vars)
        prod_active = IntPoly.one(())
        for f, _ in active:
            prod_active = prod_active * f
        total = dnum * prod_active
        for i, (f, e) in enumerate(active):
            partial = f.partial(var)
            rest = IntPoly.one(())
            for j, (g, _) in enumerate(active):
                if j != i:
                    rest = rest * g
            total = total - num * partial * rest * e
        new_factors = [(f, e + 1) for f, e in active] + passive
        return RatFunc(total, new_factors, self.den_const)

    # ------------------------------------------------------------------
    # substitution

    def subs_value(self, var: str, value: int) -> "RatFunc":
        """Substitute an integer for a variable; raises PoleError on a pole."""
        num = self.num.subs(var, value) if var in self.num.vars else self.num
        dc = self.den_const
        sign = 1
        fac = []
        for f, e in self.factors:
            if var not in f.vars:
                fac.append((f, e))
                continue
            g = f.subs(var, value)
            if g.is_zero:
                raise PoleError(f"substitution {var} := {value} hits a pole")
            if g.is_constant():
                c = g.constant_term()
                if c < 0:
                    if e % 2:
                        sign = -sign
                    c = -c
                dc *= c**e
            else:
                fac.append((g, e))
        return RatFunc(num * sign, fac, dc)

    def subs_ratio(self, var: str, p: IntPoly, q: IntPoly) -> "RatFunc":
        """Substitute var := p / q and clear; p, q are polynomials, q nonzero.

        Covers s := x**j (q = 1), s := s*x, t := t/x, t := 1/s, t := 1/(s*x).
        """
        if q.is_zero:
            raise ZeroDivisionError("substitution with zero denominator")
        if q.is_constant() and q.constant_term() in (1, -1):
            c = q.constant_term()
            return self._subs_poly(var, p * c)

        def clear(f: IntPoly):
            d = f.degree(var) if var in f.vars else 0
            if d in (0, NEG_INF):
                return f, 0
            d = int(d)
            out = IntPoly.zero(())
            for a in range(d + 1):
                row = f.coeff_of(var, a) if var in f.vars else f
                if row.is_zero:
                    continue
                out = out + row * p**a * q ** (d - a)
            return out, d

        cnum, dn = clear(self.num)
        fac = []
        qpow_balance = -dn
        for f, e in self.factors:
            cf, df = clear(f)
            if cf.is_zero:
                raise PoleError("substitution hits a pole")
            fac.append((cf, e))
            qpow_balance += df * e
        if qpow_balance >= 0:
            cnum = cnum * q**qpow_balance
        else:
            fac.append((q, -qpow_balance))
        return RatFunc(cnum, fac, self.den_const)

    def _subs_poly(self, var: str, p: IntPoly) -> "RatFunc":
        num = self.num.subs(var, p) if var in self.num.vars else self.num
        fac = []
        for f, e in self.factors:
            if var in f.vars:
                g = f.subs(var, p)
                if g.is_zero:
                    raise PoleError(f"substitution {var} := polynomial hits a pole")
                fac.append((g, e))
            else:
                fac.append((f, e))
        return RatFunc(num, fac, self.den_const)

    # ------------------------------------------------------------------
    # series

    def series_coeffs(self, n_terms: int):
        """First n_terms + 1 Taylor coefficients at the origin, exact.

        Univariate functions give integers when the expansion is integral,
        Fractions otherwise.
        """
        vs = self.vars()
        if len(vs) > 1:
            raise ValueError("series_coeffs needs a univariate function")
        if not vs:
            c = self.as_scalar()
            c = int(c) if c.denominator == 1 else c
            return [c] + [0] * n_terms
        v = vs[0]
        num = self.num.lift(vs) if self.num.vars != vs else self.num
        den = self.den_poly().lift(vs)
        nrep = list(num.rep) if num.nvars == 1 else [num.constant_term()]
        drep = list(den.rep)
        if not drep or drep[0] == 0:
            raise PoleError("series expansion at a pole of the function")
        d0 = drep[0]
        out = []
        for k in range(n_terms + 1):
            acc = Fraction(nrep[k]) if k < len(nrep) else Fraction(0)
            for j in range(1, min(k, len(drep) - 1) + 1):
                acc -= drep[j] * out[k - j]
            c = acc / d0
            out.append(c)
        return [int(c) if c.denominator == 1 else c for c in out]

    def series_in(self, var: str, n_terms: int) -> list:
        """Expand in one variable; coefficients are RatFuncs in the rest."""
        num_rows = _var_rows(self.num, var)
        den_rows = _var_rows(self.den_poly(), var)
        if not den_rows or den_rows[0].is_zero:
            raise PoleError("series expansion at a pole of the function")
        d0 = RatFunc(den_rows[0])
        out: list = []
        for k in range(n_terms + 1):
            acc = RatFunc(num_rows[k]) if k < len(num_rows) else RatFunc(0)
            for j in range(1, min(k, len(den_rows) - 1) + 1):
                if not den_rows[j].is_zero:
                    acc = acc - RatFunc(den_rows[j]) * out[k - j]
            out.append(acc / d0)
        return out


def _var_rows(p: IntPoly, var: str) -> list:
    if var not in p.vars:
        return [p]
    d = p.degree(var)
    if d is NEG_INF:
        return []
    return [p.coeff_of(var, k) for k in range(int(d) + 1)]


def _coerce(x) -> "RatFunc":
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, IntPoly):
        return RatFunc(x)
    if isinstance(x, int):
        return RatFunc(IntPoly.const((), x))
    if isinstance(x, Fraction):
        return RatFunc.from_scalar(x)
    return NotImplemented


def _factor_denominator(den: IntPoly) -> list:
    """Split a raw denominator into standard factors where possible.

    Tries, in order: monomial content, binomial factors 1 +- m for term
    monomials m of the running remainder, and a cyclotomic split of any
    univariate-in-x leftover.  Whatever resists stays one composite factor;
    reduction still guarantees the gcd invariant via its fallback path.
    """
    out: list = []
    mono, core = _split_monomial(den)
    for v, m in mono.items():
        out.append((IntPoly.variable(v), m))
    rem = core
    progress = True
    while progress and not rem.is_constant():
        progress = False
        seen = set()
        for e, c in sorted(rem.terms()):
            if not any(e):
                continue
            key = e
            if key in seen:
                continue
            seen.add(key)
            mono_p = IntPoly.from_terms(rem.vars, [(e, 1)])
            for cand in (1 - mono_p, 1 + mono_p):
                while True:
                    try:
                        rem = rem.exact_div(cand)
                    except ValueError:
                        break
                    _push_refined(out, cand)
                    progress = True
                if rem.is_constant():
                    break
            if rem.is_constant() or progress:
                break
    if not rem.is_constant():
        u = rem.drop_unused()
        if u.nvars == 1 and u.vars == ("x",):
            fac = cyclotomic_factor(u)
            from .cyclotomic import cyclotomic as _cyc

            for k, e in fac.exponents.items():
                out.append((_cyc(k), e))
            rem = fac.remainder * fac.unit
        if not rem.is_constant():
            out.append((rem, 1))
            rem = IntPoly.one(())
    if rem.is_constant() and rem.constant_term() != 1:
        out.append((rem, 1))
    return out


def _push_refined(out: list, cand: IntPoly) -> None:
    # a binomial factor that is univariate in x may itself be a cyclotomic
    # product (1 - x**k); split it so the factored form is the standard one
    u = cand.drop_unused()
    if u.nvars == 1 and u.vars == ("x",):
        fac = cyclotomic_factor(u)
        if fac.remainder.is_constant() and fac.remainder.constant_term() == 1 and fac.unit == 1:
            from .cyclotomic import cyclotomic as _cyc

            for k, e in fac.exponents.items():
                out.append((_cyc(k), e))
            return
    out.append((cand, 1))
