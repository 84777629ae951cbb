"""Exact multivariate polynomials over the integers.

The variable universe is fixed and ordered: ``t, s, x, y``.  Every polynomial
carries an ordered subset of these names.  Storage is dense (nested
coefficient lists) for up to two variables and a sparse exponent map for
three or four.  All arithmetic is exact big-integer work; nothing here ever
touches a float.

Multiplication of large operands goes through Kronecker substitution: pack
the coefficients into one huge integer per operand, multiply once, unpack.
CPython's integer product is subquadratic and gmpy2, when present, is far
better still.
"""

from __future__ import annotations

import math
from typing import Iterable, Iterator, Sequence, Union

try:  # optional GMP-backed fast path, results are identical without it
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover - exercised only without gmpy2
    _mpz = int

VAR_ORDER = ("t", "s", "x", "y")
_VAR_INDEX = {v: i for i, v in enumerate(VAR_ORDER)}

NEG_INF = float("-inf")

# Above this many coefficient pairs a schoolbook convolution loses to the
# pack-multiply-unpack round trip.
_KRON_PAIRS_DENSE = 60_000
_KRON_PAIRS_SPARSE = 20_000

Exps = tuple  # exponent tuple aligned with a polynomial's vars


def _check_vars(vars: Sequence[str]) -> tuple:
    vs = tuple(vars)
    idx = [_VAR_INDEX.get(v) for v in vs]
    if None in idx or any(b <= a for a, b in zip(idx, idx[1:])):
        raise ValueError(f"variables must be an ordered subset of {VAR_ORDER}: {vs!r}")
    return vs


def _trim1(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def _trim2(rows: list) -> list:
    for r in rows:
        _trim1(r)
    while rows and not rows[-1]:
        rows.pop()
    return rows


class IntPoly:
    """An exact polynomial with integer coefficients.

    >>> x = IntPoly.variable("x")
    >>> p = (1 - x) * (1 + x)
    >>> p.terms_sorted()
    [((0,), 1), ((2,), -1)]
    >>> p.degree()
    2
    >>> IntPoly.zero(("x",)).degree()
    -inf
    """

    __slots__ = ("vars", "rep", "_key")

    def __init__(self, vars: Sequence[str], rep):
        self.vars = _check_vars(vars)
        n = len(self.vars)
        if n == 0:
            if not isinstance(rep, int):
                raise TypeError("constant polynomial needs an int")
        elif n == 1:
            rep = _trim1(list(rep))
        elif n == 2:
            rep = _trim2([list(r) for r in rep])
        else:
            rep = {tuple(e): c for e, c in rep.items() if c != 0}
        self.rep = rep
        self._key = None

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls, vars: Sequence[str] = ()) -> "IntPoly":
        n = len(vars)
        return cls(vars, 0 if n == 0 else ([] if n <= 2 else {}))

    @classmethod
    def const(cls, vars: Sequence[str], c: int) -> "IntPoly":
        n = len(vars)
        if c == 0:
            return cls.zero(vars)
        if n == 0:
            return cls(vars, c)
        if n == 1:
            return cls(vars, [c])
        if n == 2:
            return cls(vars, [[c]])
        return cls(vars, {(0,) * n: c})

    @classmethod
    def one(cls, vars: Sequence[str] = ()) -> "IntPoly":
        return cls.const(vars, 1)

    @classmethod
    def monomial(cls, vars: Sequence[str], exps: Sequence[int], c: int = 1) -> "IntPoly":
        vars = tuple(vars)
        if len(exps) != len(vars):
            raise ValueError("exponent tuple does not match variables")
        return cls.from_terms(vars, [(tuple(exps), c)])

    @classmethod
    def variable(cls, name: str, vars: Sequence[str] | None = None) -> "IntPoly":
        if vars is None:
            vars = (name,)
        vars = tuple(vars)
        exps = tuple(1 if v == name else 0 for v in vars)
        if sum(exps) != 1:
            raise ValueError(f"{name!r} not among {vars!r}")
        return cls.monomial(vars, exps)

    @classmethod
    def from_terms(cls, vars: Sequence[str], terms: Iterable[tuple]) -> "IntPoly":
        vars = tuple(vars)
        n = len(vars)
        if n == 0:
            tot = 0
            for e, c in terms:
                tot += c
            return cls(vars, tot)
        if n == 1:
            coeffs: list = []
            for e, c in terms:
                i = e[0]
                if i >= len(coeffs):
                    coeffs.extend([0] * (i + 1 - len(coeffs)))
                coeffs[i] += c
            return cls(vars, coeffs)
        if n == 2:
            rows: list = []
            for e, c in terms:
                i, j = e
                while i >= len(rows):
                    rows.append([])
                r = rows[i]
                if j >= len(r):
                    r.extend([0] * (j + 1 - len(r)))
                r[j] += c
            return cls(vars, rows)
        d: dict = {}
        for e, c in terms:
            e = tuple(e)
            d[e] = d.get(e, 0) + c
        return cls(vars, d)

    # ------------------------------------------------------------------
    # inspection

    @property
    def nvars(self) -> int:
        return len(self.vars)

    @property
    def is_zero(self) -> bool:
        n = self.nvars
        if n == 0:
            return self.rep == 0
        return not self.rep

    def is_constant(self) -> bool:
        return self.degree() <= 0

    def constant_term(self) -> int:
        n = self.nvars
        if n == 0:
            return self.rep
        if n == 1:
            return self.rep[0] if self.rep else 0
        if n == 2:
            return self.rep[0][0] if self.rep and self.rep[0] else 0
        return self.rep.get((0,) * n, 0)

    def terms(self) -> Iterator[tuple]:
        """Yield ``(exponent_tuple, coefficient)`` for every nonzero term."""
        n = self.nvars
        if n == 0:
            if self.rep != 0:
                yield (), self.rep
        elif n == 1:
            for i, c in enumerate(self.rep):
                if c:
                    yield (i,), c
        elif n == 2:
            for i, row in enumerate(self.rep):
                for j, c in enumerate(row):
                    if c:
                        yield (i, j), c
        else:
            yield from self.rep.items()

    def terms_sorted(self) -> list:
        return sorted(self.terms())

    def num_terms(self) -> int:
        return sum(1 for _ in self.terms())

    def degree(self, var: str | None = None):
        """Total degree, or degree in one variable; -inf for the zero poly."""
        if self.is_zero:
            return NEG_INF
        if var is None:
            return max(sum(e) for e, _ in self.terms())
        i = self.vars.index(var)
        return max(e[i] for e, _ in self.terms())

    def degrees(self) -> tuple:
        """Per-variable degree tuple; zero polynomial gives all -1."""
        if self.is_zero:
            return (-1,) * self.nvars
        out = [0] * self.nvars
        for e, _ in self.terms():
            for i, ei in enumerate(e):
                if ei > out[i]:
                    out[i] = ei
        return tuple(out)

    def max_abs_coeff(self) -> int:
        m = 0
        for _, c in self.terms():
            a = -c if c < 0 else c
            if a > m:
                m = a
        return m

    def key(self) -> tuple:
        if self._key is None:
            self._key = (self.vars, tuple(self.terms_sorted()))
        return self._key

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPoly.const(self.vars, other)
        if not isinstance(other, IntPoly):
            return NotImplemented
        if self.vars != other.vars:
            a, b = unify(self, other)
            return a.key() == b.key()
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __bool__(self) -> bool:
        return not self.is_zero

    def __repr__(self) -> str:
        from . import textform

        return f"IntPoly({textform.poly_text(self)!r})"

    # ------------------------------------------------------------------
    # variable bookkeeping

    def lift(self, newvars: Sequence[str]) -> "IntPoly":
        """Embed into a larger ordered variable tuple."""
        newvars = _check_vars(newvars)
        if newvars == self.vars:
            return self
        pos = []
        for v in self.vars:
            if v not in newvars:
                raise ValueError(f"{v!r} missing from {newvars!r}")
            pos.append(newvars.index(v))
        n = len(newvars)

        def remap(e):
            out = [0] * n
            for p, ei in zip(pos, e):
                out[p] = ei
            return tuple(out)

        return IntPoly.from_terms(newvars, ((remap(e), c) for e, c in self.terms()))

    def drop_unused(self) -> "IntPoly":
        """Forget variables that do not actually occur."""
        degs = self.degrees()
        keep = [i for i, d in enumerate(degs) if d > 0]
        if len(keep) == self.nvars:
            return self
        newvars = tuple(self.vars[i] for i in keep)
        return IntPoly.from_terms(
            newvars, ((tuple(e[i] for i in keep), c) for e, c in self.terms())
        )

    # ------------------------------------------------------------------
    # ring operations

    def _coerce(self, other) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly.const(self.vars, other)
        if isinstance(other, IntPoly):
            return other
        raise TypeError(f"cannot mix IntPoly with {type(other).__name__}")

    def __neg__(self) -> "IntPoly":
        n = self.nvars
        if n == 0:
            return IntPoly(self.vars, -self.rep)
        if n == 1:
            return IntPoly(self.vars, [-c for c in self.rep])
        if n == 2:
            return IntPoly(self.vars, [[-c for c in r] for r in self.rep])
        return IntPoly(self.vars, {e: -c for e, c in self.rep.items()})

    def __add__(self, other) -> "IntPoly":
        other = self._coerce(other)
        a, b = unify(self, other)
        n = a.nvars
        if n == 0:
            return IntPoly(a.vars, a.rep + b.rep)
        if n == 1:
            la, lb = a.rep, b.rep
            if len(la) < len(lb):
                la, lb = lb, la
            out = la[:]
            for i, c in enumerate(lb):
                out[i] += c
            return IntPoly(a.vars, out)
        if n == 2:
            ra, rb = a.rep, b.rep
            if len(ra) < len(rb):
                ra, rb = rb, ra
            out = [r[:] for r in ra]
            for i, row in enumerate(rb):
                tr = out[i]
                if len(tr) < len(row):
                    tr.extend([0] * (len(row) - len(tr)))
                for j, c in enumerate(row):
                    tr[j] += c
            return IntPoly(a.vars, out)
        d = dict(a.rep)
        for e, c in b.rep.items():
            d[e] = d.get(e, 0) + c
        return IntPoly(a.vars, d)

    __radd__ = __add__

    def __sub__(self, other) -> "IntPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "IntPoly":
        return (-self) + self._coerce(other)

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            if other == 0:
                return IntPoly.zero(self.vars)
            if other == 1:
                return self
            n = self.nvars
            if n == 0:
                return IntPoly(self.vars, self.rep * other)
            if n == 1:
                return IntPoly(self.vars, [c * other for c in self.rep])
            if n == 2:
                return IntPoly(self.vars, [[c * other for c in r] for r in self.rep])
            return IntPoly(self.vars, {e: c * other for e, c in self.rep.items()})
        other = self._coerce(other)
        a, b = unify(self, other)
        if a.is_zero or b.is_zero:
            return IntPoly.zero(a.vars)
        n = a.nvars
        na, nb = a.num_terms(), b.num_terms()
        pairs = na * nb
        if n == 1:
            if pairs >= _KRON_PAIRS_DENSE:
                return _kron_mul(a, b)
            return IntPoly(a.vars, _conv1(a.rep, b.rep))
        if n == 2:
            if pairs >= _KRON_PAIRS_DENSE:
                return _kron_mul(a, b)
            return IntPoly(a.vars, _conv2(a.rep, b.rep))
        if n == 0:
            return IntPoly(a.vars, a.rep * b.rep)
        if pairs >= _KRON_PAIRS_SPARSE:
            return _kron_mul(a, b)
        d: dict = {}
        bi = list(b.rep.items())
        for ea, ca in a.rep.items():
            for eb, cb in bi:
                e = tuple(i + j for i, j in zip(ea, eb))
                d[e] = d.get(e, 0) + ca * cb
        return IntPoly(a.vars, d)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPoly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = IntPoly.one(self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base_needed = k > 1
            k >>= 1
            if base_needed and k:
                base = base * base
        return result

    # ------------------------------------------------------------------
    # calculus and substitution

    def partial(self, var: str) -> "IntPoly":
        """Exact partial derivative."""
        i = self.vars.index(var)

        def gen():
            for e, c in self.terms():
                if e[i]:
                    ne = list(e)
                    ne[i] -= 1
                    yield tuple(ne), c * e[i]

        return IntPoly.from_terms(self.vars, gen())

    def coeff_of(self, var: str, k: int) -> "IntPoly":
        """Coefficient of var**k, as a polynomial in the remaining variables."""
        i = self.vars.index(var)
        rest = tuple(v for v in self.vars if v != var)

        def gen():
            for e, c in self.terms():
                if e[i] == k:
                    yield tuple(ei for j, ei in enumerate(e) if j != i), c

        return IntPoly.from_terms(rest, gen())

    def shifted(self, var: str, k: int) -> "IntPoly":
        """Multiply by var**k."""
        if k == 0:
            return self
        i = self.vars.index(var)

        def gen():
            for e, c in self.terms():
                ne = list(e)
                ne[i] += k
                yield tuple(ne), c

        return IntPoly.from_terms(self.vars, gen())

    def subs(self, var: str, value: Union[int, "IntPoly"]) -> "IntPoly":
        """Substitute a polynomial (or integer) for one variable.

        The result lives over the union of the remaining variables and the
        value's variables.
        """
        if var not in self.vars:
            raise ValueError(f"{var!r} not a variable of this polynomial")
        i = self.vars.index(var)
        rest = tuple(v for v in self.vars if v != var)
        if isinstance(value, int):
            value = IntPoly.const((), value)
        tvars = tuple(v for v in VAR_ORDER if v in rest or v in value.vars)
        groups: dict = {}
        for e, c in self.terms():
            k = e[i]
            re = tuple(ei for j, ei in enumerate(e) if j != i)
            groups.setdefault(k, []).append((re, c))
        if not groups:
            return IntPoly.zero(tvars)
        val = value.lift(tvars) if value.vars != tvars else value
        acc = IntPoly.zero(tvars)
        for k in range(max(groups), -1, -1):
            acc = acc * val
            if k in groups:
                acc = acc + IntPoly.from_terms(rest, groups[k]).lift(tvars)
        return acc

    def evaluate(self, **vals: int):
        """Substitute integers; returns an int once no variables remain."""
        p = self
        for v, c in vals.items():
            if v in p.vars:
                p = p.subs(v, c)
        if p.is_constant():
            return p.constant_term()
        return p

    # ------------------------------------------------------------------
    # divisibility

    def content(self) -> int:
        """Nonnegative gcd of all coefficients (0 for the zero polynomial)."""
        g = 0
        for _, c in self.terms():
            g = math.gcd(g, c)
            if g == 1:
                return 1
        return g

    def div_int(self, k: int) -> "IntPoly":
        """Exact division by a nonzero integer."""
        if k == 0:
            raise ZeroDivisionError("division by zero")

        def gen():
            for e, c in self.terms():
                q, r = divmod(c, k)
                if r:
                    raise ValueError(f"coefficient {c} not divisible by {k}")
                yield e, q

        return IntPoly.from_terms(self.vars, gen())

    def exact_div(self, other: Union[int, "IntPoly"]) -> "IntPoly":
        """Exact polynomial division; raises ValueError if not divisible."""
        if isinstance(other, int):
            return self.div_int(other)
        a, b = unify(self, other)
        if b.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        if a.is_zero:
            return a
        n = a.nvars
        if n == 0:
            q, r = divmod(a.rep, b.rep)
            if r:
                raise ValueError("not divisible")
            return IntPoly(a.vars, q)
        if n == 1:
            return IntPoly(a.vars, _exact_div1(a.rep, b.rep))
        if n == 2:
            return IntPoly(a.vars, _exact_div2(a.rep, b.rep))
        return _exact_div_sparse(a, b)

    def divides(self, other: "IntPoly") -> bool:
        try:
            other.exact_div(self)
            return True
        except ValueError:
            return False


def unify(a: IntPoly, b: IntPoly) -> tuple:
    """Lift two polynomials to their common ordered variable tuple."""
    if a.vars == b.vars:
        return a, b
    vs = tuple(v for v in VAR_ORDER if v in a.vars or v in b.vars)
    return a.lift(vs), b.lift(vs)


# ----------------------------------------------------------------------
# dense convolution kernels


def _conv1(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] += ca * cb
    return out


def _conv2(a: list, b: list) -> list:
    ra = max((len(r) for r in a), default=0)
    rb = max((len(r) for r in b), default=0)
    out = [[0] * (ra + rb - 1) for _ in range(len(a) + len(b) - 1)]
    for i, rowa in enumerate(a):
        for p, ca in enumerate(rowa):
            if ca:
                for j, rowb in enumerate(b):
                    tr = out[i + j]
                    for q, cb in enumerate(rowb):
                        if cb:
                            tr[p + q] += ca * cb
    return out


# ----------------------------------------------------------------------
# Kronecker-substitution multiplication


def _kron_mul(a: IntPoly, b: IntPoly) -> IntPoly:
    da, db = a.degrees(), b.degrees()
    bounds = tuple(x + y for x, y in zip(da, db))
    strides = [1] * len(bounds)
    for i in range(len(bounds) - 2, -1, -1):
        strides[i] = strides[i + 1] * (bounds[i + 1] + 1)
    ncells = strides[0] * (bounds[0] + 1)

    na, nb = a.num_terms(), b.num_terms()
    bits = (
        a.max_abs_coeff().bit_length()
        + b.max_abs_coeff().bit_length()
        + min(na, nb).bit_length()
        + 2
    )
    width = ((bits + 7) // 8 + 1) * 8  # bits per cell, byte aligned
    nbytes = width // 8

    ia = _kron_pack(a, strides, nbytes, ncells)
    ib = _kron_pack(b, strides, nbytes, ncells)
    prod = int(_mpz(ia) * _mpz(ib))

    mask_bytes = ncells * nbytes
    prod %= 1 << (8 * mask_bytes)
    raw = prod.to_bytes(mask_bytes, "little")

    half = 1 << (width - 1)
    full = 1 << width
    zero_chunk = bytes(nbytes)
    terms = []
    carry = 0
    # decode balanced base-2**width digits, least significant first
    for cell in range(ncells):
        chunk = raw[cell * nbytes : (cell + 1) * nbytes]
        if carry == 0 and chunk == zero_chunk:
            continue
        val = int.from_bytes(chunk, "little") + carry
        if val >= half:
            val -= full
            carry = 1
        else:
            carry = 0
        if val:
            rem = cell
            e = []
            for s in strides:
                q, rem = divmod(rem, s)
                e.append(q)
            terms.append((tuple(e), val))
    return IntPoly.from_terms(a.vars, terms)


def _kron_pack(p: IntPoly, strides: list, nbytes: int, ncells: int) -> int:
    pos = bytearray(ncells * nbytes)
    neg = bytearray(ncells * nbytes)
    for e, c in p.terms():
        flat = 0
        for ei, s in zip(e, strides):
            flat += ei * s
        off = flat * nbytes
        if c > 0:
            pos[off : off + nbytes] = c.to_bytes(nbytes, "little")
        else:
            neg[off : off + nbytes] = (-c).to_bytes(nbytes, "little")
    return int.from_bytes(bytes(pos), "little") - int.from_bytes(bytes(neg), "little")


# ----------------------------------------------------------------------
# exact division kernels


def _exact_div1(a: list, b: list) -> list:
    r = a[:]
    db = len(b) - 1
    lead = b[-1]
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = r[k]
        if c == 0:
            continue
        qc, rem = divmod(c, lead)
        if rem:
            raise ValueError("not divisible")
        q[k - db] = qc
        for i, bc in enumerate(b):
            r[k - db + i] -= qc * bc
    if any(r):
        raise ValueError("not divisible")
    return q


def _exact_div2(a: list, b: list) -> list:
    # long division in the first variable; coefficients are dense rows in
    # the second, divided exactly via the univariate kernel
    r = [row[:] for row in a]
    db = len(b) - 1
    lead = b[-1]
    qrows: list = []
    while True:
        _trim2(r)
        dr = len(r) - 1
        if dr < db:
            break
        qr = _exact_div1(r[-1], lead)
        qrows.append((dr - db, qr))
        for i, brow in enumerate(b):
            if not brow:
                continue
            tr = r[dr - db + i]
            need = len(qr) + len(brow) - 1
            if len(tr) < need:
                tr.extend([0] * (need - len(tr)))
            for p, qc in enumerate(qr):
                if qc:
                    for s, bc in enumerate(brow):
                        if bc:
                            tr[p + s] -= qc * bc
    if any(any(row) for row in r):
        raise ValueError("not divisible")
    out: list = []
    for pos, qr in qrows:
        while pos >= len(out):
            out.append([])
        out[pos] = qr
    return out


def _exact_div_sparse(a: IntPoly, b: IntPoly) -> IntPoly:
    rem = dict(a.rep)
    bt = sorted(b.rep.items())
    eb, cb = bt[-1]  # lex-leading divisor term
    q: dict = {}
    while rem:
        er = max(rem)
        cr = rem[er]
        de = tuple(i - j for i, j in zip(er, eb))
        if any(d < 0 for d in de):
            raise ValueError("not divisible")
        qc, r = divmod(cr, cb)
        if r:
            raise ValueError("not divisible")
        q[de] = q.get(de, 0) + qc
        for e2, c2 in bt:
            e = tuple(i + j for i, j in zip(de, e2))
            nc = rem.get(e, 0) - qc * c2
            if nc:
                rem[e] = nc
            else:
                rem.pop(e, None)
    return IntPoly(a.vars, q)


# ----------------------------------------------------------------------
# greatest common divisors


def gcd_int_poly(a: IntPoly, b: IntPoly) -> IntPoly:
    """Polynomial gcd over the integers, positive graded-lex-leading sign.

    Primitive pseudo-remainder sequences in the outermost variable with
    recursive content extraction.  Only modest operands should come through
    here; the big recurrence objects keep factored denominators and never do.
    """
    a, b = unify(a, b)
    a, b = a.drop_unused(), b.drop_unused()
    a, b = unify(a, b)
    g = _gcd_rec(a, b)
    return _canon_sign(g)


def _canon_sign(p: IntPoly) -> IntPoly:
    # sign convention throughout: the graded-lex-lowest monomial (so the
    # constant term, whenever there is one) has a positive coefficient
    if p.is_zero:
        return p
    low = min((sum(e), e) for e, _ in p.terms())[1]
    for e, c in p.terms():
        if e == low:
            return -p if c < 0 else p
    return p


def _gcd_rec(a: IntPoly, b: IntPoly) -> IntPoly:
    if a.is_zero:
        return b
    if b.is_zero:
        return a
    n = a.nvars
    if n == 0:
        return IntPoly((), math.gcd(a.rep, b.rep))
    if n == 1:
        return IntPoly(a.vars, _gcd1(a.rep, b.rep))
    ra = _rows_of(a)
    rb = _rows_of(b)
    ca = _rows_content(ra)
    cb = _rows_content(rb)
    cg = _gcd_rec(ca, cb)
    pa = [r.exact_div(ca) for r in ra]
    pb = [r.exact_div(cb) for r in rb]
    g = _prs_rows(pa, pb)
    lifted = IntPoly.from_terms(
        a.vars,
        (((k,) + e, c) for k, row in enumerate(g) for e, c in row.terms()),
    )
    return lifted * cg.lift(a.vars)


def _rows_of(p: IntPoly) -> list:
    d = p.degree(p.vars[0])
    rows = [p.coeff_of(p.vars[0], k) for k in range(int(d) + 1)]
    return rows


def _rows_content(rows: list) -> IntPoly:
    acc = None
    for r in rows:
        if r.is_zero:
            continue
        acc = r if acc is None else _gcd_rec(acc, r)
    return acc


def _prs_rows(a: list, b: list) -> list:
    # primitive pseudo-remainder sequence over rows of IntPoly coefficients;
    # both inputs are primitive (unit row content) and nonzero
    if len(a) < len(b):
        a, b = b, a
    while len(b) > 1:
        r = _prem_rows(a, b)
        if not r:
            return b
        c = _rows_content(r)
        r = [row.exact_div(c) for row in r]
        a, b = b, r
    # a primitive polynomial of main-variable degree zero is a unit
    return [IntPoly.one(b[0].vars)]


def _prem_rows(a: list, b: list) -> list:
    r = a[:]
    db = len(b) - 1
    lb = b[-1]
    while True:
        while r and r[-1].is_zero:
            r.pop()
        dr = len(r) - 1
        if dr < db:
            return r
        lr = r[-1]
        r = [c * lb for c in r]
        shift = dr - db
        for i, bc in enumerate(b):
            r[shift + i] = r[shift + i] - lr * bc
        # leading row cancels by construction
        assert r[-1].is_zero


def _gcd1(a: list, b: list) -> list:
    ca = 0
    for c in a:
        ca = math.gcd(ca, c)
    cb = 0
    for c in b:
        cb = math.gcd(cb, c)
    cg = math.gcd(ca, cb)
    pa = [c // ca for c in a]
    pb = [c // cb for c in b]
    if len(pa) < len(pb):
        pa, pb = pb, pa
    while pb:
        r = _prem1(pa, pb)
        if not r:
            pa = pb
            break
        cr = 0
        for c in r:
            cr = math.gcd(cr, c)
        r = [c // cr for c in r]
        pa, pb = pb, r
    if len(pa) == 1:
        return [cg]
    if pa[-1] < 0:
        pa = [-c for c in pa]
    return [c * cg for c in pa]


def _prem1(a: list, b: list) -> list:
    r = a[:]
    db = len(b) - 1
    lb = b[-1]
    while True:
        _trim1(r)
        dr = len(r) - 1
        if dr < db:
            return r
        lr = r[-1]
        r = [c * lb for c in r]
        shift = dr - db
        for i, bc in enumerate(b):
            r[shift + i] -= lr * bc
