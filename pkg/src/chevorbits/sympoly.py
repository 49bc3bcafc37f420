"""Sparse multivariate polynomials over the integers in indeterminates t_1, t_2, ...

:class:`IntPoly` is an immutable value wrapping a FLINT ``fmpz_mpoly`` with
degree-then-lexicographic monomial order (t_1 > t_2 > ...).  Polynomials in
different numbers of indeterminates interoperate; operands are promoted to the
larger variable pool.

The total order used to pick "least" polynomials compares, in precedence,
number of terms, total degree, leading coefficient, and finally the full list
of terms (monomial, coefficient) from the leading term down.
"""

from __future__ import annotations

import re
from functools import lru_cache

import flint
from sympy import primefactors

__all__ = [
    "IntPoly",
    "compare",
    "gcd",
    "divides",
    "exact_quotient",
    "substitute_linear",
    "leading_coefficient_primes",
    "integer_primes",
    "parse",
]

DEFAULT_NVARS = 8


@lru_cache(maxsize=None)
def _ctx(nvars: int):
    names = tuple(f"t{i}" for i in range(1, nvars + 1))
    return flint.fmpz_mpoly_ctx.get(names, "deglex")


@lru_cache(maxsize=4096)
def integer_primes(n: int) -> frozenset[int]:
    """Prime divisors of a nonzero integer."""
    return frozenset(primefactors(abs(n)))


class IntPoly:
    """Polynomial with integer coefficients.  Construct via :meth:`gen`,
    :meth:`const`, :meth:`from_terms`, :func:`parse` or :meth:`from_json`."""

    __slots__ = ("raw", "_str")

    def __init__(self, raw):
        self.raw = raw
        self._str = None

    # -- construction --------------------------------------------------------

    @classmethod
    def gen(cls, i: int, nvars: int | None = None) -> "IntPoly":
        """The indeterminate t_i (1-based)."""
        if i < 1:
            raise ValueError("indeterminates are numbered from 1")
        nvars = max(i, nvars or DEFAULT_NVARS)
        return cls(_ctx(nvars).gens()[i - 1])

    @classmethod
    def const(cls, c: int, nvars: int | None = None) -> "IntPoly":
        n = nvars or DEFAULT_NVARS
        return cls(_ctx(n).from_dict({(0,) * n: int(c)} if c else {}))

    @classmethod
    def zero(cls, nvars: int | None = None) -> "IntPoly":
        return cls.const(0, nvars)

    @classmethod
    def from_terms(cls, terms, nvars: int | None = None) -> "IntPoly":
        """From a mapping or iterable of (exponent tuple, coefficient)."""
        items = list(terms.items()) if hasattr(terms, "items") else list(terms)
        width = max([len(e) for e, _ in items] + [nvars or 0]) or DEFAULT_NVARS
        d = {}
        for e, c in items:
            e = tuple(e) + (0,) * (width - len(e))
            d[e] = d.get(e, 0) + int(c)
        return cls(_ctx(width).from_dict({e: c for e, c in d.items() if c}))

    # -- basic properties ----------------------------------------------------

    @property
    def nvars(self) -> int:
        return self.raw.context().nvars()

    def terms(self) -> list[tuple[tuple[int, ...], int]]:
        """(exponents, coefficient) pairs from the leading term down."""
        return [(tuple(map(int, m)), int(c)) for m, c in zip(self.raw.monoms(), self.raw.coeffs())]

    def __len__(self) -> int:
        return len(self.raw)

    def __bool__(self) -> bool:
        return not self.raw.is_zero()

    def is_zero(self) -> bool:
        return self.raw.is_zero()

    def is_constant(self) -> bool:
        return self.raw.is_constant()

    def is_monomial(self) -> bool:
        """A single nonzero term (constants included)."""
        return len(self.raw) == 1

    def total_degree(self) -> int:
        return -1 if self.raw.is_zero() else int(self.raw.total_degree())

    def leading_coefficient(self) -> int:
        if self.raw.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return int(self.raw.leading_coefficient())

    def leading_monomial(self) -> tuple[int, ...]:
        return tuple(map(int, self.raw.monoms()[0]))

    def content(self) -> int:
        return int(self.raw.content())

    def constant_value(self) -> int:
        if not self.raw.is_constant():
            raise ValueError(f"{self} is not constant")
        return 0 if self.raw.is_zero() else int(self.raw.leading_coefficient())

    def variables(self) -> frozenset[int]:
        """1-based indices of indeterminates that occur."""
        if self.raw.is_zero():
            return frozenset()
        degs = self.raw.degrees()
        return frozenset(i + 1 for i, d in enumerate(degs) if d > 0)

    def degree_in(self, i: int) -> int:
        if self.raw.is_zero() or i > self.nvars:
            return 0
        return int(self.raw.degrees()[i - 1])

    def primitive(self) -> "IntPoly":
        """Content removed, leading coefficient made positive."""
        if self.raw.is_zero():
            return self
        c = self.raw.content()
        p = self.raw / c if c != 1 else self.raw
        if p.leading_coefficient() < 0:
            p = -p
        return IntPoly(p)

    def sort_key(self):
        """Key realizing the total order (terms, degree, leading coefficient, term list)."""
        ts = self.terms()
        return (
            len(ts),
            self.total_degree(),
            ts[0][1] if ts else 0,
            tuple((sum(m), m, c) for m, c in _trim_terms(ts)),
        )

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, IntPoly):
            a, b = self.raw, other.raw
            if a.context() is not b.context():
                n = max(self.nvars, other.nvars)
                a, b = _promote(a, n), _promote(b, n)
            return a, b
        if isinstance(other, int):
            return self.raw, other
        return NotImplemented

    def __add__(self, other):
        ab = self._coerce(other)
        return NotImplemented if ab is NotImplemented else IntPoly(ab[0] + ab[1])

    __radd__ = __add__

    def __sub__(self, other):
        ab = self._coerce(other)
        return NotImplemented if ab is NotImplemented else IntPoly(ab[0] - ab[1])

    def __rsub__(self, other):
        ab = self._coerce(other)
        return NotImplemented if ab is NotImplemented else IntPoly(ab[1] - ab[0])

    def __mul__(self, other):
        ab = self._coerce(other)
        return NotImplemented if ab is NotImplemented else IntPoly(ab[0] * ab[1])

    __rmul__ = __mul__

    def __neg__(self):
        return IntPoly(-self.raw)

    def __pow__(self, k: int):
        return IntPoly(self.raw ** k)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.raw == other
        if not isinstance(other, IntPoly):
            return NotImplemented
        if self.raw.context() is other.raw.context():
            return self.raw == other.raw
        return str(self) == str(other)

    def __hash__(self):
        return hash(str(self))

    def __lt__(self, other: "IntPoly") -> bool:
        return compare(self, other) < 0

    # -- evaluation and substitution ------------------------------------------

    def __call__(self, *values: int) -> int:
        """Integer value at t = values (missing trailing values taken as 0)."""
        vals = list(values) + [0] * (self.nvars - len(values))
        total = 0
        for m, c in self.terms():
            term = c
            for v, e in zip(vals, m):
                if e:
                    term *= v ** e
            total += term
        return total

    def subs(self, mapping: dict[int, "IntPoly | int"]) -> "IntPoly":
        """Simultaneous substitution t_i -> mapping[i]."""
        if not mapping:
            return self
        n = max([self.nvars] + [v.nvars for v in mapping.values() if isinstance(v, IntPoly)])
        ctx = _ctx(n)
        me = _promote(self.raw, n)
        gens = list(ctx.gens())
        for i, v in mapping.items():
            gens[i - 1] = _promote(v.raw, n) if isinstance(v, IntPoly) else ctx.from_dict({(0,) * n: int(v)} if v else {})
        return IntPoly(me.compose(*gens))

    def coefficients_in(self, i: int) -> dict[int, "IntPoly"]:
        """Write self = sum_e c_e t_i^e; returns {e: c_e} with c_e free of t_i."""
        n = self.nvars
        out: dict[int, dict] = {}
        for m, c in self.terms():
            e = m[i - 1] if i <= n else 0
            mm = list(m)
            if i <= n:
                mm[i - 1] = 0
            out.setdefault(e, {})[tuple(mm)] = c
        return {e: IntPoly(_ctx(n).from_dict(d)) for e, d in out.items()}

    # -- text and JSON ----------------------------------------------------------

    def __str__(self) -> str:
        if self._str is None:
            self._str = _format(self.terms())
        return self._str

    def __repr__(self) -> str:
        return f"IntPoly({str(self)!r})"

    def to_json(self) -> list:
        return [[c, list(m)] for m, c in self.terms()]

    @classmethod
    def from_json(cls, data, nvars: int | None = None) -> "IntPoly":
        if not data:
            return cls.zero(nvars)
        return cls.from_terms([(tuple(m), c) for c, m in data], nvars)


def _promote(raw, n: int):
    ctx = raw.context()
    if ctx.nvars() == n:
        return raw
    pad = n - ctx.nvars()
    return _ctx(n).from_dict({tuple(m) + (0,) * pad: c for m, c in zip(raw.monoms(), raw.coeffs())})


def _trim_terms(ts):
    out = []
    for m, c in ts:
        k = len(m)
        while k and m[k - 1] == 0:
            k -= 1
        out.append((m[:k], c))
    return out


def _format(ts) -> str:
    if not ts:
        return "0"
    parts = []
    for m, c in ts:
        factors = [f"t{i}^{e}" if e > 1 else f"t{i}" for i, e in enumerate(m, start=1) if e]
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        parts.append(("-" if c < 0 else "+", body))
    head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    return head + "".join(f" {s} {b}" for s, b in parts[1:])


_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")


def parse(text: str, nvars: int | None = None) -> IntPoly:
    """Inverse of ``str(IntPoly)``; accepts terms like ``-3*t1^2*t4``."""
    text = text.strip()
    if text == "0":
        return IntPoly.zero(nvars)
    terms: dict[tuple, int] = {}
    width = nvars or 0
    parsed = []
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = 1
        exps: dict[int, int] = {}
        for factor in m.group(2).strip().split("*"):
            factor = factor.strip()
            if factor.startswith("t"):
                name, _, e = factor.partition("^")
                idx = int(name[1:])
                exps[idx] = exps.get(idx, 0) + (int(e) if e else 1)
                width = max(width, idx)
            else:
                coeff *= int(factor)
        parsed.append((exps, sign * coeff))
        pos = m.end()
    width = width or DEFAULT_NVARS
    for exps, c in parsed:
        key = tuple(exps.get(i, 0) for i in range(1, width + 1))
        terms[key] = terms.get(key, 0) + c
    return IntPoly.from_terms(terms, width)


def compare(p: IntPoly, q: IntPoly) -> int:
    """-1, 0 or 1 according to the total order on nonzero polynomials."""
    if not p or not q:
        raise ValueError("compare is defined on nonzero polynomials only")
    a, b = p.sort_key(), q.sort_key()
    return (a > b) - (a < b)


def gcd(p: IntPoly, q: IntPoly) -> IntPoly:
    """Greatest common divisor over Z[t], positive leading coefficient."""
    if not p and not q:
        raise ValueError("gcd(0, 0) is undefined")
    a, b = p._coerce(q)
    g = IntPoly(a.gcd(b))
    if g.leading_coefficient() < 0:
        g = -g
    return g


def exact_quotient(p: IntPoly, d: IntPoly) -> IntPoly | None:
    """p / d if the division is exact over Z[t], else None."""
    if not d:
        raise ZeroDivisionError("division by the zero polynomial")
    a, b = p._coerce(d)
    if a.is_zero():
        return IntPoly(a)
    if len(b) == 1 and len(a) > 0:
        # monomial divisor: exponent check avoids a full division
        lm = b.monoms()[0]
        bc = b.coeffs()[0]
        for m, c in zip(a.monoms(), a.coeffs()):
            if c % bc != 0 or any(x < y for x, y in zip(m, lm)):
                return None
    qt, r = divmod(a, b)
    return IntPoly(qt) if r.is_zero() else None


def divides(p: IntPoly, q: IntPoly) -> bool:
    """Whether p divides q in Q[t] (integer content ignored)."""
    if not p:
        raise ValueError("divides: divisor must be nonzero")
    if not q:
        return True
    a = p.primitive()
    return exact_quotient(q.primitive(), a) is not None


def substitute_linear(p: IntPoly, i: int, a: IntPoly, denominator: int = 1) -> tuple[IntPoly, frozenset[int]]:
    """Replace t_i by a / denominator and clear denominators.

    Returns ``(denominator**deg_i(p) * p(t_i = a/denominator), primes)`` where
    ``primes`` are the primes dividing the denominator whenever it actually had
    to be cleared.  ``a`` must not involve t_i.
    """
    if i in a.variables():
        raise ValueError(f"substituted expression involves t{i}")
    if denominator == 0:
        raise ZeroDivisionError("zero denominator")
    if denominator < 0:
        a, denominator = -a, -denominator
    if denominator == 1 or not p:
        return p.subs({i: a}), frozenset()
    parts = p.coefficients_in(i)
    top = max(parts)
    out = IntPoly.zero(max(p.nvars, a.nvars))
    for e, c in parts.items():
        out = out + c * a ** e * denominator ** (top - e)
    primes = integer_primes(denominator) if top > 0 else frozenset()
    return out, primes


def leading_coefficient_primes(p: IntPoly) -> frozenset[int]:
    """Primes dividing the leading coefficient in the deglex order."""
    return integer_primes(p.leading_coefficient())
