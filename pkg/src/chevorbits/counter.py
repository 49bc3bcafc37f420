"""Point counts of cells over F_q and assembly of class numbers in v = q - 1.

A cell X_{c,A,B} lives on the torus (F_q^x)^free: every free indeterminate is
nonzero, the polynomials in A vanish and those in B do not.  Normalized
coordinates contribute a factor v each.

Three routes are offered.  ``count_cell_at_q`` enumerates assignments over a
finite field.  ``count_cell_symbolic`` applies a small library of exact
elimination rules and gives up with ``UNRESOLVED`` when none fits.
``interpolate_and_verify`` fits a polynomial through exact per-q counts and
re-checks it at extra points.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
import math
import re

import numpy as np

from .finitefield import FieldSpec, field_for, prime_power
from .parametrizer import Cell, Parametrization
from .sympoly import IntPoly, integer_primes

__all__ = [
    "ClassPolynomial",
    "CountReport",
    "CellCount",
    "CountError",
    "EnumerationBudgetExceeded",
    "InterpolationMismatch",
    "UNRESOLVED",
    "DEFAULT_ENUM_BUDGET",
    "count_cell_at_q",
    "count_cell_symbolic",
    "interpolate_and_verify",
    "assemble_k",
    "good_prime_powers",
    "forbidden_primes",
    "lagrange_in_v",
    "evaluate",
    "cell_point",
]

UNRESOLVED = "unresolved"
DEFAULT_ENUM_BUDGET = 10**8
VERIFY_EXTRA = 3


class CountError(ValueError):
    """Counting requested at a q the cell is not valid for."""


class EnumerationBudgetExceeded(RuntimeError):
    def __init__(self, message, cell_id=None, required=None):
        super().__init__(message)
        self.cell_id = cell_id
        self.required = required


class InterpolationMismatch(RuntimeError):
    def __init__(self, message, q=None, cell_id=None):
        super().__init__(message)
        self.q = q
        self.cell_id = cell_id


# -- class polynomials -------------------------------------------------------


@dataclass(frozen=True)
class ClassPolynomial:
    """Integer polynomial in v = q - 1, coefficients ascending."""

    coeffs: tuple = ()

    def __post_init__(self):
        c = [int(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "ClassPolynomial":
        return cls((0,) * k + (c,))

    @classmethod
    def v(cls) -> "ClassPolynomial":
        return cls.monomial(1)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, q: int) -> int:
        """Value at the field size q (not at v)."""
        return self.at_v(q - 1)

    def at_v(self, v) -> int:
        s = 0
        for c in reversed(self.coeffs):
            s = s * v + c
        return s

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return ClassPolynomial(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return ClassPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return ClassPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return ClassPolynomial(tuple(out))

    __rmul__ = __mul__

    def q_coeffs(self) -> tuple:
        """Coefficients ascending in q after v -> q - 1."""
        out = [0] * max(len(self.coeffs), 1)
        for k, c in enumerate(self.coeffs):
            for j in range(k + 1):
                out[j] += c * math.comb(k, j) * (-1) ** (k - j)
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return tuple(out) if self.coeffs else ()

    def to_text(self, var: str = "v") -> str:
        return _format_univariate(self.coeffs, var)

    def q_text(self) -> str:
        return _format_univariate(self.q_coeffs(), "q")

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"ClassPolynomial({self.to_text()!r})"

    def to_json(self) -> dict:
        return {"v_coeffs": list(self.coeffs), "text": self.to_text(), "q_text": self.q_text()}

    @classmethod
    def from_json(cls, data) -> "ClassPolynomial":
        return cls(tuple(data["v_coeffs"]))

    @classmethod
    def parse(cls, text: str, var: str = "v") -> "ClassPolynomial":
        """Inverse of :meth:`to_text`, e.g. ``"2v^4+18v^3+35v^2+14v+1"``."""
        s = text.replace(" ", "")
        if s in ("", "0"):
            return cls()
        if s[0] not in "+-":
            s = "+" + s
        out: dict[int, int] = {}
        pat = re.compile(rf"([+-])(\d*)(?:({re.escape(var)})(?:\^(\d+))?)?")
        pos = 0
        while pos < len(s):
            m = pat.match(s, pos)
            if not m or m.end() == pos or (not m.group(2) and not m.group(3)):
                raise ValueError(f"cannot parse polynomial {text!r}")
            sign = -1 if m.group(1) == "-" else 1
            c = int(m.group(2)) if m.group(2) else 1
            k = (int(m.group(4)) if m.group(4) else 1) if m.group(3) else 0
            out[k] = out.get(k, 0) + sign * c
            pos = m.end()
        top = max(out)
        return cls(tuple(out.get(k, 0) for k in range(top + 1)))


def _as_poly(x) -> ClassPolynomial:
    if isinstance(x, ClassPolynomial):
        return x
    if isinstance(x, int):
        return ClassPolynomial((x,))
    raise TypeError(f"cannot treat {x!r} as a class polynomial")


def _format_univariate(coeffs, var) -> str:
    if not coeffs:
        return "0"
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = str(a)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if a == 1 else f"{a}{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        text += sign + body
    return text


# -- per-q enumeration ---------------------------------------------------------


def _cell_id(cell: Cell, index: int | None = None) -> str:
    head = f"#{index} " if index is not None else ""
    return f"{head}{cell.pattern}"


def _check_q(q: int, forbidden) -> FieldSpec:
    p, _ = prime_power(q)
    if p in forbidden:
        raise CountError(f"q = {q}: the prime {p} is bad or excluded for this parametrization")
    return field_for(q)


def _components(polys, variables):
    """Connected components of variables linked by sharing a polynomial."""
    parent = {v: v for v in variables}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for f in polys:
        vs = sorted(f.variables())
        for a in vs[1:]:
            ra, rb = find(vs[0]), find(a)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list] = {}
    for v in sorted(variables):
        groups.setdefault(find(v), []).append(v)
    comps = []
    for vs in groups.values():
        s = set(vs)
        comps.append((tuple(vs), [f for f in polys if f.variables() & s]))
    return comps


def _eval_on_grid(poly: IntPoly, fs: FieldSpec, values: dict, size: int, powtab) -> np.ndarray:
    acc = np.zeros(size, dtype=np.int64)
    for mono, c in poly.terms():
        cf = c % fs.p
        if not cf:
            continue
        term = np.full(size, cf, dtype=np.int64)
        for var, e in enumerate(mono, start=1):
            if e:
                term = fs.mul[term, powtab[e][values[var]]]
        acc = fs.add[acc, term]
    return acc


def _count_component(variables, A, B, fs: FieldSpec, chunk=1 << 18) -> int:
    q = fs.q
    k = len(variables)
    total = (q - 1) ** k
    maxdeg = max([f.degree_in(v) for f in list(A) + list(B) for v in variables] + [1])
    powtab = {e: np.array([fs.power(a, e) for a in range(q)], dtype=np.int64) for e in range(1, maxdeg + 1)}
    count = 0
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        size = len(idx)
        values = {}
        rest = idx
        for v in variables:
            values[v] = rest % (q - 1) + 1
            rest = rest // (q - 1)
        ok = np.ones(size, dtype=bool)
        for f in A:
            ok &= _eval_on_grid(f, fs, values, size, powtab) == 0
        for f in B:
            if not ok.any():
                break
            ok &= _eval_on_grid(f, fs, values, size, powtab) != 0
        count += int(ok.sum())
    return count


def evaluate(poly: IntPoly, values: dict, fs: FieldSpec) -> int:
    """Value in F_q of an integer polynomial at t_i = values[i] (missing values read as 0)."""
    acc = 0
    for mono, c in poly.terms():
        term = c % fs.p
        for var, e in enumerate(mono, start=1):
            if e and term:
                term = int(fs.mul[term, fs.power(values.get(var, 0), e)])
        acc = int(fs.add[acc, term])
    return acc


def cell_point(cell: Cell, values: dict, fs: FieldSpec) -> list | None:
    """F_q-coordinates (in basis order) of x_c(tau) for an assignment of the free variables.

    Eliminated variables are recovered from the recorded substitutions;
    returns None when the assignment is not a point of the cell.
    """
    vals = dict(values)
    if any(not vals.get(v) for v in cell.free_vars):
        return None
    for var, num, den in reversed(cell.substitutions):
        d = den % fs.p
        if not d:
            return None
        vals[var] = int(fs.mul[evaluate(num, vals, fs), fs.inv[d]])
    if any(evaluate(f, vals, fs) for f in cell.A):
        return None
    if any(not evaluate(f, vals, fs) for f in cell.B):
        return None
    out = []
    for root, ch in zip(cell.basis, cell.pattern):
        if ch != "N":
            out.append(0)
        elif root in cell.normalized:
            out.append(1)
        else:
            x = vals.get(root, 0)
            if not x:
                return None
            out.append(x)
    return out


def count_cell_at_q(
    cell: Cell,
    q: int,
    forbidden=frozenset(),
    budget: int = DEFAULT_ENUM_BUDGET,
    cell_id: str | None = None,
) -> int:
    """Exact number of F_q-points of the cell times (q-1)^{|J|}.

    ``forbidden`` holds the primes (bad or excluded) at which the cell is not
    claimed valid; q over such a prime raises :class:`CountError`.
    """
    fs = _check_q(q, forbidden)
    A, B = list(cell.A), list(cell.B)
    involved = set()
    for f in A + B:
        involved |= f.variables()
    stray = involved - set(cell.free_vars)
    if stray:
        raise CountError(f"cell {cell_id or cell.pattern}: variables {sorted(stray)} are not free")
    loose = len(cell.free_vars) - len(involved) + len(cell.normalized)
    comps = _components(A + B, involved)
    need = sum((q - 1) ** len(vs) for vs, _ in comps)
    if need > budget:
        raise EnumerationBudgetExceeded(
            f"cell {cell_id or cell.pattern}: {need} assignments at q = {q} exceed budget {budget}",
            cell_id=cell_id or cell.pattern,
            required=need,
        )
    total = (q - 1) ** loose
    for vs, polys in comps:
        if not total:
            break
        s = set(vs)
        total *= _count_component(vs, [f for f in A if f.variables() & s], [f for f in B if f.variables() & s], fs)
    # constant members of A or B do not touch any component
    for f in A:
        if f.is_constant() and f.constant_value() % fs.p:
            return 0
    for f in B:
        if f.is_constant() and f.constant_value() % fs.p == 0:
            return 0
    return total


# -- symbolic route ------------------------------------------------------------


class _Unresolved(Exception):
    pass


V = ClassPolynomial.v()
ONE = ClassPolynomial((1,))
ZERO_POLY = ClassPolynomial()


def _strip_monomial(f: IntPoly) -> IntPoly:
    """Divide f by the largest monomial dividing all its terms (a unit on the torus)."""
    ts = f.terms()
    lows = [min(m[i] for m, _ in ts) for i in range(len(ts[0][0]))]
    if not any(lows):
        return f
    lowered = [(tuple(a - b for a, b in zip(m, lows)), c) for m, c in ts]
    return IntPoly.from_terms(lowered, f.nvars)


class _Symbolic:
    """Exact rule engine; ``assumed`` collects primes the result relies on being units."""

    def __init__(self, allowed):
        self.allowed = frozenset(allowed)
        self.assumed: set[int] = set()
        self.memo: dict = {}

    def _unit_coefficient(self, c: int) -> None:
        primes = integer_primes(abs(c))
        if not primes <= self.allowed:
            raise _Unresolved(f"coefficient {c} is not a unit at every valid prime")
        self.assumed |= primes

    def normalize(self, A, B):
        """Cleaned (A, B) or None when visibly empty."""
        newA, newB = [], []
        for f in A:
            if not f:
                continue
            if f.is_monomial():
                self._unit_coefficient(f.leading_coefficient())
                return None
            f = _strip_monomial(f)
            c = f.content()
            if c != 1:
                self._unit_coefficient(c)
            f = f.primitive()
            if f.is_constant():
                return None
            if f not in newA:
                newA.append(f)
        for f in B:
            if not f:
                return None
            if f.is_monomial():
                self._unit_coefficient(f.leading_coefficient())
                continue
            f = _strip_monomial(f)
            c = f.content()
            if c != 1:
                self._unit_coefficient(c)
            f = f.primitive()
            if f.is_constant():
                continue
            if f not in newB:
                newB.append(f)
        if any(f in newB for f in newA):
            return None
        newA.sort(key=IntPoly.sort_key)
        newB.sort(key=IntPoly.sort_key)
        return tuple(newA), tuple(newB)

    def count(self, A, B, variables) -> ClassPolynomial:
        cleaned = self.normalize(A, B)
        if cleaned is None:
            return ZERO_POLY
        A, B = cleaned
        key = (tuple(map(str, A)), tuple(map(str, B)), tuple(sorted(variables)))
        if key in self.memo:
            return self.memo[key]
        out = self._count(A, B, frozenset(variables))
        self.memo[key] = out
        return out

    def _count(self, A, B, variables) -> ClassPolynomial:
        involved = set()
        for f in A + B:
            involved |= f.variables()
        loose = len(variables - involved)
        factor = ClassPolynomial.monomial(loose)
        if not A and not B:
            return factor
        comps = _components(list(A) + list(B), involved)
        if len(comps) > 1:
            out = factor
            for vs, _ in comps:
                s = set(vs)
                out = out * self.count(
                    [f for f in A if f.variables() & s], [f for f in B if f.variables() & s], s
                )
            return out
        return factor * self._connected(A, B, frozenset(involved))

    def _connected(self, A, B, variables) -> ClassPolynomial:
        # an A-member solvable for a variable with a unit cofactor
        for idx, f in enumerate(A):
            hit = _unit_linear(f)
            if hit is not None:
                var, unit, rest = hit
                self._unit_coefficient(unit.leading_coefficient())
                others = [g for j, g in enumerate(A) if j != idx]
                newA = [_eliminate(g, var, -rest, unit) for g in others]
                newB = [_eliminate(g, var, -rest, unit) for g in B] + [rest]
                return self.count(newA, newB, variables - {var})
        # a variable occurring linearly in a single A-member only
        for idx, f in enumerate(A):
            for var in sorted(f.variables()):
                if f.degree_in(var) != 1 or _occurs_elsewhere(var, A, B, skip_a=idx):
                    continue
                parts = f.coefficients_in(var)
                h, r = parts[1], parts.get(0, IntPoly.zero(f.nvars))
                others = [g for j, g in enumerate(A) if j != idx]
                rest = variables - {var}
                return V * self.count(others + [h, r], B, rest) + self.count(others, list(B) + [h, r], rest)
        # a variable occurring linearly in a single B-member only
        for idx, f in enumerate(B):
            for var in sorted(f.variables()):
                if f.degree_in(var) != 1 or _occurs_elsewhere(var, A, B, skip_b=idx):
                    continue
                parts = f.coefficients_in(var)
                h, r = parts[1], parts.get(0, IntPoly.zero(f.nvars))
                others = [g for j, g in enumerate(B) if j != idx]
                rest = variables - {var}
                return (
                    V * self.count(list(A) + [h], others + [r], rest)
                    + V * self.count(list(A) + [r], others + [h], rest)
                    + (V - 1) * self.count(A, others + [h, r], rest)
                )
        # inclusion-exclusion on a B-member
        if B:
            b = B[0]
            return self.count(A, B[1:], variables) - self.count(list(A) + [b], B[1:], variables)
        raise _Unresolved("no elimination rule applies")


def _unit_linear(f: IntPoly):
    """(var, unit monomial, rest) with f = unit * t_var + rest and rest free of t_var."""
    best = None
    for var in sorted(f.variables()):
        if f.degree_in(var) != 1:
            continue
        parts = f.coefficients_in(var)
        u = parts[1]
        if not u.is_monomial():
            continue
        key = (abs(u.leading_coefficient()) != 1, u.total_degree(), var)
        if best is None or key < best[0]:
            best = (key, var, u, parts.get(0, IntPoly.zero(f.nvars)))
    if best is None:
        return None
    _, var, u, rest = best
    return var, u, rest


def _eliminate(g: IntPoly, var: int, num: IntPoly, den: IntPoly) -> IntPoly:
    """den^deg * g(t_var = num/den), den a unit monomial."""
    if var not in g.variables():
        return g
    parts = g.coefficients_in(var)
    top = max(parts)
    out = IntPoly.zero(max(g.nvars, num.nvars))
    for e, c in parts.items():
        out = out + c * num ** e * den ** (top - e)
    return out


def _occurs_elsewhere(var, A, B, skip_a=None, skip_b=None) -> bool:
    for j, g in enumerate(A):
        if j != skip_a and var in g.variables():
            return True
    for j, g in enumerate(B):
        if j != skip_b and var in g.variables():
            return True
    return False


def count_cell_symbolic(cell: Cell, allowed_primes=frozenset()):
    """Exact count of the cell as a ClassPolynomial, or ``UNRESOLVED``.

    ``allowed_primes`` are the primes already outside the validity range (bad
    or excluded); the rules may treat integers as units only when their prime
    divisors lie in it.
    """
    engine = _Symbolic(allowed_primes)
    try:
        inner = engine.count(list(cell.A), list(cell.B), set(cell.free_vars))
    except _Unresolved:
        return UNRESOLVED
    return inner * ClassPolynomial.monomial(len(cell.normalized))


# -- interpolation -----------------------------------------------------------


def good_prime_powers(forbidden, count: int, start: int = 2, limit: int = 10**4) -> list:
    """The first ``count`` prime powers >= start over primes outside ``forbidden``."""
    out = []
    q = start
    while len(out) < count and q < limit:
        try:
            p, _ = prime_power(q)
        except ValueError:
            q += 1
            continue
        if p not in forbidden:
            out.append(q)
        q += 1
    if len(out) < count:
        raise CountError("not enough admissible prime powers")
    return out


def lagrange_in_v(points) -> ClassPolynomial:
    """Integer polynomial in v through (q, value) points; CountError if not integral."""
    xs = [Fraction(q - 1) for q, _ in points]
    ys = [Fraction(y) for _, y in points]
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xs[j] * basis[k + 1]
            denom *= xs[i] - xs[j]
        for k in range(n):
            coeffs[k] += ys[i] * basis[k] / denom
    if any(c.denominator != 1 for c in coeffs):
        raise InterpolationMismatch(f"interpolant has non-integral coefficients {coeffs}")
    return ClassPolynomial(tuple(int(c) for c in coeffs))


def interpolate_and_verify(
    cell: Cell,
    degree_bound: int | None = None,
    sample_qs=None,
    forbidden=frozenset(),
    budget: int = DEFAULT_ENUM_BUDGET,
    cell_id: str | None = None,
):
    """Interpolate the cell count in v and re-verify at the extra sample points.

    Returns (polynomial, verified_at).  ``degree_bound`` defaults to the
    number of free variables plus |J|.
    """
    if degree_bound is None:
        degree_bound = len(cell.free_vars) + len(cell.normalized)
    need = degree_bound + 1
    if sample_qs is None:
        sample_qs = good_prime_powers(forbidden, need + VERIFY_EXTRA)
    sample_qs = list(sample_qs)
    if len(sample_qs) < need + VERIFY_EXTRA:
        raise CountError(f"need {need + VERIFY_EXTRA} sample points, got {len(sample_qs)}")
    def value(q):
        return count_cell_at_q(cell, q, forbidden, budget, cell_id)

    fit = sample_qs[:need]
    poly = lagrange_in_v([(q, value(q)) for q in fit])
    checks = sample_qs[need:]
    for q in checks:
        got = value(q)
        if poly(q) != got:
            raise InterpolationMismatch(
                f"cell {cell_id or cell.pattern}: interpolant {poly} gives {poly(q)} at q = {q}, count is {got}",
                q=q,
                cell_id=cell_id or cell.pattern,
            )
    return poly, tuple(checks)


def _interpolate_cell_factor(cell, forbidden, budget, cell_id):
    """Interpolate only the involved part; loose variables contribute exact powers of v."""
    involved = set()
    for f in list(cell.A) + list(cell.B):
        involved |= f.variables()
    core = Cell(
        pattern=cell.pattern,
        A=cell.A,
        B=cell.B,
        normalized=(),
        substitutions=cell.substitutions,
        free_vars=tuple(sorted(involved)),
        basis=cell.basis,
    )
    poly, checks = interpolate_and_verify(core, len(involved), None, forbidden, budget, cell_id)
    loose = len(cell.free_vars) - len(involved) + len(cell.normalized)
    return poly * ClassPolynomial.monomial(loose), checks


# -- assembly ----------------------------------------------------------------


@dataclass
class CellCount:
    index: int
    cell_id: str
    strategy: str
    polynomial: ClassPolynomial | None = None
    values: dict = field(default_factory=dict)
    verified_at: tuple = ()

    def to_json(self) -> dict:
        out = {"cell_id": self.cell_id, "strategy": self.strategy, "verified_at": list(self.verified_at)}
        if self.polynomial is not None:
            out["polynomial"] = self.polynomial.to_text()
        if self.values:
            out["values"] = {str(q): v for q, v in sorted(self.values.items())}
        return out


@dataclass
class CountReport:
    strategy: str
    cells: list
    total: ClassPolynomial | None = None
    values: dict = field(default_factory=dict)
    verified_at: tuple = ()

    def value_at(self, q: int) -> int:
        if q in self.values:
            return self.values[q]
        if self.total is None:
            raise KeyError(f"no count at q = {q}")
        return self.total(q)

    def to_json(self) -> dict:
        out = {
            "strategy": self.strategy,
            "verified_at": list(self.verified_at),
            "cells": [c.to_json() for c in self.cells],
        }
        if self.total is not None:
            out["total"] = self.total.to_json()
        if self.values:
            out["values"] = {str(q): v for q, v in sorted(self.values.items())}
        return out


STRATEGIES = ("symbolic", "per-q", "interpolate")


def forbidden_primes(param: Parametrization) -> frozenset:
    return frozenset(param.excluded_primes) | frozenset(param.bad_primes)


def assemble_k(
    param: Parametrization,
    strategy: str = "symbolic",
    qs=None,
    budget: int = DEFAULT_ENUM_BUDGET,
    verify_qs=None,
) -> CountReport:
    """Sum the cell counts of a parametrization.

    ``symbolic`` uses the rule engine and falls back to guarded interpolation
    for unresolved cells; ``interpolate`` interpolates every cell; both verify
    the total by direct per-q counting at ``verify_qs`` (default: the smallest
    admissible prime powers).  ``per-q`` only evaluates at ``qs``.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    forbidden = forbidden_primes(param)
    for q in qs or ():
        _check_q(q, forbidden)
    cells = param.sorted_cells()
    parts = []
    if strategy == "per-q":
        if not qs:
            raise ValueError("per-q strategy needs at least one q")
        values = {q: 0 for q in qs}
        for idx, cell in enumerate(cells):
            cid = _cell_id(cell, idx)
            vals = {q: count_cell_at_q(cell, q, forbidden, budget, cid) for q in qs}
            for q, x in vals.items():
                values[q] += x
            parts.append(CellCount(idx, cid, "per-q", values=vals))
        return CountReport("per-q", parts, values=values)

    total = ClassPolynomial()
    for idx, cell in enumerate(cells):
        cid = _cell_id(cell, idx)
        poly = UNRESOLVED
        how = "symbolic"
        if strategy == "symbolic":
            poly = count_cell_symbolic(cell, forbidden)
        checks = ()
        if poly == UNRESOLVED:
            poly, checks = _interpolate_cell_factor(cell, forbidden, budget, cid)
            how = "interpolate"
        parts.append(CellCount(idx, cid, how, polynomial=poly, verified_at=checks))
        total = total + poly

    if verify_qs is None:
        verify_qs = good_prime_powers(forbidden, 2)
    values = {}
    for q in verify_qs:
        got = sum(count_cell_at_q(c, q, forbidden, budget, _cell_id(c, i)) for i, c in enumerate(cells))
        if got != total(q):
            raise InterpolationMismatch(
                f"assembled polynomial {total} gives {total(q)} at q = {q}, direct count is {got}", q=q
            )
        values[q] = got
    for q in qs or ():
        values[q] = total(q)
    return CountReport(strategy, parts, total=total, values=values, verified_at=tuple(verify_qs))
