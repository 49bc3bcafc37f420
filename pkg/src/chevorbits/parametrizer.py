"""Parametrization of adjoint U-orbits by minimal representatives.

A depth-first backtrack walks the positive roots in enumeration order.  At
step i the i-th row of the symbolic commutator matrix of x_c(t) is appended
and reduced fraction-free against the earlier pivot rows; the remaining
entries decide whether position i is inert (I), ramified with a nonzero
coefficient (N) or ramified with zero coefficient (0), splitting the current
cell by a polynomial condition when the answer depends on t.

Pattern strings use the letters ``I``, ``N`` and ``0``.  The indeterminate
attached to a ramified-nonzero position with root index k is t_k.

Two speed-ups are optional: pinning coefficients to 1 with the torus (only
when the pinned roots stay part of a Z-basis of the root lattice), and
eliminating an indeterminate when a linear polynomial solvable for it enters
the vanishing set A.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from functools import lru_cache

from sympy import Matrix
from sympy.matrices.normalforms import invariant_factors

from .rootdata import RootDatum, ideal_violation, RootDataError
from .sympoly import IntPoly, divides, exact_quotient, gcd, integer_primes, leading_coefficient_primes, substitute_linear
from .zform import BracketTable

__all__ = [
    "INERT",
    "RAMIFIED",
    "ZERO",
    "Options",
    "SolverState",
    "Cell",
    "Parametrization",
    "BudgetExceeded",
    "parametrize",
    "parametrize_subquotient",
    "row_reduce_step",
    "branch",
    "normalize_torus",
    "apply_linear_substitution",
    "record_prime_divisions",
    "is_unimodular",
]

INERT, RAMIFIED, ZERO = "I", "N", "0"


class BudgetExceeded(RuntimeError):
    """The search outgrew its node or time budget."""

    def __init__(self, message, progress):
        super().__init__(message)
        self.progress = progress


@dataclass(frozen=True)
class Options:
    normalize: bool = True
    substitute: bool = True
    unit_substitution_only: bool = True
    max_nodes: int | None = None
    max_seconds: float | None = None

    def to_json(self) -> dict:
        return {
            "normalize": self.normalize,
            "substitute": self.substitute,
            "unit_substitution_only": self.unit_substitution_only,
        }


@dataclass
class SolverState:
    """One node of the search.  ``rows`` keeps only the pivot rows, as
    (step, pivot column, sparse row) triples; rows without a pivot vanish on
    the whole cell and never take part in later reductions."""

    pattern: str = ""
    coords: dict = field(default_factory=dict)
    dens: dict = field(default_factory=dict)
    A: tuple = ()
    B: tuple = ()
    pivots: tuple = ()
    rows: tuple = ()
    J: tuple = ()
    subs: tuple = ()
    pending: dict | None = None

    def copy(self, **changes) -> "SolverState":
        return replace(self, **changes)


@dataclass(frozen=True)
class Cell:
    pattern: str
    A: tuple
    B: tuple
    normalized: tuple
    substitutions: tuple
    free_vars: tuple
    basis: tuple

    @property
    def m(self) -> int:
        """Number of ramified-nonzero positions."""
        return self.pattern.count(RAMIFIED)

    def key(self):
        return (self.pattern, tuple(str(a) for a in self.A), tuple(str(b) for b in self.B))

    def to_json(self) -> dict:
        return {
            "pattern": self.pattern,
            "normalized": list(self.normalized),
            "substitutions": [
                {"var": v, "value": str(p), "denominator": d} for v, p, d in self.substitutions
            ],
            "A": [str(a) for a in self.A],
            "B": [str(b) for b in self.B],
            "free_vars": list(self.free_vars),
        }


@dataclass
class Parametrization:
    datum: RootDatum
    cells: list
    excluded_primes: frozenset
    options: Options
    basis: tuple
    outer: tuple | None = None
    inner: tuple | None = None
    nodes: int = 0

    @property
    def bad_primes(self) -> frozenset:
        return self.datum.bad_primes

    def sorted_cells(self) -> list:
        return sorted(self.cells, key=Cell.key)

    def to_json(self) -> dict:
        meta = {
            "type": self.datum.type_label,
            "rank": self.datum.rank,
            "requested": self.datum.requested_label,
            "options": self.options.to_json(),
            "excluded_primes": sorted(self.excluded_primes),
            "bad_primes": sorted(self.datum.bad_primes),
            "basis": list(self.basis),
        }
        if self.outer is not None:
            meta["subquotient"] = {"outer": list(self.outer), "inner": list(self.inner)}
        return {"meta": meta, "cells": [c.to_json() for c in self.sorted_cells()]}


@lru_cache(maxsize=None)
def is_unimodular(vectors: tuple) -> bool:
    """True iff the integer row vectors extend to a Z-basis (all elementary divisors 1)."""
    if not vectors:
        return True
    m = Matrix(vectors)
    if m.rank() < len(vectors):
        return False
    divisors = [d for d in invariant_factors(m) if d != 0]
    return len(divisors) == len(vectors) and all(abs(d) == 1 for d in divisors)


class _Run:
    """Search context shared by all nodes: tables, options, prime tracker, budget."""

    def __init__(self, datum, table, options, basis):
        self.datum = datum
        self.table = table
        self.options = options
        self.basis = tuple(basis)
        self.n = datum.N
        self.one = IntPoly.const(1, self.n)
        self.excluded: set[int] = set()
        self.nodes = 0
        self.start = time.monotonic()
        self.cells: list[Cell] = []

    def tick(self, depth):
        self.nodes += 1
        o = self.options
        if o.max_nodes is not None and self.nodes > o.max_nodes:
            raise BudgetExceeded(
                f"node budget {o.max_nodes} exceeded at depth {depth}",
                {"nodes": self.nodes, "cells": len(self.cells), "depth": depth},
            )
        if o.max_seconds is not None and self.nodes % 256 == 0:
            if time.monotonic() - self.start > o.max_seconds:
                raise BudgetExceeded(
                    f"time budget {o.max_seconds}s exceeded",
                    {"nodes": self.nodes, "cells": len(self.cells), "depth": depth},
                )


def record_prime_divisions(tracker: set, poly: IntPoly) -> set:
    """Merge the primes of the leading coefficient of a divisor into the tracker."""
    if poly:
        tracker |= leading_coefficient_primes(poly)
    return tracker


def _symbolic_row(run: _Run, st: SolverState, target: int) -> dict:
    """Row ``target`` of P^c: coefficient of e_target in [sum_k y_k e_k, x_c(t)]."""
    row: dict[int, IntPoly] = {}
    scale = 1
    if st.dens:
        for _, l, _ in run.table.pairs_into(target):
            d = st.dens.get(l, 1)
            if l in st.coords and d != 1:
                scale = scale * d // _gcd_int(scale, d)
    for k, l, c in run.table.pairs_into(target):
        x = st.coords.get(l)
        if x is None:
            continue
        factor = c * (scale // st.dens.get(l, 1)) if st.dens else c
        row[k] = row[k] + factor * x if k in row else factor * x
    return {k: v for k, v in row.items() if v}


def _gcd_int(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def row_reduce_step(run: _Run, st: SolverState) -> tuple[dict, list]:
    """Append and reduce the next row; return (reduced row, R_i as [(column, poly)])."""
    if st.pending is not None:
        row = st.pending
    else:
        row = _symbolic_row(run, st, run.basis[len(st.pattern)])
        for _, col, prow in st.rows:
            b = row.get(col)
            if b is None:
                continue
            a = prow[col]
            record_prime_divisions(run.excluded, a)
            g = gcd(a, b)
            a1 = exact_quotient(a, g)
            b1 = exact_quotient(b, g)
            new = {}
            for k in row.keys() | prow.keys():
                v = None
                if k in row:
                    v = row[k] if a1 == 1 else a1 * row[k]
                if k in prow:
                    w = b1 * prow[k]
                    v = -w if v is None else v - w
                if v:
                    new[k] = v
            row = new
    R = [(k, v) for k, v in sorted(row.items()) if not any(divides(a, v) for a in st.A)]
    return row, R


def _least(items):
    return min(items, key=lambda kv: (kv[1].sort_key(), kv[0]))


def normalize_torus(run: _Run, st: SolverState, root: int) -> SolverState:
    """Set the coefficient at a new ramified-nonzero position: pinned to 1 when allowed."""
    coords = dict(st.coords)
    if run.options.normalize:
        vecs = tuple(run.datum.root(r) for r in st.J + (root,))
        if is_unimodular(vecs):
            coords[root] = run.one
            return st.copy(coords=coords, J=st.J + (root,))
    coords[root] = IntPoly.gen(root, run.n)
    return st.copy(coords=coords)


def branch(run: _Run, st: SolverState, row: dict, R: list, stack: list) -> SolverState | None:
    """Cases (b)-(d): extend the pattern by one letter, pushing a sibling if needed."""
    root = run.basis[len(st.pattern)]
    if not R:
        base = st.copy(pivots=st.pivots + (0,), pending=None)
        stack.append(base.copy(pattern=st.pattern + ZERO))
        return normalize_torus(run, base.copy(pattern=st.pattern + RAMIFIED), root)
    cands = [(k, f) for k, f in R if f.is_monomial() or any(divides(f, b) for b in st.B)]
    if cands:
        col, f = _least(cands)
        record_prime_divisions(run.excluded, f)
        return st.copy(
            pattern=st.pattern + INERT,
            pivots=st.pivots + (col,),
            rows=st.rows + ((len(st.pattern), col, row),),
            pending=None,
        )
    col, f = _least(R)
    record_prime_divisions(run.excluded, f)
    fp = f.primitive()
    sibling = st.copy(A=st.A + (fp,), pending=row)
    if run.options.substitute:
        sibling = apply_linear_substitution(run, sibling)
    if sibling is not None:
        stack.append(sibling)
    return st.copy(
        pattern=st.pattern + INERT,
        B=st.B + (fp,),
        pivots=st.pivots + (col,),
        rows=st.rows + ((len(st.pattern), col, row),),
        pending=None,
    )


def _solvable_variable(a: IntPoly, unit_only: bool):
    """For linear a, a (variable, coefficient) pair to solve for, or None."""
    if a.total_degree() != 1:
        return None
    best = None
    for m, c in a.terms():
        if sum(m) != 1:
            continue
        v = m.index(1) + 1
        if unit_only and abs(c) != 1:
            continue
        # later positions are expressed through earlier ones
        if best is None or (abs(c), -v) < (abs(best[1]), -best[0]):
            best = (v, c)
    return best


def _clean(A, B):
    """Normalize condition sets; None if the cell is visibly empty."""
    newA, newB = [], []
    for a in A:
        if not a:
            continue
        if a.is_monomial():
            # a constant or a product of nonzero indeterminates never vanishes
            return None
        a = a.primitive()
        if a not in newA:
            newA.append(a)
    for b in B:
        if not b:
            return None
        if b.is_monomial():
            continue
        b = b.primitive()
        if b not in newB:
            newB.append(b)
    if any(a in newB for a in newA):
        return None
    return tuple(newA), tuple(newB)


def apply_linear_substitution(run: _Run, st: SolverState) -> SolverState | None:
    """Eliminate indeterminates solvable from linear members of A.

    Returns None when the cell turns out to be empty.
    """
    unit_only = run.options.unit_substitution_only
    while True:
        pick = None
        for idx, a in enumerate(st.A):
            s = _solvable_variable(a, unit_only)
            if s is not None:
                pick = (idx, a, s)
                break
        if pick is None:
            return st
        idx, a, (v, c) = pick
        # a = c t_v + r  =>  t_v = -r / c
        r = a - c * IntPoly.gen(v, run.n)
        if not r:
            return None
        num, den = (-r, 1) if c == 1 else ((r, 1) if c == -1 else (-r, c))
        if den < 0:
            num, den = -num, -den

        def sub(p):
            if v not in p.variables():
                return p, 0
            out, primes = substitute_linear(p, v, num, den)
            run.excluded |= primes
            return out, p.degree_in(v)

        coords, dens = {}, dict(st.dens)
        for pos, x in st.coords.items():
            nx, deg = sub(x)
            coords[pos] = nx
            if den != 1 and deg:
                dens[pos] = dens.get(pos, 1) * den ** deg
        rows = tuple((s, col, {k: sub(p)[0] for k, p in row.items()}) for s, col, row in st.rows)
        pending = None
        if st.pending is not None:
            pending = {k: q for k, q in ((k, sub(p)[0]) for k, p in st.pending.items()) if q}
        A = [sub(x)[0] for j, x in enumerate(st.A) if j != idx]
        B = [sub(x)[0] for x in st.B]
        # t_v is a ramified-nonzero coordinate
        if den != 1:
            run.excluded |= integer_primes(den)
        if not r.is_monomial():
            B.append(num)
        cleaned = _clean(A, B)
        if cleaned is None:
            return None
        for _, col, row in rows:
            if not row.get(col):
                # a pivot entry can only vanish on an empty cell
                return None
        st = st.copy(
            coords=coords,
            dens=dens if den != 1 or st.dens else {},
            A=cleaned[0],
            B=cleaned[1],
            rows=rows,
            pending=pending,
            subs=st.subs + ((v, num, den),),
        )


def _finish(run: _Run, st: SolverState) -> Cell:
    eliminated = {v for v, _, _ in st.subs}
    free = tuple(
        r for r, ch in zip(run.basis, st.pattern)
        if ch == RAMIFIED and r not in st.J and r not in eliminated
    )
    A = tuple(sorted(st.A, key=IntPoly.sort_key))
    B = tuple(sorted(st.B, key=IntPoly.sort_key))
    return Cell(
        pattern=st.pattern,
        A=A,
        B=B,
        normalized=tuple(st.J),
        substitutions=tuple(st.subs),
        free_vars=free,
        basis=run.basis,
    )


def _search(run: _Run) -> None:
    width = len(run.basis)
    stack = [SolverState()]
    while stack:
        st = stack.pop()
        while st is not None:
            if len(st.pattern) == width:
                run.cells.append(_finish(run, st))
                break
            run.tick(len(st.pattern))
            row, R = row_reduce_step(run, st)
            st = branch(run, st, row, R, stack)


def parametrize(datum: RootDatum, table: BracketTable, options: Options | None = None) -> Parametrization:
    """All cells (c, A, B) covering the minimal representatives of U-orbits on u."""
    options = options or Options()
    run = _Run(datum, table, options, range(1, datum.N + 1))
    _search(run)
    return Parametrization(
        datum=datum,
        cells=run.cells,
        excluded_primes=frozenset(run.excluded),
        options=options,
        basis=run.basis,
        nodes=run.nodes,
    )


def parametrize_subquotient(
    datum: RootDatum,
    table: BracketTable,
    outer,
    inner=(),
    options: Options | None = None,
) -> Parametrization:
    """Cells for U-orbits on the subquotient m/n given by two root ideals."""
    outer, inner = frozenset(outer), frozenset(inner)
    for name, s in (("outer", outer), ("inner", inner)):
        if any(not 1 <= k <= datum.N for k in s):
            raise RootDataError(f"{name} ideal has indices outside 1..{datum.N}")
        bad = ideal_violation(datum, s)
        if bad is not None:
            i, j = bad
            raise RootDataError(
                f"{name} set is not an ideal: beta_{i} + beta_{j} = beta_{table.sums[(i, j)]} escapes it"
            )
    if not inner <= outer:
        raise RootDataError("inner ideal must be contained in the outer ideal")
    options = options or Options()
    run = _Run(datum, table, options, sorted(outer - inner))
    _search(run)
    return Parametrization(
        datum=datum,
        cells=run.cells,
        excluded_primes=frozenset(run.excluded),
        options=options,
        basis=run.basis,
        outer=tuple(sorted(outer)),
        inner=tuple(sorted(inner)),
        nodes=run.nodes,
    )
