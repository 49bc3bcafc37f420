"""Integral structure constants of the positive nilradical of a Chevalley basis.

Signs are fixed by the extraspecial-pair construction: for every non-simple
positive root xi the extraspecial pair (alpha, xi - alpha) has alpha the
positive root of smallest enumeration index with xi - alpha positive, and
N(alpha, xi - alpha) = +(p + 1).  All other constants follow from the standard
Chevalley-basis identities, computed in increasing height of the sum.

The bracket is [e_i, e_j] = N_ij e_k when beta_i + beta_j = beta_k.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import factorial

import numpy as np

from .rootdata import RootDatum, root_sum_index
from .sympoly import IntPoly

__all__ = [
    "BracketTable",
    "StructureConstantError",
    "build_bracket_table",
    "ad_matrix_symbolic",
    "ad_matrix_integer",
    "divided_power_matrices",
    "jacobi_violation",
]


class StructureConstantError(RuntimeError):
    """Internal inconsistency in the structure constants (a bug, never valid output)."""


@dataclass(frozen=True)
class BracketTable:
    datum: RootDatum
    constants: dict  # (i, j) -> N_ij, only for beta_i + beta_j a positive root
    sums: dict       # (i, j) -> k
    _by_target: dict = field(default=None, repr=False, compare=False, hash=False)

    @property
    def N(self) -> int:
        return self.datum.N

    def bracket(self, i: int, j: int) -> tuple[int, int] | None:
        """(k, N_ij) with [e_i, e_j] = N_ij e_k, or None if the bracket vanishes."""
        c = self.constants.get((i, j))
        if c is None:
            return None
        return self.sums[(i, j)], c

    def pairs_into(self, k: int) -> tuple[tuple[int, int, int], ...]:
        """All (i, j, N_ij) with beta_i + beta_j = beta_k."""
        return self._by_target.get(k, ())

    def bracket_vectors(self, x, y) -> list:
        """Bracket of two coefficient vectors (any ring supporting * and +)."""
        out = [0] * self.N
        for (i, j), c in self.constants.items():
            xi, yj = x[i - 1], y[j - 1]
            if xi and yj:
                k = self.sums[(i, j)]
                out[k - 1] = out[k - 1] + c * xi * yj
        return out

    def to_json(self) -> dict:
        return {
            "type": self.datum.type_label,
            "rank": self.datum.rank,
            "constants": [[i, j, self.sums[(i, j)], c] for (i, j), c in sorted(self.constants.items())],
        }


def _sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def _string_p(roots: set, alpha, beta) -> int:
    """Largest p with beta - p alpha a root."""
    p = 0
    cur = tuple(b - a for a, b in zip(alpha, beta))
    while cur in roots:
        p += 1
        cur = tuple(c - a for a, c in zip(alpha, cur))
    return p


def build_bracket_table(datum: RootDatum, check: bool = True) -> BracketTable:
    """Chevalley structure constants on the positive roots of ``datum``.

    With ``check`` the Jacobi identity is verified on every triple of basis
    vectors and a violation raises :class:`StructureConstantError`.
    """
    n = datum.N
    pos = datum.positive_roots
    allroots = set(pos) | {tuple(-x for x in v) for v in pos}
    length = [datum.inner(v, v) for v in pos]

    sums: dict[tuple[int, int], int] = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            k = root_sum_index(datum, i, j)
            if k is not None:
                sums[(i, j)] = k

    extraspecial: dict[int, tuple[int, int]] = {}
    for (i, j), k in sorted(sums.items()):
        if i < j and k not in extraspecial:
            extraspecial[k] = (i, j)

    def p_of(i, j):
        return _string_p(allroots, pos[i - 1], pos[j - 1])

    const: dict[tuple[int, int], int] = {}

    def mixed(a: int, b: int) -> Fraction:
        """N_{beta_a, -beta_b} for positive a != b, zero if beta_a - beta_b is not a root."""
        va, vb = pos[a - 1], pos[b - 1]
        diff = tuple(x - y for x, y in zip(va, vb))
        d = datum.index_of(diff)
        if d is not None:
            # d + b = a
            return Fraction(-length[d - 1] * const[(b, d)], length[a - 1])
        d = datum.index_of(tuple(-x for x in diff))
        if d is not None:
            # d + a = b
            return Fraction(length[d - 1] * const[(d, a)], length[b - 1])
        return Fraction(0)

    by_height = sorted(extraspecial, key=lambda k: datum.heights[k - 1])
    for k in by_height:
        a0, b0 = extraspecial[k]
        const[(a0, b0)] = p_of(a0, b0) + 1
        const[(b0, a0)] = -const[(a0, b0)]
        lk = length[k - 1]
        for (i, j), kk in sums.items():
            if kk != k or i >= j or (i, j) == (a0, b0):
                continue
            # four-term identity on (beta_i, beta_j, -beta_a0, -beta_b0)
            t1 = mixed(j, a0) * mixed(i, b0)
            if t1:
                t1 /= datum.inner(_sub(pos[j - 1], pos[a0 - 1]), _sub(pos[j - 1], pos[a0 - 1]))
            t2 = -mixed(i, a0) * mixed(j, b0)
            if t2:
                t2 /= datum.inner(_sub(pos[i - 1], pos[a0 - 1]), _sub(pos[i - 1], pos[a0 - 1]))
            val = Fraction(lk, const[(a0, b0)]) * (t1 + t2)
            if val.denominator != 1 or abs(val) != p_of(i, j) + 1:
                raise StructureConstantError(
                    f"{datum.name}: N({i},{j}) = {val}, expected +-{p_of(i, j) + 1}"
                )
            const[(i, j)] = int(val)
            const[(j, i)] = -int(val)

    by_target: dict[int, list] = {}
    for (i, j), k in sorted(sums.items()):
        by_target.setdefault(k, []).append((i, j, const[(i, j)]))
    table = BracketTable(
        datum=datum,
        constants=const,
        sums=sums,
        _by_target={k: tuple(v) for k, v in by_target.items()},
    )
    if check:
        bad = jacobi_violation(table)
        if bad is not None:
            raise StructureConstantError(f"{datum.name}: Jacobi identity fails on {bad}")
    return table


def jacobi_violation(table: BracketTable) -> tuple[int, int, int] | None:
    """First triple of basis indices violating the Jacobi identity, or None."""
    n = table.N
    br = table.bracket

    def double(i, j, k):
        # [[e_i, e_j], e_k] as (index, coefficient) or None
        ij = br(i, j)
        if ij is None:
            return None
        out = br(ij[0], k)
        if out is None:
            return None
        return out[0], ij[1] * out[1]

    for i, j, k in combinations(range(1, n + 1), 3):
        acc: dict[int, int] = {}
        for term in (double(i, j, k), double(j, k, i), double(k, i, j)):
            if term is not None:
                acc[term[0]] = acc.get(term[0], 0) + term[1]
        if any(acc.values()):
            return (i, j, k)
    return None


def ad_matrix_symbolic(table: BracketTable, coords, rows=None) -> list[list]:
    """Matrix P with [sum_k y_k e_k, x] = sum_{j,k} P[j][k] y_k e_j.

    ``coords`` maps 1-based root index to the coefficient of x (any
    ring element; absent or falsy means zero).  ``rows`` restricts to the
    given 1-based target indices (default: all N).  Returned as a list of
    N-length rows, zero entries as ``0``.
    """
    n = table.N
    rows = range(1, n + 1) if rows is None else rows
    out = []
    for j in rows:
        row = [0] * n
        for k, l, c in table.pairs_into(j):
            x = coords.get(l)
            if x:
                row[k - 1] = row[k - 1] + c * x
        out.append(row)
    return out


def pattern_coords(pattern, nvars=None) -> dict:
    """x_c(t) for a pattern string: one indeterminate t_k per R_nn position k."""
    nvars = nvars or len(pattern)
    return {k: IntPoly.gen(k, nvars) for k, ch in enumerate(pattern, start=1) if ch == "N"}


def ad_matrix_integer(table: BracketTable, root_index: int) -> np.ndarray:
    """Integer matrix of ad(e_beta) on the positive nilradical, acting on column vectors."""
    n = table.N
    m = np.zeros((n, n), dtype=object)
    for k in range(1, n + 1):
        b = table.bracket(root_index, k)
        if b is not None:
            m[b[0] - 1, k - 1] = b[1]
    return m


def divided_power_matrices(table: BracketTable, root_index: int) -> list[np.ndarray]:
    """[(ad e_beta)^k / k! for k = 0, 1, ...] up to the last nonzero power.

    Entries are exact Python integers (object arrays); a non-integral entry
    raises :class:`StructureConstantError`.
    """
    n = table.N
    d = ad_matrix_integer(table, root_index)
    out = [np.eye(n, dtype=np.int64).astype(object)]
    power = out[0]
    k = 0
    while True:
        k += 1
        power = power.dot(d)
        if not power.any():
            break
        f = factorial(k)
        if any(int(x) % f for x in power.flat):
            raise StructureConstantError(
                f"{table.datum.name}: (ad e_{root_index})^{k}/{k}! is not integral"
            )
        out.append(np.vectorize(lambda x: int(x) // f, otypes=[object])(power))
    return out
