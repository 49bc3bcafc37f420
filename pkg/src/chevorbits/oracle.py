"""Brute-force ground truth: adjoint U(q)-orbits on u(q) by orbit sweeps.

Vectors of an F_q-space of dimension n are stored over F_p with n*e digits and
encoded as integers in base p (digit k*e + d is the d-th F_p-coordinate of the
k-th F_q-coordinate).  The group is generated by the root elements x_beta(s)
with s running over an additive F_p-basis of F_q; its orbits are the connected
components of the generator moves.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from .finitefield import FieldSpec
from .rootdata import RootDatum, RootDataError, validate_ideal
from .zform import BracketTable, divided_power_matrices

__all__ = [
    "OracleError",
    "OracleBudgetExceeded",
    "group_action_matrices",
    "adjoint_orbit_count",
    "orbit_labels",
    "centralizer_dim",
    "oracle_report",
    "DEFAULT_ORACLE_BUDGET",
]

DEFAULT_ORACLE_BUDGET = 10**7


class OracleError(RuntimeError):
    """Generator matrices failed a structural check."""


class OracleBudgetExceeded(RuntimeError):
    def __init__(self, message, required):
        super().__init__(message)
        self.required = required


def _space(datum: RootDatum, outer=None, inner=()) -> tuple[int, ...]:
    if outer is None:
        return tuple(range(1, datum.N + 1))
    outer, inner = set(outer), set(inner)
    for s in (outer, inner):
        if not validate_ideal(datum, s):
            raise RootDataError(f"{sorted(s)} does not span an ideal")
    if not inner <= outer:
        raise RootDataError("inner ideal must be contained in the outer ideal")
    return tuple(sorted(outer - inner))


def group_action_matrices(
    table: BracketTable,
    fs: FieldSpec,
    field_basis: Sequence[int] | None = None,
    outer=None,
    inner=(),
) -> list[np.ndarray]:
    """Matrices over F_p of Ad(x_beta(s)) on the (sub)quotient space.

    One matrix per positive root and per element s of ``field_basis``
    (default 1, w, ..., w^(e-1)); they act on column vectors of F_p-digits.
    """
    datum = table.datum
    space = _space(datum, outer, inner)
    pos = {r: k for k, r in enumerate(space)}
    e, p = fs.e, fs.p
    field_basis = list(fs.standard_basis() if field_basis is None else field_basis)
    if len(field_basis) != e:
        raise ValueError(f"an F_p-basis of F_{fs.q} has {e} elements, got {len(field_basis)}")
    dim = len(space) * e
    mats = []
    for beta in range(1, datum.N + 1):
        powers = divided_power_matrices(table, beta)
        for s in field_basis:
            g = np.zeros((dim, dim), dtype=np.int64)
            for k, m in enumerate(powers):
                mult = fs.mult_matrix(fs.power(s, k))
                for j in space:
                    for l in space:
                        c = int(m[j - 1, l - 1]) % p
                        if c:
                            bj, bl = pos[j] * e, pos[l] * e
                            g[bj:bj + e, bl:bl + e] = (g[bj:bj + e, bl:bl + e] + c * mult) % p
            _check_unitriangular(g, e, beta)
            mats.append(g)
    return mats


def _check_unitriangular(g: np.ndarray, e: int, beta: int) -> None:
    # column convention: root vectors only move to higher indices
    n = g.shape[0] // e
    eye = np.eye(e, dtype=np.int64)
    for a in range(n):
        for b in range(a, n):
            block = g[a * e:(a + 1) * e, b * e:(b + 1) * e]
            ok = np.array_equal(block, eye) if a == b else not block.any()
            if not ok:
                raise OracleError(f"action of root {beta} is not unitriangular (block {a},{b})")


class _Codec:
    def __init__(self, dim: int, p: int):
        self.dim = dim
        self.p = p
        self.weights = p ** np.arange(dim, dtype=np.int64)
        self.size = p ** dim

    def decode(self, codes: np.ndarray) -> np.ndarray:
        return (codes[:, None] // self.weights[None, :]) % self.p

    def encode(self, digits: np.ndarray) -> np.ndarray:
        return digits.dot(self.weights)


def _images(codec: _Codec, mats, codes: np.ndarray) -> np.ndarray:
    digits = codec.decode(codes)
    return np.concatenate([codec.encode((digits @ g.T) % codec.p) for g in mats])


def orbit_labels(
    table: BracketTable,
    fs: FieldSpec,
    outer=None,
    inner=(),
    field_basis=None,
    budget: int = DEFAULT_ORACLE_BUDGET,
) -> np.ndarray:
    """Orbit id (0, 1, ... in order of least element) for every encoded vector."""
    datum = table.datum
    space = _space(datum, outer, inner)
    dim = len(space) * fs.e
    size = fs.p ** dim
    if size > budget:
        raise OracleBudgetExceeded(
            f"space of size {fs.q}^{len(space)} = {size} exceeds the oracle budget {budget}", size
        )
    mats = [g for g in group_action_matrices(table, fs, field_basis, outer, inner)
            if not np.array_equal(g, np.eye(dim, dtype=np.int64))]
    codec = _Codec(dim, fs.p)
    labels = np.full(size, -1, dtype=np.int64)
    label = 0
    cursor = 0
    while True:
        free = np.flatnonzero(labels[cursor:] < 0)
        if not len(free):
            break
        start = cursor + int(free[0])
        cursor = start + 1
        labels[start] = label
        frontier = np.array([start], dtype=np.int64)
        while len(frontier) and mats:
            imgs = _images(codec, mats, frontier)
            imgs = np.unique(imgs[labels[imgs] < 0])
            labels[imgs] = label
            frontier = imgs
        label += 1
    return labels


def adjoint_orbit_count(
    table: BracketTable,
    fs: FieldSpec,
    outer=None,
    inner=(),
    field_basis=None,
    budget: int = DEFAULT_ORACLE_BUDGET,
) -> int:
    """Number of U(q)-orbits on u(q), or on the subquotient outer/inner."""
    labels = orbit_labels(table, fs, outer, inner, field_basis, budget)
    return int(labels.max()) + 1


def encode_vector(fs: FieldSpec, coords: Sequence[int]) -> int:
    """Code of the vector with F_q-coordinates ``coords`` (in space order)."""
    code = 0
    for k, x in enumerate(coords):
        for d, digit in enumerate(fs.digits(int(x))):
            code += digit * fs.p ** (k * fs.e + d)
    return code


def decode_vector(fs: FieldSpec, code: int, n: int) -> list[int]:
    digits = [(code // fs.p ** i) % fs.p for i in range(n * fs.e)]
    return [fs.from_digits(digits[k * fs.e:(k + 1) * fs.e]) for k in range(n)]


def centralizer_dim(
    table: BracketTable,
    x: Sequence[int],
    fs: FieldSpec,
    prefix: int,
    basis: Sequence[int] | None = None,
) -> int:
    """dim over F_q of {y in u : [y, x] has zero coordinates at the first ``prefix`` targets}.

    ``x`` lists F_q-coordinates on ``basis`` (default all positive roots);
    targets are taken in basis order.
    """
    datum = table.datum
    n = datum.N
    basis = tuple(range(1, n + 1)) if basis is None else tuple(basis)
    coords = {r: int(v) for r, v in zip(basis, x)}
    rows = []
    for j in basis[:prefix]:
        row = [0] * n
        for k, l, c in table.pairs_into(j):
            xl = coords.get(l, 0)
            if xl:
                t = int(fs.mul[fs.from_int(c), xl])
                row[k - 1] = int(fs.add[row[k - 1], t])
        rows.append(row)
    return n - _rank(rows, fs)


def _rank(rows, fs: FieldSpec) -> int:
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = int(fs.inv[m[rank][col]])
        m[rank] = [int(fs.mul[inv, a]) for a in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                f = int(fs.neg[m[i][col]])
                m[i] = [int(fs.add[a, fs.mul[f, b]]) for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def oracle_report(table: BracketTable, fs: FieldSpec, outer=None, inner=(), budget=DEFAULT_ORACLE_BUDGET) -> dict:
    datum = table.datum
    space = _space(datum, outer, inner)
    out = {
        "type": datum.type_label,
        "rank": datum.rank,
        "q": fs.q,
        "space_dim": len(space),
        "orbit_count": adjoint_orbit_count(table, fs, outer, inner, budget=budget),
        "irreducible_poly": fs.modulus_str(),
    }
    if outer is not None:
        out["subquotient"] = {"outer": sorted(outer), "inner": sorted(inner)}
    return out
