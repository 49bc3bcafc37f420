"""Root systems of the simple types with a fixed enumeration of positive roots.

Simple roots follow Bourbaki numbering.  Positive roots are stored as
coefficient vectors over the simple roots and enumerated height-first; within
one height the coefficient vectors are ordered lexicographically decreasing,
so that the simple roots keep their Bourbaki order (alpha_1 first).

All indices exposed by this module are 1-based, matching beta_1, ..., beta_N.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import numpy as np

__all__ = [
    "RootDatum",
    "RootDataError",
    "build_root_system",
    "cartan_matrix",
    "root_sum_index",
    "descending_central_indices",
    "validate_ideal",
    "ideal_violation",
]

BAD_PRIMES = {
    "A": frozenset(),
    "B": frozenset({2}),
    "C": frozenset({2}),
    "D": frozenset({2}),
    "G": frozenset({2, 3}),
    "F": frozenset({2, 3}),
    "E": frozenset({2, 3}),
}


class RootDataError(ValueError):
    """Invalid Cartan type or root subset."""


def _check_type(type_label: str, rank: int) -> None:
    if type_label not in "ABCDEFG" or len(type_label) != 1:
        raise RootDataError(f"unknown type {type_label!r}: expected one of A..G")
    if not isinstance(rank, int) or rank < 1:
        raise RootDataError(f"rank must be a positive integer, got {rank!r}")
    bounds = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 4,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }
    if not bounds[type_label]:
        rule = {
            "A": "A_r needs r >= 1",
            "B": "B_r needs r >= 2",
            "C": "C_r needs r >= 2",
            "D": "D_r needs r >= 4",
            "E": "E_r needs r in {6, 7, 8}",
            "F": "F_r needs r = 4",
            "G": "G_r needs r = 2",
        }[type_label]
        raise RootDataError(f"invalid type {type_label}{rank}: {rule}")


def cartan_matrix(type_label: str, rank: int) -> np.ndarray:
    """Cartan matrix ``A[i, j] = <alpha_j, alpha_i^vee>`` in Bourbaki numbering."""
    _check_type(type_label, rank)
    r = rank
    a = 2 * np.eye(r, dtype=np.int64)

    def link(i, j, aij=-1, aji=-1):
        a[i, j] = aij
        a[j, i] = aji

    if type_label in "ABC":
        for i in range(r - 1):
            link(i, i + 1)
        if type_label == "B":
            # alpha_r short
            a[r - 1, r - 2] = -2
        elif type_label == "C":
            # alpha_r long
            a[r - 2, r - 1] = -2
    elif type_label == "D":
        for i in range(r - 2):
            link(i, i + 1)
        link(r - 3, r - 1)
    elif type_label == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, r - 1):
            link(i, i + 1)
    elif type_label == "F":
        link(0, 1)
        link(1, 2, -1, -2)
        link(2, 3)
    elif type_label == "G":
        # alpha_1 short, alpha_2 long
        link(0, 1, -3, -1)
    return a


def _symmetrizer(a: np.ndarray) -> tuple[int, ...]:
    """Half squared lengths d_i with d_i a_ij = d_j a_ji, scaled to coprime integers."""
    r = a.shape[0]
    d: list[Fraction | None] = [None] * r
    d[0] = Fraction(1)
    todo = [0]
    while todo:
        i = todo.pop()
        for j in range(r):
            if j != i and a[i, j] != 0 and d[j] is None:
                d[j] = d[i] * int(a[i, j]) / int(a[j, i])
                todo.append(j)
    den = lcm(*(x.denominator for x in d))
    return tuple(int(x * den) for x in d)


def _positive_roots(a: np.ndarray) -> list[tuple[int, ...]]:
    r = a.shape[0]
    simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for j in range(r):
                # alpha_j-string through beta: beta - p alpha_j, ..., beta + q alpha_j
                p = 0
                down = list(beta)
                while True:
                    down[j] -= 1
                    if tuple(down) in roots:
                        p += 1
                    else:
                        break
                pairing = sum(beta[i] * int(a[j, i]) for i in range(r))
                if p - pairing > 0:
                    up = list(beta)
                    up[j] += 1
                    up = tuple(up)
                    if up not in roots:
                        roots.add(up)
                        nxt.append(up)
        layer = nxt
    return sorted(roots, key=lambda v: (sum(v), tuple(-x for x in v)))


@dataclass(frozen=True)
class RootDatum:
    """A reduced irreducible root system with a fixed enumeration of its positive roots.

    ``positive_roots`` is already listed in enumeration order, so
    ``enumeration`` is the identity; it is kept as an explicit field for the
    serialized form.
    """

    type_label: str
    rank: int
    positive_roots: tuple[tuple[int, ...], ...]
    cartan: tuple[tuple[int, ...], ...]
    heights: tuple[int, ...]
    enumeration: tuple[int, ...]
    bad_primes: frozenset[int]
    half_lengths: tuple[int, ...]
    requested_label: str = ""
    _index: dict = field(default=None, repr=False, compare=False, hash=False)

    @property
    def N(self) -> int:
        return len(self.positive_roots)

    @property
    def name(self) -> str:
        return f"{self.type_label}{self.rank}"

    def index_of(self, vector) -> int | None:
        """1-based index of a positive root given by its coefficient vector, or None."""
        return self._index.get(tuple(vector))

    def root(self, k: int) -> tuple[int, ...]:
        return self.positive_roots[k - 1]

    def inner(self, u, v) -> int:
        """Invariant form (alpha_i, alpha_j) = d_i a_ij extended bilinearly to the root lattice."""
        s = 0
        for i, ui in enumerate(u):
            if not ui:
                continue
            for j, vj in enumerate(v):
                if vj:
                    s += ui * vj * self.half_lengths[i] * self.cartan[i][j]
        return s

    def to_json(self) -> dict:
        return {
            "type": self.type_label,
            "rank": self.rank,
            "roots": [list(v) for v in self.positive_roots],
            "enumeration": list(self.enumeration),
            "heights": list(self.heights),
            "bad_primes": sorted(self.bad_primes),
        }


def build_root_system(type_label: str, rank: int) -> RootDatum:
    """Build the positive system of type ``type_label``, ``rank``.

    ``C2`` is canonicalized to ``B2``; the requested label is kept in
    :attr:`RootDatum.requested_label`.

    >>> build_root_system("G", 2).heights
    (1, 1, 2, 3, 4, 5)
    """
    type_label = str(type_label).upper()
    _check_type(type_label, rank)
    requested = f"{type_label}{rank}"
    if type_label == "C" and rank == 2:
        type_label = "B"
    a = cartan_matrix(type_label, rank)
    roots = _positive_roots(a)
    datum = RootDatum(
        type_label=type_label,
        rank=rank,
        positive_roots=tuple(roots),
        cartan=tuple(tuple(int(x) for x in row) for row in a),
        heights=tuple(sum(v) for v in roots),
        enumeration=tuple(range(1, len(roots) + 1)),
        bad_primes=BAD_PRIMES[type_label] | ({5} if (type_label, rank) == ("E", 8) else frozenset()),
        half_lengths=_symmetrizer(a),
        requested_label=requested,
        _index={v: k + 1 for k, v in enumerate(roots)},
    )
    return datum


def root_sum_index(datum: RootDatum, i: int, j: int) -> int | None:
    """Index k with beta_i + beta_j = beta_k, or None when the sum is not a root."""
    u, v = datum.root(i), datum.root(j)
    return datum.index_of(tuple(a + b for a, b in zip(u, v)))


def descending_central_indices(datum: RootDatum, l: int) -> frozenset[int]:
    """Root indices spanning the l-th term of the descending central series (heights > l)."""
    if l < 0:
        raise RootDataError(f"central series index must be >= 0, got {l}")
    return frozenset(k for k, h in enumerate(datum.heights, start=1) if h >= l + 1)


def ideal_violation(datum: RootDatum, indices) -> tuple[int, int] | None:
    """First pair (i, j) with i in the set and beta_i + beta_j a root outside it."""
    s = set(indices)
    for i in sorted(s):
        for j in range(1, datum.N + 1):
            k = root_sum_index(datum, i, j)
            if k is not None and k not in s:
                return (i, j)
    return None


def validate_ideal(datum: RootDatum, indices) -> bool:
    """True iff the span of the given root vectors is an ideal of the positive nilradical."""
    if any(not 1 <= k <= datum.N for k in indices):
        return False
    return ideal_violation(datum, indices) is None
