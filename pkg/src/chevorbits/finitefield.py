"""Small finite fields F_q, q = p^e, with full addition and multiplication tables.

Elements are the integers 0..q-1; the base-p digits of an element are the
coefficients (constant term first) of a polynomial modulo a fixed monic
irreducible of degree e.  Conway polynomials are used where tabulated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

import numpy as np
from sympy import factorint

__all__ = ["FieldSpec", "field_for", "prime_power", "FieldError"]


class FieldError(ValueError):
    """q is not a prime power, or an operation left the field."""


# Conway polynomials, coefficients from the constant term up (monic).
CONWAY = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (7, 2): (3, 6, 1),
    (11, 2): (2, 7, 1),
    (13, 2): (2, 12, 1),
}


def prime_power(q: int) -> tuple[int, int]:
    """(p, e) with q = p^e, or FieldError."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    f = factorint(q)
    if len(f) != 1:
        raise FieldError(f"{q} is not a prime power")
    (p, e), = f.items()
    return int(p), int(e)


def _poly_mulmod(a, b, modulus, p):
    e = len(modulus) - 1
    prod = [0] * (2 * e - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for k in range(len(prod) - 1, e - 1, -1):
        c = prod[k]
        if c:
            for j in range(e + 1):
                prod[k - e + j] = (prod[k - e + j] - c * modulus[j]) % p
    return prod[:e]


def _is_irreducible(modulus, p) -> bool:
    e = len(modulus) - 1
    if e == 1:
        return True
    # no roots and no factors of lower degree: brute force over monic divisors
    for d in range(1, e // 2 + 1):
        for low in product(range(p), repeat=d):
            div = list(low) + [1]
            rem = list(modulus)
            for k in range(len(rem) - 1, d - 1, -1):
                c = rem[k]
                if c:
                    for j in range(d + 1):
                        rem[k - d + j] = (rem[k - d + j] - c * div[j]) % p
            if not any(rem[:d]):
                return False
    return True


def _default_modulus(p, e):
    if (p, e) in CONWAY:
        return CONWAY[(p, e)]
    for low in product(range(p), repeat=e):
        cand = tuple(low) + (1,)
        if cand[0] and _is_irreducible(cand, p):
            return cand
    raise FieldError(f"no irreducible polynomial of degree {e} over F_{p}")


@dataclass(frozen=True)
class FieldSpec:
    p: int
    e: int
    modulus: tuple
    add: np.ndarray = field(repr=False, compare=False)
    mul: np.ndarray = field(repr=False, compare=False)
    neg: np.ndarray = field(repr=False, compare=False)
    inv: np.ndarray = field(repr=False, compare=False)

    @property
    def q(self) -> int:
        return self.p ** self.e

    def modulus_str(self) -> str:
        terms = []
        for k in range(len(self.modulus) - 1, -1, -1):
            c = self.modulus[k]
            if not c:
                continue
            mono = "1" if k == 0 else ("x" if k == 1 else f"x^{k}")
            terms.append(mono if c == 1 and k else f"{c}" if k == 0 else f"{c}*{mono}")
        return " + ".join(terms)

    def from_int(self, n: int) -> int:
        """Image of an integer in the prime subfield."""
        return n % self.p

    def digits(self, a: int) -> list[int]:
        return [(a // self.p ** k) % self.p for k in range(self.e)]

    def from_digits(self, ds) -> int:
        return sum(int(d) * self.p ** k for k, d in enumerate(ds))

    def power(self, a: int, k: int) -> int:
        r = 1
        for _ in range(k):
            r = int(self.mul[r, a])
        return r

    def nonzero(self) -> np.ndarray:
        return np.arange(1, self.q)

    def mult_matrix(self, s: int) -> np.ndarray:
        """Matrix over F_p of x -> s*x in the basis 1, w, ..., w^(e-1)."""
        cols = [self.digits(int(self.mul[s, self.p ** k])) for k in range(self.e)]
        return np.array(cols, dtype=np.int64).T

    def standard_basis(self) -> list[int]:
        """Additive F_p-basis 1, w, ..., w^(e-1)."""
        return [self.p ** k for k in range(self.e)]

    def to_json(self) -> dict:
        return {"p": self.p, "e": self.e, "q": self.q, "irreducible_poly": self.modulus_str()}


@lru_cache(maxsize=None)
def field_for(q: int, modulus: tuple | None = None) -> FieldSpec:
    """F_q with the default (Conway where known) or the given modulus."""
    p, e = prime_power(q)
    modulus = tuple(modulus) if modulus is not None else _default_modulus(p, e)
    if len(modulus) != e + 1 or modulus[-1] != 1 or not _is_irreducible(modulus, p):
        raise FieldError(f"{modulus} is not a monic irreducible of degree {e} over F_{p}")
    elems = [[(a // p ** k) % p for k in range(e)] for a in range(q)]
    enc = lambda ds: sum(d * p ** k for k, d in enumerate(ds))
    add = np.zeros((q, q), dtype=np.int64)
    mul = np.zeros((q, q), dtype=np.int64)
    for a in range(q):
        for b in range(q):
            add[a, b] = enc([(x + y) % p for x, y in zip(elems[a], elems[b])])
            mul[a, b] = enc(_poly_mulmod(elems[a], elems[b], modulus, p)) if e > 1 else (a * b) % p
    neg = np.array([enc([(-x) % p for x in elems[a]]) for a in range(q)], dtype=np.int64)
    inv = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        hits = np.flatnonzero(mul[a] == 1)
        if len(hits) != 1:
            raise FieldError(f"{a} has no inverse modulo {modulus}")
        inv[a] = hits[0]
    return FieldSpec(p=p, e=e, modulus=modulus, add=add, mul=mul, neg=neg, inv=inv)
