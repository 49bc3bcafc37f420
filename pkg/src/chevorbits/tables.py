"""Reference class-number polynomials, as ascending coefficients in v = q - 1.

``CLASS_NUMBERS[(type, rank)]`` is k(U(q)); ``SUBQUOTIENT_CLASS_NUMBERS[(type,
rank, l)]`` counts U(q)-classes in the l-th term of the descending central
series.  Types B and C of equal rank share their polynomial.
"""

from __future__ import annotations

from .counter import ClassPolynomial

__all__ = ["CLASS_NUMBERS", "SUBQUOTIENT_CLASS_NUMBERS", "expected_polynomial"]


def _p(*descending) -> tuple:
    return tuple(reversed(descending))


_RANK_TABLE = {
    ("A", 1): _p(1, 1),
    ("A", 2): _p(1, 3, 1),
    ("B", 2): _p(2, 4, 1),
    ("G", 2): _p(1, 5, 6, 1),
    ("A", 3): _p(2, 7, 6, 1),
    ("B", 3): _p(1, 8, 16, 9, 1),
    ("A", 4): _p(5, 20, 25, 10, 1),
    ("B", 4): _p(1, 11, 48, 88, 64, 16, 1),
    ("D", 4): _p(2, 15, 36, 34, 12, 1),
    ("F", 4): _p(1, 9, 40, 124, 256, 288, 140, 24, 1),
    ("A", 5): _p(1, 18, 70, 105, 65, 15, 1),
    ("B", 5): _p(2, 24, 132, 395, 630, 500, 180, 25, 1),
    ("D", 5): _p(2, 22, 106, 235, 240, 110, 20, 1),
}

CLASS_NUMBERS = dict(_RANK_TABLE)
for (_t, _r), _c in _RANK_TABLE.items():
    if _t == "B":
        CLASS_NUMBERS[("C", _r)] = _c

SUBQUOTIENT_CLASS_NUMBERS = {
    ("F", 4, 1): _p(1, 7, 24, 63, 119, 88, 20, 1),
    ("F", 4, 2): _p(2, 14, 50, 58, 17, 1),
    ("F", 4, 3): _p(2, 18, 35, 14, 1),
    ("E", 6, 1): _p(1, 10, 47, 153, 435, 993, 1315, 868, 255, 30, 1),
    ("E", 6, 2): _p(2, 28, 160, 386, 404, 165, 25, 1),
    ("E", 6, 3): _p(1, 11, 70, 148, 95, 20, 1),
    ("E", 7, 4): _p(1, 13, 94, 512, 1600, 2312, 1499, 395, 38, 1),
    ("E", 7, 5): _p(1, 10, 63, 292, 685, 700, 260, 32, 1),
    ("E", 7, 6): _p(3, 39, 172, 312, 170, 27, 1),
    ("E", 8, 10): _p(1, 17, 135, 719, 2568, 4652, 3014, 699, 52, 1),
    ("E", 8, 11): _p(1, 12, 92, 518, 1766, 1693, 516, 46, 1),
    ("E", 8, 12): _p(5, 67, 660, 964, 386, 41, 1),
}


def expected_polynomial(type_label: str, rank: int, level: int | None = None) -> ClassPolynomial | None:
    """Tabulated polynomial for the full group (level None) or a central-series term."""
    if level is None:
        c = CLASS_NUMBERS.get((type_label, rank))
    else:
        c = SUBQUOTIENT_CLASS_NUMBERS.get((type_label, rank, level))
    return None if c is None else ClassPolynomial(c)
