from chevorbits.counter import ClassPolynomial
from chevorbits.tables import CLASS_NUMBERS, SUBQUOTIENT_CLASS_NUMBERS, expected_polynomial


def test_b_and_c_share_polynomials():
    for r in (3, 4, 5):
        assert CLASS_NUMBERS[("B", r)] == CLASS_NUMBERS[("C", r)]


def test_constant_term_and_positivity():
    for c in list(CLASS_NUMBERS.values()) + list(SUBQUOTIENT_CLASS_NUMBERS.values()):
        assert c[0] == 1 and min(c) >= 0


def test_lookup():
    assert expected_polynomial("A", 2) == ClassPolynomial((1, 3, 1))
    assert expected_polynomial("F", 4, 3) == ClassPolynomial.parse("2v^4+18v^3+35v^2+14v+1")
    assert expected_polynomial("E", 6) is None
