import json

import pytest
from hypothesis import given, strategies as st

from chevorbits.counter import (
    UNRESOLVED,
    ClassPolynomial,
    CountError,
    EnumerationBudgetExceeded,
    InterpolationMismatch,
    assemble_k,
    count_cell_at_q,
    count_cell_symbolic,
    forbidden_primes,
    good_prime_powers,
    interpolate_and_verify,
)
from chevorbits.finitefield import field_for
from chevorbits.oracle import adjoint_orbit_count
from chevorbits.parametrizer import Cell, Options, parametrize
from chevorbits.sympoly import IntPoly

N = 6
T = [None] + [IntPoly.gen(i, N) for i in range(1, N + 1)]


def cell(A=(), B=(), free=(1, 2, 3), J=()):
    return Cell(pattern="N" * len(free), A=tuple(A), B=tuple(B), normalized=tuple(J),
                substitutions=(), free_vars=tuple(free), basis=tuple(range(1, len(free) + 1)))


V = ClassPolynomial.v()


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 9])
def test_count_at_q_examples(q):
    assert count_cell_at_q(cell(), q) == (q - 1) ** 3
    assert count_cell_at_q(cell(A=[T[1] - 1]), q) == (q - 1) ** 2
    assert count_cell_at_q(cell(B=[T[1] - 1]), q) == (q - 1) ** 2 * (q - 2)
    assert count_cell_at_q(cell(J=(4, 5)), q) == (q - 1) ** 5


def test_symbolic_examples():
    assert count_cell_symbolic(cell()) == V * V * V
    assert count_cell_symbolic(cell(B=[T[1] - 1], free=(1, 2))) == V * V - V
    assert count_cell_symbolic(cell(A=[T[1] - T[2] * T[3]])) == V * V


def test_symbolic_unresolved_on_nonpolynomial_count():
    c = cell(A=[T[1] ** 2 + 1], free=(1,))
    assert count_cell_symbolic(c) == UNRESOLVED
    # the number of square roots of -1 depends on q mod 4
    with pytest.raises(InterpolationMismatch) as err:
        interpolate_and_verify(c, 1, [3, 5, 7, 9, 11], forbidden={2})
    assert err.value.q in (7, 9, 11)


def test_interpolation_examples():
    poly, checks = interpolate_and_verify(cell(free=(1, 2)), 2, [3, 5, 7, 11, 13, 17])
    assert poly == V * V and checks == (11, 13, 17)
    poly, _ = interpolate_and_verify(cell(B=[T[1] - 1], free=(1,)), 1, [3, 4, 5, 7, 8])
    assert poly == V - 1
    with pytest.raises(CountError):
        interpolate_and_verify(cell(free=(1, 2)), 2, [3, 5, 7, 11])


SYMBOLIC_CASES = [
    cell(A=[T[1] - T[2] - T[3]]),
    cell(A=[T[1] * T[2] - T[3] ** 2]),
    cell(B=[T[1] + T[2], T[2] + T[3], T[1] + T[3]]),
    cell(A=[T[1] + T[2] + T[3]], B=[T[1] - T[2]]),
    cell(A=[T[1] * T[2] + T[3] - 1]),
    cell(A=[T[1] * T[3] - T[2] * T[3] + T[2]], B=[T[1] - 1]),
    cell(B=[T[1] * T[2] - 1, T[1] - T[3]]),
    cell(A=[3 * T[1] - T[2]], free=(1, 2)),
]


@pytest.mark.parametrize("c", SYMBOLIC_CASES, ids=lambda c: ";".join(map(str, c.A + c.B)))
def test_symbolic_matches_enumeration(c):
    poly = count_cell_symbolic(c, allowed_primes={2, 3})
    assert poly != UNRESOLVED
    for q in (5, 7, 11, 25):
        assert poly(q) == count_cell_at_q(c, q, {2, 3})


def test_bad_and_budget_guards():
    with pytest.raises(CountError):
        count_cell_at_q(cell(), 4, forbidden={2})
    with pytest.raises(EnumerationBudgetExceeded) as err:
        count_cell_at_q(cell(A=[T[1] + T[2] + T[3] - 1]), 101, budget=1000, cell_id="#7")
    assert err.value.cell_id == "#7" and err.value.required == 100 ** 3


def test_good_prime_powers():
    assert good_prime_powers({2}, 5) == [3, 5, 7, 9, 11]
    assert good_prime_powers(set(), 4) == [2, 3, 4, 5]


@given(st.lists(st.integers(-50, 50), max_size=8))
def test_class_polynomial_round_trips(coeffs):
    p = ClassPolynomial(tuple(coeffs))
    assert ClassPolynomial.parse(p.to_text()) == p
    assert ClassPolynomial.from_json(json.loads(json.dumps(p.to_json()))) == p
    qc = p.q_coeffs()
    for q in (2, 3, 7):
        assert sum(c * q ** k for k, c in enumerate(qc)) == p(q)


def test_display_format():
    p = ClassPolynomial((1, 14, 35, 18, 2))
    assert str(p) == "2v^4+18v^3+35v^2+14v+1"
    assert ClassPolynomial((1, 1)).q_text() == "q"
    assert str(ClassPolynomial((0, -1, 1))) == "v^2-v"


@pytest.mark.parametrize("t,r", [("A", 3), ("B", 3), ("C", 3), ("G", 2), ("D", 4), ("B", 4)])
def test_symbolic_equals_per_q_per_cell(param, t, r):
    p = param(t, r)
    bad = forbidden_primes(p)
    for c in p.cells:
        poly = count_cell_symbolic(c, bad)
        for q in good_prime_powers(bad, 3, start=5):
            assert poly(q) == count_cell_at_q(c, q, bad)


@pytest.mark.parametrize("strategy", ["symbolic", "interpolate"])
def test_assemble_examples(param, strategy):
    assert assemble_k(param("A", 2), strategy).total == ClassPolynomial((1, 3, 1))
    assert assemble_k(param("G", 2), strategy).total == ClassPolynomial((1, 6, 5, 1))
    want = ClassPolynomial((1, 9, 16, 8, 1))
    assert assemble_k(param("B", 3), strategy).total == want
    assert assemble_k(param("C", 3), strategy).total == want


def test_report_sum_consistency(param):
    p = param("B", 3)
    rep = assemble_k(p, "per-q", qs=[3, 5, 7])
    for q in (3, 5, 7):
        assert rep.values[q] == sum(c.values[q] for c in rep.cells)
    sym = assemble_k(p, "symbolic", qs=[3, 5, 7])
    for q in (3, 5, 7):
        assert sym.values[q] == rep.values[q] == sum(c.polynomial(q) for c in sym.cells)
    j = json.loads(json.dumps(sym.to_json()))
    assert j["total"]["text"] == "v^4+8v^3+16v^2+9v+1"
    assert {"cell_id", "strategy", "polynomial", "verified_at"} <= set(j["cells"][0])


def test_per_q_rejects_bad_prime(param):
    with pytest.raises(CountError):
        assemble_k(param("B", 2), "per-q", qs=[2])


@pytest.mark.parametrize("t,r,qs", [("A", 2, (2, 3, 4, 5)), ("B", 2, (3, 5, 9)), ("A", 3, (2, 3, 4)),
                                    ("G", 2, (5, 7)), ("C", 3, (3,))])
def test_pipeline_matches_oracle(build, param, t, r, qs):
    _, tb = build(t, r)
    total = assemble_k(param(t, r)).total
    for q in qs:
        assert total(q) == adjoint_orbit_count(tb, field_for(q))


@pytest.mark.parametrize("t,r", [("A", 3), ("B", 3), ("G", 2), ("D", 4)])
def test_non_unit_substitution_policy_keeps_counts(build, t, r):
    d, tb = build(t, r)
    strict = assemble_k(parametrize(d, tb, Options())).total
    loose_param = parametrize(d, tb, Options(unit_substitution_only=False))
    assert assemble_k(loose_param).total == strict
    assert loose_param.excluded_primes <= d.bad_primes | {2, 3}


def test_interpolated_subquotient_total(param):
    rep = assemble_k(param("F", 4, level=3), "interpolate")
    assert rep.total == ClassPolynomial.parse("2v^4+18v^3+35v^2+14v+1")
    assert all(c.strategy == "interpolate" and len(c.verified_at) >= 3 for c in rep.cells)
