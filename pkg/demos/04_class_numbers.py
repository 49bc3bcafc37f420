"""
Class numbers as polynomials in v = q - 1
=========================================

Counts the points of every cell symbolically and sums them.  The totals are
compared against the tabulated polynomials and evaluated at a few q.
"""
from chevorbits.counter import assemble_k
from chevorbits.parametrizer import parametrize
from chevorbits.rootdata import build_root_system
from chevorbits.tables import expected_polynomial
from chevorbits.zform import build_bracket_table

for t, r in [("A", 1), ("A", 2), ("B", 2), ("G", 2), ("A", 3), ("B", 3), ("C", 3), ("D", 4), ("F", 4)]:
    d = build_root_system(t, r)
    report = assemble_k(parametrize(d, build_bracket_table(d)))
    k = report.total
    flag = "matches table" if k == expected_polynomial(t, r) else "DIFFERS from table"
    print(f"{t}{r}: k = {k}  ({flag})")
    print(f"      in q: {k.q_text()};  k(U(3)) = {k(3)}, k(U(5)) = {k(5)}")
