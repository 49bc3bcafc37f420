"""
Brute-force cross-check
=======================

Sweeps every vector of u(q) and follows the root-element moves to count
orbits directly, then compares with the polynomial from the parametrizer.
The q = 4 case runs over a nonprime field.
"""
import time

from chevorbits.counter import assemble_k
from chevorbits.finitefield import field_for
from chevorbits.oracle import adjoint_orbit_count
from chevorbits.parametrizer import parametrize
from chevorbits.rootdata import build_root_system
from chevorbits.zform import build_bracket_table

for t, r, qs in [("A", 1, [2, 3, 4, 5]), ("A", 2, [2, 3, 4, 5]), ("B", 2, [3, 5]), ("A", 3, [2, 3]), ("G", 2, [5])]:
    d = build_root_system(t, r)
    tb = build_bracket_table(d)
    k = assemble_k(parametrize(d, tb)).total
    for q in qs:
        t0 = time.perf_counter()
        n = adjoint_orbit_count(tb, field_for(q))
        print(f"{t}{r} q={q}: sweep {n}, polynomial {k(q)}  [{time.perf_counter() - t0:.2f}s]")
