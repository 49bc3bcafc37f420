"""
B3 against C3
=============

On all of u the class numbers of B3 and C3 agree.  Restricting to the derived
subgroup (roots of height at least 2) separates them; both the per-q count
and the orbit sweep show it.
"""
from chevorbits.counter import assemble_k
from chevorbits.finitefield import field_for
from chevorbits.oracle import adjoint_orbit_count
from chevorbits.parametrizer import parametrize, parametrize_subquotient
from chevorbits.rootdata import build_root_system, descending_central_indices
from chevorbits.zform import build_bracket_table

for t in "BC":
    d = build_root_system(t, 3)
    tb = build_bracket_table(d)
    full = assemble_k(parametrize(d, tb)).total
    derived = descending_central_indices(d, 1)
    sub = assemble_k(parametrize_subquotient(d, tb, derived, ())).total
    print(f"{t}3 full: {full}")
    print(f"{t}3 derived: {sub}")
    for q in (3, 5):
        print(f"   q={q}: polynomial {sub(q)}, sweep {adjoint_orbit_count(tb, field_for(q), outer=derived)}")
