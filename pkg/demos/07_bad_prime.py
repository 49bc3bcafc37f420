"""
Bad primes matter
=================

For G2 the polynomial holds at good q but not at q = 2: the sweep over
u(F_2) finds more orbits than the polynomial predicts.
"""
from chevorbits.counter import assemble_k
from chevorbits.finitefield import field_for
from chevorbits.oracle import adjoint_orbit_count
from chevorbits.parametrizer import parametrize
from chevorbits.rootdata import build_root_system
from chevorbits.zform import build_bracket_table

d = build_root_system("G", 2)
tb = build_bracket_table(d)
param = parametrize(d, tb)
k = assemble_k(param).total
print("G2: k =", k, " excluded primes", sorted(param.excluded_primes), " bad primes", sorted(d.bad_primes))
for q in (2, 5, 7):
    n = adjoint_orbit_count(tb, field_for(q))
    note = "" if n == k(q) else "  <- bad prime"
    print(f"q={q}: polynomial {k(q)}, sweep {n}{note}")
