"""
Orbit cells for A2
==================

Runs the backtracking parametrizer on u for type A2 and prints each cell as
a pattern (I inert, N ramified nonzero, 0 ramified zero) with its vanishing
and nonvanishing conditions.  Then repeats with torus normalization off.
"""
from chevorbits.parametrizer import Options, parametrize
from chevorbits.rootdata import build_root_system
from chevorbits.zform import build_bracket_table

d = build_root_system("A", 2)
tb = build_bracket_table(d)

for opts in (Options(), Options(normalize=False, substitute=False)):
    param = parametrize(d, tb, opts)
    print(f"normalize={opts.normalize} substitute={opts.substitute}: "
          f"{len(param.cells)} cells, excluded primes {sorted(param.excluded_primes)}")
    for c in param.sorted_cells():
        print("  ", c.pattern, "normalized", list(c.normalized),
              "A =", [str(a) for a in c.A], "B =", [str(b) for b in c.B])
