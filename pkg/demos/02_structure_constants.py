"""
Integer structure constants
===========================

The bracket table of a Chevalley basis: [e_i, e_j] = N e_k for positive
roots.  Prints the nonzero brackets of G2 and checks the Jacobi identity on
every table up to rank 4.
"""
from chevorbits.rootdata import build_root_system
from chevorbits.zform import build_bracket_table, divided_power_matrices, jacobi_violation

g2 = build_bracket_table(build_root_system("G", 2))
for i in range(1, 7):
    for j in range(i + 1, 7):
        hit = g2.bracket(i, j)
        if hit:
            k, c = hit
            print(f"[e{i}, e{j}] = {c:+d} e{k}")

# (ad e_1)^k / k! stays integral
for k, m in enumerate(divided_power_matrices(g2, 1)):
    print(f"divided power {k}: max entry {abs(m).max()}")

for t, r in [("A", 4), ("B", 4), ("C", 4), ("D", 4), ("F", 4)]:
    tb = build_bracket_table(build_root_system(t, r), check=False)
    print(t, r, "Jacobi ok" if jacobi_violation(tb) is None else "Jacobi FAILS")
