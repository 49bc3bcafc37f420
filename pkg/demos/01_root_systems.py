"""
Positive roots in height order
==============================

Builds a few root systems, lists their positive roots as coefficient vectors
over the simple roots, and shows the bad primes and the root sets of the
descending central series.
"""
from chevorbits.rootdata import build_root_system, descending_central_indices

for t, r in [("A", 3), ("B", 3), ("G", 2)]:
    d = build_root_system(t, r)
    print(f"{d.name}: {d.N} positive roots, bad primes {sorted(d.bad_primes)}")
    for k in range(1, d.N + 1):
        print(f"  {k:2d}  height {d.heights[k - 1]}  {d.root(k)}")

# C2 is stored as B2, with the requested label kept for display
c2 = build_root_system("C", 2)
print("C2 ->", c2.type_label, c2.rank, "requested", c2.requested_label)

f4 = build_root_system("F", 4)
for level in range(4):
    print(f"F4 level {level}: {len(descending_central_indices(f4, level))} roots")
