"""
Counting triangulations of sums up to symmetry
==============================================

Small censuses: the hexagon summed with a segment, with the 4-dimensional
cross-polytope, and optionally with itself (about two minutes).  Pass
"--big" to include the last one.
"""

import sys
import time

from freesum.census import PUBLISHED, count_up_to_symmetry
from freesum.configuration import cross, dp, interval
from freesum.enumeration import brute_force_triangulations

cases = [
    (dp(2), interval([-1, 0, 1]), None),
    (dp(2), cross(4), brute_force_triangulations(cross(4), max_dim=4)),
]
if "--big" in sys.argv:
    cases.append((dp(2), dp(2), None))

for p, q, tqs in cases:
    t0 = time.time()
    r = count_up_to_symmetry(p, q, q_triangulations=tqs, materialize=True,
                             published=PUBLISHED.get((p.name, q.name)))
    print(f"{p.name} + {q.name}   ({time.time() - t0:.1f}s)")
    print(f"   summand orbit representatives: {r.p_representatives} x {r.q_representatives}")
    print(f"   symmetry group of the sum: order {r.sum_group_order}")
    for name, value in sorted(r.homomorphisms.items()):
        mark = "  <- reported" if name == r.convention else ""
        print(f"   {name:24s}{value:8d}{mark}")
    print(f"   distinct sum triangulations: {r.distinct_triangulations}, regular: {r.regular_triangulations}")
    print(f"   regular vs totally ordered webs: {r.regularity_vs_total_order}")
    if r.published:
        print(f"   published: {r.published}")
    print()

# the streaming mode keeps memory flat and reports a subset of conventions
lean = count_up_to_symmetry(dp(2), cross(4), q_triangulations=cases[1][2])
print("count-only:", lean.homomorphisms)
