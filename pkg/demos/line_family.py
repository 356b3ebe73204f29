"""
Every triangulation of a planar free sum of two segments
=========================================================

P = {-1, 0, 1, 2} on the x-axis, Q = {-1, 0, 1} on the y-axis.  Their free
sum is a quadrilateral with the origin inside.  We list its triangulations
by brute force and show that each one comes from a pair of summand
triangulations plus a web of stars.
"""

from freesum.catalog import line_case, line_cases, line_pair
from freesum.configuration import free_sum
from freesum.enumeration import brute_force_triangulations
from freesum.io import format_triangulation
from freesum.sumtri import construct_sum_triangulation, decompose
from freesum.verify import verify_triangulation

p, q = line_pair()
fs = free_sum(p, q)
print("points of the sum:", [tuple(int(x) for x in pt) for pt in fs.points])

# brute force: all sets of triangles that tile the hull
everything = brute_force_triangulations(fs)
print(len(everything), "triangulations in total\n")


def segs(t):
    return [sorted(int(t.config.points[v][0]) for v in c) for c in t.cells]


# each labelled case is (P triangulation, Q triangulation, alpha, beta, pinned side)
for label in line_cases():
    tp, tq, alpha, beta, side = line_case(label)
    st = construct_sum_triangulation(tp, tq, alpha, side=side, config=fs)
    ok = verify_triangulation(st.triangulation).ok
    print(f"case {label}: P cells {segs(tp)}, Q cells {segs(tq)}, pinned on {side}")
    print(f"   alpha images {alpha.images}, beta images {beta.images}")
    print(f"   -> {format_triangulation(st.triangulation)}  verified={ok}")

    # going back recovers the same data
    back = decompose(st.triangulation, prefer=side)
    assert back.alpha.images == alpha.images and back.beta.images == beta.images

# nothing is missed
built = {frozenset(construct_sum_triangulation(*line_case(k)[:3], side=line_case(k)[4], config=fs)
                   .triangulation.cells) for k in line_cases()}
print("\ncases cover every triangulation:", built == {frozenset(t.cells) for t in everything})
