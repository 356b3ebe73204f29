"""
A four-dimensional sum of two polygons
======================================

The hexagon DP(2) is summed with a 3x3 grid.  A triangulation of the hexagon,
one of the grid, and a web of stars mapping hexagon triangles to star-shaped
balls in the grid together determine a triangulation of the 4-dimensional
sum.  We build it, check it, and take it apart again.
"""

from freesum.catalog import HEX_ALPHA, hexagon_example
from freesum.stabbing import build_stabbing_poset
from freesum.starballs import enumerate_star_balls
from freesum.sumtri import construct_sum_triangulation, decompose
from freesum.verify import verify_triangulation
from freesum.webs import complement_transpose, is_proper, satisfies_psum_condition

tp, tq, alpha = hexagon_example()
print("hexagon cells:", len(tp.cells), " grid cells:", len(tq.cells))

# the stabbing order on the hexagon triangles: the one at the origin comes first
poset = build_stabbing_poset(tp)
print("minimal hexagon cells:", [sorted(tp.cells[i]) for i in poset.minimal])
print("Hasse edges:", poset.hasse)

# candidate images: star-shaped balls of the grid triangulation
balls = enumerate_star_balls(tq)
print(len(balls), "star-shaped balls in the grid triangulation")

print("web (by label):", HEX_ALPHA)
print("proper:", bool(is_proper(alpha)), " pinned at the origin:", bool(satisfies_psum_condition(alpha)))
print("partner web images:", complement_transpose(alpha).images)

st = construct_sum_triangulation(tp, tq, alpha)
t = st.triangulation
print(f"\nsum triangulation: {len(t)} cells, {len(t.vertices)} vertices")
print("verification:", verify_triangulation(t).to_dict())

# decomposing gives back the hexagon triangulation and a refinement of the grid one
back = decompose(t)
print("\nrecovered hexagon triangulation equal:", back.tp == tp)
print("recovered grid cells:", len(back.tq.cells), "(the cell through the origin is coned)")
again = construct_sum_triangulation(back.tp, back.tq, back.alpha, config=st.config)
print("rebuild equals input:", again.triangulation == t)
