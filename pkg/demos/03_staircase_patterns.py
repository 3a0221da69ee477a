"""Full sets, foundations, staircases, and the four axis-contact types."""

import romp

print("== foundation extraction ==")
generating = [(0, 2), (1, 1), (3, 0), (2, 2), (4, 1), (5, 5)]
pattern = romp.foundation(generating)
print("generating set:", generating)
print("foundation    :", list(pattern.foundation), "(dominated points dropped)")

print("\n== membership in the full set ==")
for k in [(2, 1), (2, 0), (0, 2), (4, 0)]:
    print(f"  {k} in closure?", romp.closure_membership(pattern, k))

print("\n== descending staircase with corners ==")
path = romp.staircase(pattern)
print("path   :", list(path.points))
print("corners:", list(path.corners), "(componentwise maxima of neighbours)")
print("meet of (0,2) and (3,0):", romp.meet_corner((0, 2), (3, 0)))
print("join of (0,2) and (1,1):", romp.join_origin((0, 2), (1, 1)))

print("\n== axis-contact classification ==")
for points in [[(0, 2), (1, 1)], [(2, 1), (3, 0)], [(0, 2), (3, 0)], [(1, 1)]]:
    pat = romp.foundation(points)
    print(f"  {points} -> Type {romp.classify_type(pat)}")
