"""Tour of the cylinder-set geometry: shapes, census, shells, areas.

Run:  python demos/02_cylinder_atlas.py        (takes ~15 s for the census)
"""

from hurwitzlab.census import (eq3_containment_holds, eq3_reference_region,
                               prototype_census, region_area, shell_count)
from hurwitzlab.gaussian import GaussInt
from hurwitzlab.regions import (base_region_F, cylinder_region, is_regular,
                                region_classify)

gi = GaussInt

# ---------------------------------------------------------------------------
# F_1(a) = T[C_1(a)] for single digits.  Units give the empty set, norms
# 2, 4, 5 give the square with one or two circular bites, and |a|^2 >= 8
# gives the whole square back.

for a in (gi(1), gi(1, -1), gi(2), gi(2, 1), gi(3)):
    region = cylinder_region([a])
    cls = region_classify(region)
    cons = region.describe() if not region.is_empty else []
    print(f"F_1({a}): {cls:<11} {cons}")

# The irregular example: after the prefix (-1+i), the digit 1-2i pins the
# cylinder to a line segment (nonempty, but Lebesgue-null).
seg = cylinder_region([gi(-1, 1), gi(1, -2)])
print(f"\nF_2(-1+i, 1-2i): {region_classify(seg)}  {seg.describe()}")
print(f"is_regular((-1+i, 1-3i)) = {is_regular([gi(-1, 1), gi(1, -3)])}")

# ---------------------------------------------------------------------------
# The census walks every reachable shape.  It stabilizes: after some depth
# no new shape ever appears, confirming the finiteness of the prototype set.

census = prototype_census(max_depth=8)
rep = census.report()
print(f"\ncensus: {rep['total_nonempty_shapes']} nonempty shapes, "
      f"new per depth {rep['new_shapes_per_depth']}, "
      f"stabilized at depth {rep['stabilization_depth']}")
print(f"depth-1 forms (boundary-aware, non-full): {rep['depth1_forms']}")
print(f"interior classes mod rotation, excluding the full square: "
      f"{rep['interior_classes_mod_rotation_excluding_full']}")

# Every proper shape contains a rotated copy of int F_1(1-i) (the smallest
# prototype) and sits inside F: the two-sided containment behind the
# measure estimates.
ok = all(eq3_containment_holds(r.region) for r in census.proper_shapes())
print(f"reference-shape containment on all proper shapes: {ok}")

# ---------------------------------------------------------------------------
# Lattice shells of the inverted regions control how many digits are
# reachable at each sup-norm level.

F = base_region_F()
ref = eq3_reference_region()
print("\nshell counts (digits at sup-norm m in the inverted region):")
for m in (2, 3, 5, 10):
    print(f"  m={m:>2}:  full square {shell_count(F, m):>3}   "
          f"reference {shell_count(ref, m):>3}")

# Certified areas back the measure bands of the Monte Carlo experiments.
for digits in ([gi(2)], [gi(1, -1)]):
    lo, hi = region_area(cylinder_region(digits))
    label = ",".join(str(d) for d in digits)
    print(f"area F_1({label}) in [{lo:.12f}, {hi:.12f}]")
