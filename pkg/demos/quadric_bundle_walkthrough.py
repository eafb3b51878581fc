"""Walk through one quadric-bundle verdict by hand.

A cubic with two D4 points contains the real plane {x3 = x4 = 0}. Projecting
from it fibres X over P^1 in quadric surfaces; X(R) has as many components as
there are runs of nonempty fibres around the circle P^1(R). This script
rebuilds that count step by step and compares it with the root-ordering
criterion, the float fibre scan and the final verdict.

    python3 demos/quadric_bundle_walkthrough.py
"""

from fractions import Fraction as Fr

from realcubic.bundles import bundle_for, component_count_over_line
from realcubic.criteria import two_d4_minus_line, two_d4_minus_two_components
from realcubic.families import F_, build_cubic, d1_poly, declared_singularities
from realcubic.oracle import fiber_scan_p1
from realcubic.singular import ade_type
from realcubic.verdict import analyze_family

# 24*sqrt(21) ~ 109.98 replaced by a nearby rational
params = {"t1": Fr(300), "t2": Fr(35), "t3": Fr(10999, 100), "t4": Fr(0), "t5": Fr(10), "t6": Fr(0)}
family = F_.TwoD4MinusQ

f = build_cubic(family, params)
print("F =", f)

data = declared_singularities(family, params)
for pt in data.points:
    print(f"  singular point {pt}: type {ade_type(f, pt)}")

gram = bundle_for(family, params)
print("\nfibre Gram matrix over the base coordinate x:")
for row in gram.matrix:
    print("  ", [str(e) for e in row])

d1 = d1_poly(params)
print("\nD1 =", d1)
cc = component_count_over_line(gram)
dec = cc.decomposition
print("boundary points:", ", ".join(f"{b.label()} ({b.fiber.value})" for b in dec.boundaries))
print("arcs:           ", ", ".join(a.fiber.value for a in dec.arcs))
print("nonempty runs around P^1(R):", cc.count)

print("\nroot-ordering criterion: two components =", two_d4_minus_two_components(params),
      "; line off the planes =", two_d4_minus_line(params))
scan = fiber_scan_p1(gram, 2048)
print(f"float fibre scan: {scan.component_count} run(s), stable={scan.stable}, margin={scan.min_margin:.2e}")

v = analyze_family(family, params)
print("\nverdict:", v.status.value, "components:", v.components)
for t in v.trace:
    print(f"  - {t.rule}: {t.outcome}")
