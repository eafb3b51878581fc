"""The Z/2 obstruction from complex conjugation on the class group.

For the 8-node cubics, conjugation swaps the nodes in pairs; which planes
through four nodes stay real decides everything. Three real planes give a
real line missing one of them (rational); a single real plane leaves
H^1(C2, Cl) = Z/2 (not stably rational).

    python3 demos/galois_obstruction.py
"""

from realcubic.cohomology import CATALOG_CASES, galois_module_catalog, h1_c2, h1_report
from realcubic.families import F_, catalog_planes
from realcubic.verdict import analyze_family, eight_a1_classify

print("H^1(C2, M) for the catalog modules")
for case in CATALOG_CASES:
    print(f"  {case:<22} {h1_c2(galois_module_catalog(case))}")

print("\nTwoA5 in detail:", h1_report(galois_module_catalog("TwoA5")))

print("\n8A1 realisations (a1 = 4, a2 = 1, a3 = 3)")
for variant in (1, 2, 3):
    params = {"a1": 4, "a2": 1, "a3": 3, "variant": variant}
    planes = catalog_planes(F_.EightA1, params)
    real = [str(pl) for pl in planes if pl.is_real()]
    v = analyze_family(F_.EightA1, params)
    step = next(t for t in v.trace if t.rule == "node conjugation")
    print(f"  variant {variant}: {len(real)} real plane(s) {real}")
    print(f"    {step.outcome}")
    print(f"    verdict {v.status.value}")

print("\nclassifying an explicit involution (12)(34)(58)(67):",
      eight_a1_classify({1: 2, 2: 1, 3: 4, 4: 3, 5: 8, 8: 5, 6: 7, 7: 6}))
