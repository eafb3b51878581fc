"""Count the components of a conic-bundle image with the grid oracle.

For F = x3*(x1^2 + x2^2) + x1*q1 + x2*q2 + f3 the real points project onto
the region {G >= 0} in P^2, with G = (q1^2 + q2^2)/4 - x3*f3. The oracle
samples a hemisphere grid, glues antipodal boundary nodes and counts
connected components; a result is "stable" when half the resolution gives
the same count and no sign change is too close to call.

    python3 demos/conic_region_oracle.py [output_dir]
"""

import sys
from pathlib import Path

from realcubic.bundles import conic_bundle_from_cubic
from realcubic.families import build_cubic
from realcubic.oracle import region_components_p2, write_pgm
from realcubic.suite import EXAMPLES

out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else None

for name in ("2A4, disconnected", "2A4, connected", "4A1 general, disconnected", "4A1 general, connected"):
    ex = next(e for e in EXAMPLES if e.name == name)
    model = conic_bundle_from_cubic(build_cubic(ex.family, ex.params))
    print(f"{name}:  G = {model.region_poly}")
    for res in (128, 256, 512):
        rep = region_components_p2(model.region_poly, res, ("x3", "x4", "x5"))
        print(f"   resolution {res:>4}: {rep.component_count} component(s), "
              f"margin {rep.min_margin:.2e}, stable={rep.stable}")
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
        path = out_dir / (name.replace(" ", "_").replace(",", "") + ".pgm")
        write_pgm(rep, path)
        print(f"   mask written to {path}")
