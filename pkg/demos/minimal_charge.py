"""Width, height and charge of the bundle with splitting type k and class z*u."""

from localcharge.bundles import bundle
from localcharge.invariants import local_charge, min_charge

print(f"{'k':>2} {'w':>2} {'h':>2} {'chi':>3}  k-1")
for k in range(2, 6):
    rep = local_charge(bundle(k, k, "z*u"))
    print(f"{k:>2} {rep.width:>2} {rep.height:>2} {rep.chi:>3}  {min_charge(k)}")
