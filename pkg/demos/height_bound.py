"""Compare the direct height with the closed form on every single-monomial class.

Holomorphic classes (0 <= s <= k r) meet the closed form; some classes with
poles along the curve sit strictly above it.
"""

import sys

from localcharge.bundles import bundle, ext_slots
from localcharge.invariants import height_closed_form, height_direct, holomorphic_class
from localcharge.laurent import LaurentPoly

k = int(sys.argv[1]) if len(sys.argv) > 1 else 3
for j in range(k, 2 * k + 1):
    for r, s in ext_slots(k, j):
        b = bundle(k, j, LaurentPoly.monomial(r, s))
        h, ref = height_direct(b), height_closed_form(b)
        tag = "holomorphic" if holomorphic_class(b) else "poles"
        mark = "" if h == ref else "  <- above"
        print(f"j={j} u^{r} z^{s:<3} h={h} closed={ref} {tag}{mark}")
