"""Sampled charges for k = 3 with the same seed as the acceptance run."""

from localcharge.invariants import gap_scan

rep = gap_scan(3, range(3, 6), sample_count=5, seed=7)
for r in rep.reports:
    print(f"j={r.j} w={r.width} h={r.height} chi={r.chi}  p={r.p}")
print("PASS" if rep.passed else "FAIL", "min chi", rep.min_chi, "bound", rep.bound)
