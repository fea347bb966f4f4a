"""Width, height and local charge of a bundle, and the charge-gap scanner."""

from __future__ import annotations

import random
from dataclasses import dataclass, field, asdict

from .algebra.field import QQ
from .algebra.linalg import SparseEchelon
from .bundles import (CanonicalBundle, bundle, ext_param_count, ext_slots, is_instanton,
                      random_extension_class)
from .cone import FPModule, double_dual_with_ev, finite_length, NotFiniteLength
from .laurent import LaurentPoly, canonical_string
from . import pushforward
from .pushforward import (StabilizationError, presentation_at, stabilized_presentation)


class CrossCheckError(ArithmeticError):
    """Two independent routes to the same invariant disagree."""


@dataclass(frozen=True)
class InvariantReport:
    k: int
    j: int
    p: str
    width: int
    height: int
    chi: int
    is_instanton: bool
    split_class: int
    R_used: int
    stabilized: bool
    height_method: str = "direct"
    height_check: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.chi != self.width + self.height:
            raise CrossCheckError("chi must equal width + height")
        if self.width < 0 or self.height < 0:
            raise CrossCheckError("negative invariant")

    def as_dict(self) -> dict:
        d = asdict(self)
        d.pop("height_check")
        return d


# ---------------------------------------------------------------------------
# width

_WIDTH_CACHE: dict = {}


def width_of_module(M: FPModule) -> int:
    """Length of ``coker(M -> M^vv)``."""
    key = (M.cone.k, M.cone.field, M.ngens, tuple(M.relations))
    if key not in _WIDTH_CACHE:
        DD, ev = double_dual_with_ev(M)
        try:
            _WIDTH_CACHE[key] = finite_length(ev.cokernel())
        except NotFiniteLength as exc:
            raise NotFiniteLength(f"cokernel of the evaluation map is not of finite length "
                                  f"(truncation too small?): {exc}") from exc
    return _WIDTH_CACHE[key]


def clear_caches() -> None:
    """Forget memoised widths and presentations (used to recompute from scratch)."""
    _WIDTH_CACHE.clear()
    pushforward.clear_caches()


def width(b: CanonicalBundle, field=QQ, R: int | None = None, cap: int = 4) -> int:
    st = stabilized_presentation(b, cap, field) if R is None else presentation_at(b, R, field)
    return width_of_module(st.module)


# ---------------------------------------------------------------------------
# height


def gap_monomials(k: int, j: int, r: int) -> list[tuple[int, int]]:
    """Monomials ``u^r z^s`` of the first Čech group not hit by either chart."""
    return [(r, s) for s in range(k * r + 1, j)]


def height_direct(b: CanonicalBundle, field=QQ, cap: int = 64, detail: bool = False,
                  R_min: int = 0):
    """Length of ``R^1 pi_* E`` from the two-chart Čech complex.

    ``H^1`` is the Laurent space modulo ``z^j C[z,u] + O(V) + p * D`` where
    ``D`` collects the ``b`` with ``z^-j b`` holomorphic on the second chart.
    The first two pieces are monomial, so ``H^1`` is the span of the gap
    monomials ``u^r z^s`` (``k r < s < j``) modulo the projection of
    ``p * D``.  Truncating at u-degree ``R`` gives ``h(R)``; the degree-R
    contribution is ``h(R) - h(R-1)``.  We stop after two consecutive zero
    contributions past the last gap degree (and not before ``R_min``).
    """
    k, j, p = b.k, b.j, b.p
    last_gap = (j - 2) // k if j >= 2 else -1
    mod = field.modulus
    contributions = []
    total = 0
    zeros = 0
    R = 0
    while True:
        gaps = [g for r in range(R + 1) for g in gap_monomials(k, j, r)]
        gapset = set(gaps)
        ech = SparseEchelon(gaps, field)
        m0 = p.min_u_degree()
        if m0 is not None:
            for rb in range(0, R - m0 + 1):
                for sb in range(0, k * rb + j + 1):
                    row: dict = {}
                    for (rp, sp), c in p.terms.items():
                        key = (rp + rb, sp + sb)
                        if key in gapset:
                            v = row.get(key, 0) + field(c)
                            row[key] = v % mod if mod else v
                    if row:
                        ech.add(row)
        h_R = len(gaps) - ech.rank
        contributions.append(h_R - total)
        total = h_R
        zeros = zeros + 1 if contributions[-1] == 0 else 0
        if zeros >= 2 and R > last_gap and R >= R_min:
            break
        R += 1
        if R > cap:
            raise StabilizationError(f"height did not stabilise by u-degree {cap}")
    if detail:
        return total, contributions
    return total


def height_split(k: int, j: int) -> int:
    return sum(j - 1 - k * r for r in range(0, max(j - 1, 0)) if k * r <= j - 2)


def height_mu(k: int, j: int, m: int) -> int:
    return max(0, min(m, (j - 2) // k + 1))


def height_closed_form(b: CanonicalBundle) -> int:
    """``mu (j - 1 - k (mu - 1) / 2)`` with ``mu = min(m, floor((j-2)/k) + 1)``."""
    if b.p.is_zero():
        raise ValueError("closed form needs a non-split bundle; use height_split")
    m = b.p.min_u_degree()
    mu = height_mu(b.k, b.j, m)
    num = mu * (2 * (b.j - 1) - b.k * (mu - 1))
    return num // 2


def holomorphic_class(b: CanonicalBundle) -> bool:
    """True if every monomial ``u^r z^s`` of ``p`` is holomorphic on both charts."""
    return all(0 <= s <= b.k * r for r, s in b.p.terms)


def height_samples(k: int, j: int, samples: int, seed: int) -> list[LaurentPoly]:
    """Classes on which the closed form is exact: one generic, the rest holomorphic.

    The first class has random coefficients on every slot; the others have
    random coefficients on random nonempty sets of slots with ``0 <= s <= k r``.
    """
    rng = random.Random(f"height:{seed}:{k}:{j}")
    slots = ext_slots(k, j)
    if not slots:
        return []
    hol = [(r, s) for r, s in slots if 0 <= s <= k * r]
    out = [random_extension_class(k, j, rng)]
    while len(out) < samples and hol:
        subset = sorted(rng.sample(hol, rng.randint(1, len(hol))))
        out.append(random_extension_class(k, j, rng, subset))
    return out


def check_height(b: CanonicalBundle, h: int) -> dict:
    """Compare a directly computed height with the closed forms.

    For split bundles equality with the split formula is required.  For
    non-split bundles the closed form is a lower bound, attained when ``p``
    is holomorphic on the whole surface and by generic classes; special
    classes with poles can exceed it.
    """
    if b.p.is_zero():
        ref = height_split(b.k, b.j)
        if h != ref:
            raise CrossCheckError(f"height {h} differs from split formula {ref} for {b}")
        return {"reference": "split_formula", "value": ref, "equal": True}
    ref = height_closed_form(b)
    if h < ref:
        raise CrossCheckError(f"height {h} below closed form {ref} for {b}")
    if h != ref and holomorphic_class(b):
        raise CrossCheckError(f"height {h} differs from closed form {ref} for {b}, "
                              f"whose class is holomorphic")
    return {"reference": "closed_form", "value": ref, "equal": h == ref}


# ---------------------------------------------------------------------------
# reports


def local_charge(b: CanonicalBundle, field=QQ, R: int | None = None, cap: int = 4,
                 cross_check: bool = True) -> InvariantReport:
    st = stabilized_presentation(b, cap, field) if R is None else presentation_at(b, R, field)
    w = width_of_module(st.module)
    h = height_direct(b, field)
    chk = check_height(b, h) if cross_check else {}
    return InvariantReport(k=b.k, j=b.j, p=canonical_string(b.p), width=w, height=h,
                           chi=w + h, is_instanton=is_instanton(b), split_class=b.j % b.k,
                           R_used=st.R_used, stabilized=st.stabilized, height_method="direct",
                           height_check=chk)


def min_charge(k: int) -> int:
    if k < 1:
        raise ValueError("k must be >= 1")
    return k - 1


def lowest_slot_class(k: int, j: int) -> LaurentPoly:
    """``u z^(k-j+1)``, the single monomial in the lowest admissible slot."""
    return LaurentPoly.monomial(1, k - j + 1)


def sample_classes(k: int, j: int, samples: int, seed: int) -> list[LaurentPoly]:
    """Deterministic extension classes for ``(k, j)``.

    The first is the lowest-slot monomial, the second a class with random
    coefficients on every slot, the rest random coefficients on random
    nonempty subsets of slots.  Without admissible slots only ``p = 0``.
    """
    if ext_param_count(k, j) == 0:
        return [LaurentPoly()]
    rng = random.Random(f"{seed}:{k}:{j}")
    slots = ext_slots(k, j)
    out = []
    for i in range(samples):
        if i == 0:
            out.append(lowest_slot_class(k, j))
        elif i == 1:
            out.append(random_extension_class(k, j, rng))
        else:
            size = rng.randint(1, len(slots))
            subset = sorted(rng.sample(slots, size))
            out.append(random_extension_class(k, j, rng, subset))
    return out


@dataclass
class ScanReport:
    k: int
    j_list: list
    reports: list
    violations: list
    min_chi: int | None
    argmin: InvariantReport | None
    bound: int

    @property
    def passed(self) -> bool:
        return not self.violations


def gap_scan(k: int, j_list, sample_count: int = 5, seed: int = 0, field=QQ,
             cap: int = 4) -> ScanReport:
    """Check ``chi >= k - 1`` on sampled bundles with splitting type ``>= k``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    reports = []
    violations = []
    for j in j_list:
        if j < k:
            continue
        for p in sample_classes(k, j, sample_count, seed):
            rep = local_charge(bundle(k, j, p), field, cap=cap)
            reports.append(rep)
            if rep.chi < k - 1:
                violations.append(rep)
    best = min(reports, key=lambda r: r.chi, default=None)
    return ScanReport(k, list(j_list), reports, violations,
                      best.chi if best else None, best, k - 1)
