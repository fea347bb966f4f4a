"""The cone ring S = k[x0..xk]/I of the contracted surface and modules over it.

All computations happen in the ambient polynomial ring with the generators
of I adjoined; there is no separate quotient-ring arithmetic.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Sequence

from .algebra.field import QQ
from .algebra.groebner import AugmentedBasis, GroebnerBasis, ModuleOrder, groebner, syzygies
from .algebra.linalg import SparseEchelon
from .algebra.polynomial import FreeVector, Polynomial, PolynomialRing
from .laurent import LaurentPoly


class NotFiniteLength(ValueError):
    """Raised when a module is not supported at the cone point."""


class ConeRing:
    """Coordinate ring of the cone over the rational normal curve of degree k."""

    def __init__(self, k: int, field=QQ):
        if k < 1:
            raise ValueError(f"k must be >= 1, got {k}")
        self.k = k
        self.field = field
        self.ring = PolynomialRing([f"x{i}" for i in range(k + 1)], field)
        xs = self.ring.gens()
        rels = []
        seen = set()
        for t in range(2, k + 1):
            for i in range(0, k - t + 1):
                f = xs[i] * xs[i + t] - xs[i + 1] * xs[i + t - 1]
                if f and f not in seen:
                    seen.add(f)
                    rels.append(f)
        self.relations = tuple(rels)

    def __repr__(self):
        return f"ConeRing(k={self.k}, field={self.field!r})"

    @property
    def nvars(self) -> int:
        return self.k + 1

    def gens(self) -> list[Polynomial]:
        return self.ring.gens()

    @cached_property
    def ideal(self) -> GroebnerBasis:
        return groebner(self.relations, "grevlex", ring=self.ring, rank=1)

    def reduce(self, f: Polynomial) -> Polynomial:
        return self.ideal.normal_form(f)

    def reduce_vector(self, v: FreeVector) -> FreeVector:
        if not self.relations:
            return v
        return FreeVector(self.ring, [self.ideal.normal_form(e) for e in v.entries])

    def pi_pullback(self, f: Polynomial) -> LaurentPoly:
        return pi_pullback(f)

    def monomial_for(self, r: int, t: int) -> tuple:
        """An x-monomial of degree ``r`` pulling back to ``u^r z^t`` (0 <= t <= k r)."""
        k = self.k
        if not 0 <= t <= k * r:
            raise ValueError(f"u^{r} z^{t} is not in the image of S")
        e = [0] * (k + 1)
        if r == 0:
            return tuple(e)
        q, rem = divmod(t, k)
        if q == r:
            e[k] = r
            return tuple(e)
        e[k] += q
        e[rem] += 1
        e[0] += r - q - 1
        return tuple(e)


@lru_cache(maxsize=None)
def cone_ring(k: int, field=QQ) -> ConeRing:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return ConeRing(k, field)


def pi_pullback(f: Polynomial) -> LaurentPoly:
    """Substitute ``x_i -> z^i u``."""
    out: dict = {}
    for exps, c in f.terms:
        r = sum(exps)
        s = sum(i * e for i, e in enumerate(exps))
        out[(r, s)] = out.get((r, s), 0) + c
    return LaurentPoly(out)


# ---------------------------------------------------------------------------
# finitely presented modules


@dataclass(frozen=True, eq=False)
class FPModule:
    """``coker(S^m -> S^n)``: ``n`` generators modulo ``relations``.

    Each relation is a vector of length ``n``.  ``degrees`` (optional) are
    generator degrees used for Hilbert functions; ``sections`` optionally
    records the geometric data a generator stands for.
    """

    cone: ConeRing
    ngens: int
    relations: tuple = ()
    labels: tuple | None = None
    degrees: tuple | None = None
    minimal: bool = False
    sections: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        rels = []
        for v in self.relations:
            if v.rank != self.ngens:
                raise ValueError(f"relation of length {v.rank} for {self.ngens} generators")
            v = self.cone.reduce_vector(v)
            if not v.is_zero():
                rels.append(v)
        object.__setattr__(self, "relations", tuple(rels))
        if self.labels is not None and len(self.labels) != self.ngens:
            raise ValueError("one label per generator")
        if self.degrees is not None and len(self.degrees) != self.ngens:
            raise ValueError("one degree per generator")

    @property
    def ring(self) -> PolynomialRing:
        return self.cone.ring

    def __repr__(self):
        return f"FPModule(k={self.cone.k}, gens={self.ngens}, relations={len(self.relations)})"

    @classmethod
    def free(cls, cone: ConeRing, n: int, degrees=None) -> FPModule:
        return cls(cone, n, (), degrees=tuple(degrees) if degrees is not None else None)

    @classmethod
    def quotient(cls, cone: ConeRing, polys: Sequence[Polynomial]) -> FPModule:
        """Cyclic module ``S / (polys)``."""
        return cls(cone, 1, tuple(FreeVector(cone.ring, [f]) for f in polys))

    @classmethod
    def ideal(cls, cone: ConeRing, polys: Sequence[Polynomial]) -> FPModule:
        """The ideal generated by ``polys``, presented by its syzygies over S."""
        vecs = [FreeVector(cone.ring, [f]) for f in polys]
        rels = syzygies(vecs, modulo=cone.ideal, ring=cone.ring, rank=1)
        return cls(cone, len(polys), tuple(rels))

    def relation_basis(self, order: str | ModuleOrder = "top") -> GroebnerBasis:
        """Gröbner basis of the relation submodule plus ``I * S^n``."""
        if isinstance(order, str) and order == "top":
            return self._top_basis
        return self._basis(order)

    @cached_property
    def _top_basis(self) -> GroebnerBasis:
        return self._basis("top")

    def _basis(self, order) -> GroebnerBasis:
        n = self.ngens
        mo = order if isinstance(order, ModuleOrder) else ModuleOrder(self.cone.nvars, order)
        ideal_part = []
        for pos in range(n):
            for f in self.cone.ideal.elements:
                ideal_part.append(FreeVector.unit(self.ring, n, pos, f.entries[0]))
        # the ideal part is a Gröbner basis on its own under any module order
        return groebner(list(self.relations), mo, ring=self.ring, rank=n, known=ideal_part)

    def contains_relation(self, v: FreeVector) -> bool:
        return self._top_basis.contains(v)

    def is_zero(self) -> bool:
        return self.ngens == 0 or all(
            self._top_basis.contains(FreeVector.unit(self.ring, self.ngens, i))
            for i in range(self.ngens))

    def hilbert_function(self, dmax: int, degrees=None) -> list[int]:
        """``[dim F_0, ..., dim F_dmax]`` for the degree filtration.

        ``F_d`` is spanned by ``m * e_i`` with ``deg(m) + deg(e_i) <= d``.
        Computed from standard monomials under a degree-compatible order.
        """
        degs = tuple(degrees if degrees is not None else (self.degrees or (0,) * self.ngens))
        if self.ngens == 0:
            return [0] * (dmax + 1)
        mo = ModuleOrder(self.cone.nvars, "top", degs)
        gb = self._basis(mo)
        leads = _leads_by_position(gb)
        counts = [0] * (dmax + 1)
        nv = self.cone.nvars
        for pos in range(self.ngens):
            lead = leads.get(pos, [])
            for deg in range(0, dmax - degs[pos] + 1):
                c = sum(1 for e in _monomials_of_degree(nv, deg)
                        if not any(_divides(m, e) for m in lead))
                counts[deg + degs[pos]] += c
        out = []
        acc = 0
        for c in counts:
            acc += c
            out.append(acc)
        return out


def _leads_by_position(gb: GroebnerBasis) -> dict:
    leads: dict = {}
    for pos, exps in gb.leading_terms():
        leads.setdefault(pos, []).append(exps)
    return leads


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


@lru_cache(maxsize=None)
def _monomials_of_degree(nvars: int, d: int) -> tuple:
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return tuple(out)


@dataclass(frozen=True, eq=False)
class ModuleMap:
    """S-linear map given by the images of the source generators."""

    source: FPModule
    target: FPModule
    images: tuple
    diagnostics: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if len(self.images) != self.source.ngens:
            raise ValueError("one image per source generator")
        for v in self.images:
            if v.rank != self.target.ngens:
                raise ValueError("image has the wrong length")

    def apply(self, v: FreeVector) -> FreeVector:
        out = FreeVector.zero(self.target.ring, self.target.ngens)
        for c, img in zip(v.entries, self.images):
            if c:
                out = out + img * c
        return out

    def is_well_defined(self) -> bool:
        """Every source relation must map into the target relations."""
        return all(self.target.contains_relation(self.apply(rel))
                   for rel in self.source.relations)

    def cokernel(self) -> FPModule:
        return FPModule(self.target.cone, self.target.ngens,
                        tuple(self.target.relations) + tuple(self.images))

    def kernel_generators(self) -> list[FreeVector]:
        """Generators of the kernel, as vectors in the source's free module.

        Elements that are themselves source relations are dropped, so an
        empty list means the map is injective.
        """
        if self.target.ngens == 0:
            units = [FreeVector.unit(self.source.ring, self.source.ngens, i)
                     for i in range(self.source.ngens)]
            return [c for c in units if not self.source.contains_relation(c)]
        basis = self.target.relation_basis()
        cand = syzygies(list(self.images), modulo=basis if len(basis) else None,
                        ring=self.source.ring, rank=self.target.ngens)
        return [c for c in cand if not self.source.contains_relation(c)]


# ---------------------------------------------------------------------------
# duals
#
# S is a domain, so a homomorphism to S that kills a set of relations kills
# everything in their span over the fraction field.  Duals are therefore
# computed against a maximal linearly independent subset of the relations
# (chosen by evaluating at points of the cone), and every resulting
# functional is checked against the full relation list.

_EVAL_POINTS = ((2, 3), (3, -5), (-5, 7), (7, 11))  # (z, u); x_i = z^i u


def _evaluate(f: Polynomial, point) -> object:
    field = f.ring.field
    mod = field.modulus
    total = 0
    for exps, c in f.terms:
        term = c
        for v, e in zip(point, exps):
            if e:
                term = term * v ** e
        total += term
    return total % mod if mod else total


def _cone_point(cone: ConeRing, z, u) -> tuple:
    f = cone.field
    return tuple(f(z ** i * u) for i in range(cone.k + 1))


def _evaluated_rank(vectors: Sequence[FreeVector], point, field) -> tuple[int, list[int]]:
    """Rank at ``point`` and the indices of a greedy independent subset."""
    if not vectors:
        return 0, []
    ech = SparseEchelon(list(range(vectors[0].rank)), field)
    picked = []
    for idx, v in enumerate(vectors):
        row = {i: _evaluate(e, point) for i, e in enumerate(v.entries) if e}
        if ech.add(row):
            picked.append(idx)
    return ech.rank, picked


def independent_subset(vectors: Sequence[FreeVector], cone: ConeRing) -> list[int]:
    """Indices of vectors that are independent over the fraction field and span it."""
    best: list[int] = []
    for z, u in _EVAL_POINTS:
        r, picked = _evaluated_rank(vectors, _cone_point(cone, z, u), cone.field)
        if r > len(best):
            best = picked
    return best


def _annihilates(phi: FreeVector, rel: FreeVector, cone: ConeRing) -> bool:
    total = cone.ring.zero
    for a, b in zip(phi.entries, rel.entries):
        if a and b:
            total = total + a * b
    return cone.reduce(total).is_zero()


def dual_generators(relations: Sequence[FreeVector], n: int, cone: ConeRing,
                    prune: bool = True) -> list[FreeVector]:
    """Generators of ``Hom(S^n / relations, S)`` as vectors in ``S^n``."""
    ring = cone.ring
    relations = [r for r in relations if not r.is_zero()]
    if not relations:
        return [FreeVector.unit(ring, n, i) for i in range(n)]
    subset = [relations[i] for i in independent_subset(relations, cone)]
    for attempt in (subset, relations):
        rows = [FreeVector(ring, [rel.entries[i] for rel in attempt]) for i in range(n)]
        K = syzygies(rows, modulo=cone.ideal, ring=ring, rank=len(attempt))
        if prune:
            K = _prune_generators(K, cone, n)
        if attempt is relations or all(_annihilates(phi, rel, cone)
                                       for phi in K for rel in relations):
            return K
    raise AssertionError("unreachable")


def hom_to_ring(M: FPModule) -> tuple[FPModule, list[FreeVector]]:
    """``Hom_S(M, S)`` and its pairing with the generators of ``M``.

    Returns ``(D, K)`` where ``K`` lists vectors ``phi_1..phi_q`` of length
    ``M.ngens``: ``phi_l`` is the homomorphism ``e_i -> phi_l[i]`` and the
    ``phi_l`` generate ``D``.
    """
    cone, ring, n = M.cone, M.ring, M.ngens
    if n == 0:
        return FPModule(cone, 0), []
    K = dual_generators(M.relations, n, cone)
    if not K:
        return FPModule(cone, 0), []
    rels = syzygies(K, modulo=cone.ideal, ring=ring, rank=n)
    return FPModule(cone, len(K), tuple(rels)), K


def _det(rows: list[list[Polynomial]], ring) -> Polynomial:
    n = len(rows)
    if n == 0:
        return ring.one
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = ring.zero
    for c in range(n):
        if rows[0][c]:
            minor = [r[:c] + r[c + 1:] for r in rows[1:]]
            term = rows[0][c] * _det(minor, ring)
            total = total + term if c % 2 == 0 else total - term
    return total


def cramer_relations(vectors: Sequence[FreeVector], cone: ConeRing) -> list[FreeVector]:
    """Relations among ``vectors`` spanning all relations over the fraction field.

    With ``B`` a maximal independent subset and ``T`` rows where the minor
    ``det(V[T, B])`` is nonzero, each remaining vector ``w`` satisfies
    ``det(V[T, B]) w = sum_b det(V[T, B with b replaced by w]) v_b``.
    """
    ring = cone.ring
    q = len(vectors)
    if q == 0:
        return []
    B = independent_subset(vectors, cone)
    if len(B) == q:
        return []
    n = vectors[0].rank
    coords = [FreeVector(ring, [vectors[b].entries[i] for b in B]) for i in range(n)]
    T = independent_subset(coords, cone)
    if len(T) != len(B):
        raise ArithmeticError("row and column ranks disagree")
    base = [[vectors[b].entries[t] for b in B] for t in T]
    D = _det(base, ring)
    out = []
    for c in range(q):
        if c in B:
            continue
        ents = [ring.zero] * q
        ents[c] = D
        for pos, b in enumerate(B):
            swapped = [row[:pos] + [vectors[c].entries[t]] + row[pos + 1:]
                       for row, t in zip(base, T)]
            ents[b] = -_det(swapped, ring)
        rel = cone.reduce_vector(FreeVector(ring, ents))
        total = FreeVector.zero(ring, n)
        for coeff, v in zip(rel.entries, vectors):
            if coeff:
                total = total + v * coeff
        if not cone.reduce_vector(total).is_zero():
            raise ArithmeticError("vectors span more than their generic rank")
        out.append(rel)
    return out


def _prune_generators(vecs: list[FreeVector], cone: ConeRing, rank: int) -> list[FreeVector]:
    """Drop generators lying in the span of the others (plus I), lowest degree kept first."""
    vecs = [cone.reduce_vector(v) for v in vecs]
    vecs = [v for v in vecs if not v.is_zero()]
    vecs.sort(key=lambda v: (v.degree(), str(v)))
    kept: list[FreeVector] = []
    ideal_part = [FreeVector.unit(cone.ring, rank, pos, f.entries[0])
                  for pos in range(rank) for f in cone.ideal.elements]
    basis = groebner([], "top", ring=cone.ring, rank=rank, known=ideal_part)
    for v in vecs:
        if basis.contains(v):
            continue
        kept.append(v)
        basis = groebner([v], "top", ring=cone.ring, rank=rank, known=basis)
    return kept


def double_dual_with_ev(M: FPModule, check_kernel: bool = True) -> tuple[FPModule, ModuleMap]:
    """``M^vv`` and the evaluation map ``ev : M -> M^vv``.

    ``ev(e_i)`` is the functional ``phi -> phi(e_i)`` on ``M^v``; in terms of
    the generators ``phi_1..phi_q`` of ``M^v`` it is the vector
    ``(phi_1[i], ..., phi_q[i])``, which is lifted to the generators of
    ``M^vv``.  If ``ev`` has a kernel the input had torsion; this is
    reported through ``ev.diagnostics`` and a warning.
    """
    cone, ring = M.cone, M.ring
    K = dual_generators(M.relations, M.ngens, cone) if M.ngens else []
    q = len(K)
    if q == 0:
        DD = FPModule(cone, 0)
        ev = ModuleMap(M, DD, tuple(FreeVector(ring, []) for _ in range(M.ngens)))
    else:
        # relations of M^v up to torsion are enough to compute its dual
        L = dual_generators(cramer_relations(K, cone), q, cone)
        aug = AugmentedBasis(L, modulo=cone.ideal, ring=ring, rank=q)
        DD = FPModule(cone, len(L), tuple(aug.syzygies()))
        images = []
        for i in range(M.ngens):
            w = FreeVector(ring, [phi.entries[i] for phi in K])
            coeffs = aug.lift(w)
            if coeffs is None:
                raise ArithmeticError("evaluation map does not land in the double dual")
            images.append(cone.reduce_vector(FreeVector(ring, coeffs)))
        ev = ModuleMap(M, DD, tuple(images))
    if check_kernel:
        ker = ev.kernel_generators()
        ev.diagnostics["kernel"] = ker
        ev.diagnostics["torsion_free"] = not ker
        if ker:
            warnings.warn(f"input not torsion-free: evaluation map has {len(ker)} kernel "
                          f"generator(s), e.g. {ker[0]}", RuntimeWarning, stacklevel=2)
    return DD, ev


# ---------------------------------------------------------------------------
# length


def finite_length(M: FPModule) -> int:
    """Dimension over the base field of a module supported at the cone point."""
    if M.ngens == 0:
        return 0
    gb = M.relation_basis()
    leads = _leads_by_position(gb)
    nv = M.cone.nvars
    total = 0
    for pos in range(M.ngens):
        lead = leads.get(pos, [])
        bounds = []
        for var in range(nv):
            powers = [m[var] for m in lead
                      if all(e == 0 for i, e in enumerate(m) if i != var) and m[var] > 0]
            if not powers:
                if any(not any(m) for m in lead):
                    bounds = None
                    break
                raise NotFiniteLength(
                    f"generator {pos} is not killed by a power of x{var}; "
                    "the module is not supported at the cone point")
            bounds.append(min(powers))
        if bounds is None:  # unit relation in this slot
            continue
        total += _count_standard(lead, bounds)
    return total


def _count_standard(lead: list, bounds: list) -> int:
    count = 0
    for e in itertools.product(*(range(b) for b in bounds)):
        if not any(_divides(m, e) for m in lead):
            count += 1
    return count
