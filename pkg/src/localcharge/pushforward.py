"""The direct image ``M = H^0(Z_k, E)`` as a finitely presented module over S.

Sections ``(a, b)`` of ``E`` on the chart ``U`` are written with unknown
coefficients; holomorphy of ``z^j a + p b`` on the second chart gives linear
constraints.  Solving them degree by degree yields a filtration-adapted
basis of sections, from which module generators are picked greedily.
Relations are computed exactly: each section is an element of the
S-module ``N + N`` with ``N = span{u^r z^s : 0 <= s <= k r + j}``, which has a
known finite presentation, and the relations of ``M`` are the syzygies of
the generators modulo that presentation.

The filtration degree (weight) of ``a_{rs}`` is ``r`` and of ``b_{rs}`` is
``r + m0`` with ``m0`` the smallest u-exponent of ``p``; multiplication by
any ``x_i`` raises weights by one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .algebra.field import QQ
from .algebra.groebner import GroebnerBasis, groebner, syzygies
from .algebra.linalg import SparseEchelon
from .algebra.polynomial import FreeVector, Polynomial
from .bundles import CanonicalBundle
from .cone import ConeRing, FPModule, cone_ring
from .laurent import LaurentPoly


class StabilizationError(RuntimeError):
    def __init__(self, message, history=None):
        super().__init__(message)
        self.history = history or []


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def weight_offset(b: CanonicalBundle) -> int:
    m = b.p.min_u_degree()
    return 0 if m is None else m


@dataclass(frozen=True)
class GenericSection:
    """Coefficient symbols ``("a", r, s)`` and ``("b", r, s)`` up to weight ``R``."""

    k: int
    j: int
    R: int
    m0: int = 0

    def weight(self, sym) -> int:
        kind, r, _ = sym
        return r if kind == "a" else r + self.m0

    @property
    def a_symbols(self) -> list:
        return [("a", r, s) for r in range(self.R + 1) for s in range(self.k * r + self.j + 1)]

    @property
    def b_symbols(self) -> list:
        return [("b", r, s) for r in range(self.R - self.m0 + 1)
                for s in range(self.k * r + self.j + 1)]

    def columns(self) -> list:
        syms = self.a_symbols + self.b_symbols
        return sorted(syms, key=lambda t: (self.weight(t), t[0], t[1], t[2]))

    def __contains__(self, sym) -> bool:
        kind, r, s = sym
        if r < 0 or s < 0 or s > self.k * r + self.j:
            return False
        return self.weight(sym) <= self.R


@dataclass(frozen=True)
class ConstraintSystem:
    """Linear forms in the symbols, one per monomial ``u^r z^s`` of f with ``s > k r``."""

    rows: dict  # (r, s) -> {symbol: coefficient}

    def __len__(self):
        return len(self.rows)


def _f_terms(b: CanonicalBundle, sym, field=QQ):
    """Monomials of ``f = z^j a + p b`` touched by one symbol, with coefficients."""
    kind, r, s = sym
    if kind == "a":
        return [((r, s + b.j), field.one)]
    return [((r + rp, s + sp), field(c)) for (rp, sp), c in b.p.terms.items()]


def second_chart_constraints(b: CanonicalBundle, g: GenericSection, field=QQ) -> ConstraintSystem:
    k = b.k
    mod = field.modulus
    rows: dict = {}
    for sym in g.a_symbols + g.b_symbols:
        for (r, s), c in _f_terms(b, sym, field):
            if s > k * r:
                row = rows.setdefault((r, s), {})
                v = row.get(sym, 0) + c
                row[sym] = v % mod if mod else v
    rows = {key: {s: c for s, c in row.items() if c} for key, row in rows.items()}
    return ConstraintSystem({key: row for key, row in sorted(rows.items()) if row})


def section_f(b: CanonicalBundle, section: dict, field=QQ) -> dict:
    """Coefficients of ``z^j a + p b`` for a section given as ``{symbol: coeff}``."""
    mod = field.modulus
    out: dict = {}
    for sym, c in section.items():
        for key, v in _f_terms(b, sym, field):
            w = out.get(key, 0) + c * v
            out[key] = w % mod if mod else w
    return {key: v for key, v in out.items() if v}


def is_global_section(b: CanonicalBundle, section: dict, field=QQ) -> bool:
    k = b.k
    for kind, r, s in section:
        if s < 0 or (kind == "b" and s > k * r + b.j):
            return False
    return all(s <= k * r for (r, s) in section_f(b, section, field))


def section_pair(section: dict) -> tuple[LaurentPoly, LaurentPoly]:
    a = {(r, s): c for (kind, r, s), c in section.items() if kind == "a"}
    bb = {(r, s): c for (kind, r, s), c in section.items() if kind == "b"}
    return LaurentPoly(a), LaurentPoly(bb)


def _section_text(section: dict) -> str:
    a, bb = section_pair(section)
    return f"({a}, {bb})"


def _shift(section: dict, d: int, t: int) -> dict:
    return {(kind, r + d, s + t): c for (kind, r, s), c in section.items()}


# ---------------------------------------------------------------------------
# the ambient module N + N


@lru_cache(maxsize=None)
def ambient_relations(k: int, j: int, field=QQ) -> GroebnerBasis:
    """Gröbner basis (degree first) of the presentation of ``N + N``.

    ``N`` is generated by ``e_c = z^c`` for ``0 <= c <= j`` subject to
    ``x_{i+1} e_c = x_i e_{c+1}``; the a-part uses positions ``0..j`` and
    the b-part positions ``j+1..2j+1``.  The cone ideal is adjoined.
    """
    S = cone_ring(k, field)
    ring = S.ring
    xs = ring.gens()
    rank = 2 * (j + 1)
    gens = []
    for part in (0, j + 1):
        for c in range(j):
            for i in range(k):
                ents = [ring.zero] * rank
                ents[part + c] = xs[i + 1]
                ents[part + c + 1] = -xs[i]
                gens.append(FreeVector(ring, ents))
    known = [FreeVector.unit(ring, rank, pos, f.entries[0])
             for pos in range(rank) for f in S.ideal.elements]
    return groebner(gens, "top", ring=ring, rank=rank, known=known)


def ambient_vector(S: ConeRing, j: int, section: dict) -> FreeVector:
    """The element of ``N + N`` represented by a section."""
    ring = S.ring
    rank = 2 * (j + 1)
    buckets: list[dict] = [{} for _ in range(rank)]
    for (kind, r, s), c in section.items():
        part = 0 if kind == "a" else j + 1
        if s <= j:
            pos, exps = part + s, (r,) + (0,) * S.k
        else:
            pos, exps = part + j, S.monomial_for(r, s - j)
        buckets[pos][exps] = buckets[pos].get(exps, 0) + c
    return FreeVector(ring, [Polynomial(ring, b) for b in buckets])


# ---------------------------------------------------------------------------
# presentations


@dataclass
class _Build:
    R: int
    basis: list          # filtration-adapted basis sections (dicts)
    generators: list     # chosen generator sections
    degrees: list


def _sections_and_generators(b: CanonicalBundle, R: int, field=QQ) -> _Build:
    g = GenericSection(b.k, b.j, R, weight_offset(b))
    cols = g.columns()
    cons = second_chart_constraints(b, g, field)
    ech = SparseEchelon(cols, field)
    for row in cons.rows.values():
        ech.add(row)
    basis = ech.nullspace()
    top = lambda v: max(g.weight(s) for s in v)
    basis.sort(key=lambda v: (top(v), ech.rank_of[max(v, key=ech.rank_of.__getitem__)]))

    span = SparseEchelon(cols, field)
    gens: list = []
    degs: list = []
    level = -1
    k = b.k
    for v in basis:
        t = top(v)
        while level < t:
            level += 1
            for gs, gd in zip(gens, degs):
                d = level - gd
                if d <= 0:
                    continue
                for tz in range(k * d + 1):
                    span.add(_shift(gs, d, tz))
        if span.contains(v):
            continue
        gens.append(v)
        degs.append(t)
        span.add(v)
    return _Build(R, basis, gens, degs)


def _presentation_from_generators(b: CanonicalBundle, gens: list, degs: list,
                                  field=QQ, labels=None) -> FPModule:
    S = cone_ring(b.k, field)
    if not gens:
        return FPModule(S, 0)
    vecs = [ambient_vector(S, b.j, v) for v in gens]
    amb = ambient_relations(b.k, b.j, field)
    rels = syzygies(vecs, modulo=amb, ring=S.ring, rank=amb.rank)
    labels = tuple(labels) if labels else tuple(_section_text(v) for v in gens)
    return FPModule(S, len(gens), tuple(rels), labels=labels, degrees=tuple(degs),
                    sections=tuple(gens))


def build_presentation(b: CanonicalBundle, R_max: int, field=QQ) -> FPModule:
    """Presentation of the module of sections, using sections of weight ``<= R_max``."""
    if R_max < 1:
        raise ValueError(f"R_max must be >= 1, got {R_max}")
    built = _cached_build(b, R_max, field)
    return _cached_presentation(b, _key(built.generators), field, built)


def _key(gens) -> tuple:
    return tuple(tuple(sorted(v.items())) for v in gens)


_BUILD_CACHE: dict = {}
_PRES_CACHE: dict = {}


def clear_caches() -> None:
    _BUILD_CACHE.clear()
    _PRES_CACHE.clear()
    ambient_relations.cache_clear()


def _cached_build(b, R, field) -> _Build:
    key = (b.k, b.j, b.p, R, field)
    if key not in _BUILD_CACHE:
        _BUILD_CACHE[key] = _sections_and_generators(b, R, field)
    return _BUILD_CACHE[key]


def _cached_presentation(b, gkey, field, built) -> FPModule:
    key = (b.k, b.j, b.p, gkey, field)
    if key not in _PRES_CACHE:
        _PRES_CACHE[key] = _presentation_from_generators(b, built.generators, built.degrees, field)
    return _PRES_CACHE[key]


def initial_bound(b: CanonicalBundle) -> int:
    deg = b.p.max_u_degree() or 0
    return _ceil_div(2 * b.j, b.k) + deg + 1


@dataclass
class Stabilized:
    module: FPModule
    R_used: int
    stabilized: bool
    history: list = field(default_factory=list)


def stabilized_presentation(b: CanonicalBundle, cap: int = 4, field=QQ,
                            R_start: int | None = None) -> Stabilized:
    """Raise the truncation until two consecutive bounds give the same generators.

    Generators at bound ``R`` are always a prefix of those at ``R + 1``, so
    equal generator lists mean identical presentations (hence identical
    Hilbert functions and widths).
    """
    R = initial_bound(b) if R_start is None else R_start
    history = []
    for _ in range(cap + 1):
        cur = _cached_build(b, R, field)
        nxt = _cached_build(b, R + 1, field)
        history.append((R, len(cur.generators), len(nxt.generators)))
        if _key(cur.generators) == _key(nxt.generators):
            M = _cached_presentation(b, _key(cur.generators), field, cur)
            return Stabilized(M, R, True, history)
        R += 1
    raise StabilizationError(
        f"generators of E(k={b.k}, j={b.j}, p={b.p}) did not stabilise within {cap} "
        f"increments: {history}", history)


def presentation_at(b: CanonicalBundle, R: int, field=QQ) -> Stabilized:
    """Presentation at a fixed bound, with the stabilisation check at ``R + 1`` recorded."""
    cur = _cached_build(b, R, field)
    nxt = _cached_build(b, R + 1, field)
    M = build_presentation(b, R, field)
    return Stabilized(M, R, _key(cur.generators) == _key(nxt.generators),
                      [(R, len(cur.generators), len(nxt.generators))])


def section_space_dims(b: CanonicalBundle, R: int, field=QQ) -> list[int]:
    """``dim`` of sections of weight ``<= d`` for ``d = 0..R``."""
    built = _cached_build(b, R, field)
    g = GenericSection(b.k, b.j, R, weight_offset(b))
    tops = [max(g.weight(s) for s in v) for v in built.basis]
    return [sum(1 for t in tops if t <= d) for d in range(R + 1)]


# ---------------------------------------------------------------------------
# minimisation


def minimize_presentation(M: FPModule) -> FPModule:
    """Drop generators that a relation expresses through the others, then redundant relations.

    A generator is eliminated when some relation has a nonzero constant
    coefficient at it.  Remaining relations are kept only if they are not
    implied by the ones kept before them (lowest degree first).
    """
    S, ring = M.cone, M.ring
    n = M.ngens
    rels = [list(r.entries) for r in M.relations]
    alive = list(range(n))
    changed = True
    while changed:
        changed = False
        for ri, rel in enumerate(rels):
            piv = next((i for i in alive if rel[i] and rel[i].is_constant()), None)
            if piv is None:
                continue
            c = rel[piv].constant_term()
            inv = ring.field.inv(c)
            # e_piv = -(1/c) * sum_{i != piv} rel[i] e_i
            new_rels = []
            for rj, other in enumerate(rels):
                if rj == ri:
                    continue
                f = other[piv]
                if f:
                    other = [o - rel[i] * f.scale(inv) if i != piv else ring.zero
                             for i, o in enumerate(other)]
                new_rels.append(other)
            rels = new_rels
            alive.remove(piv)
            changed = True
            break
    idx = alive
    vecs = [S.reduce_vector(FreeVector(ring, [r[i] for i in idx])) for r in rels]
    vecs = [v for v in vecs if not v.is_zero()]
    vecs.sort(key=lambda v: (v.degree(), str(v)))
    m = len(idx)
    known = [FreeVector.unit(ring, m, pos, f.entries[0])
             for pos in range(m) for f in S.ideal.elements]
    basis = groebner([], "top", ring=ring, rank=m, known=known)
    kept = []
    seen = set()
    for v in vecs:
        if v in seen or basis.contains(v):
            continue
        seen.add(v)
        kept.append(v)
        basis = groebner([v], "top", ring=ring, rank=m, known=basis)
    pick = lambda seq: tuple(seq[i] for i in idx) if seq is not None else None
    return FPModule(S, m, tuple(kept), labels=pick(M.labels), degrees=pick(M.degrees),
                    minimal=True, sections=pick(M.sections))
