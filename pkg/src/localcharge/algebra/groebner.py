"""Buchberger's algorithm for ideals and submodules of free modules.

Internally a module element is a dict mapping *encoded terms* to
coefficients.  An encoded term is an integer tuple whose natural tuple
ordering is the chosen module order, and multiplying by a monomial is
elementwise addition of a fixed delta tuple.  This keeps the inner loops
(leading-term search, term multiplication) on plain tuples.

Two module orders are provided:

``"pot"``
    position over term, with grevlex on monomials; position 0 is largest.
    Used for syzygies and elimination of components.
``"top"``
    weighted degree first (monomial degree plus a per-position shift), then
    grevlex, then position.  Degree compatible, used for Hilbert functions.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd, lcm as ilcm
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .polynomial import FreeVector, Polynomial, PolynomialRing


class ModuleOrder:
    def __init__(self, nvars: int, kind: str = "pot", shifts: Sequence[int] = (),
                 split: int = 0):
        if kind not in ("pot", "top", "block"):
            raise ValueError(f"unknown module order {kind!r}")
        self.nvars = nvars
        self.kind = kind
        self.shifts = tuple(shifts)
        self.split = split

    def __eq__(self, other):
        return (isinstance(other, ModuleOrder) and self.kind == other.kind
                and self.nvars == other.nvars and self.shifts == other.shifts
                and self.split == other.split)

    def __hash__(self):
        return hash((self.kind, self.nvars, self.shifts, self.split))

    def __repr__(self):
        if self.kind == "block":
            return f"block({self.split})"
        if self.kind == "top" and any(self.shifts):
            return f"top{self.shifts}"
        return self.kind

    def shift(self, pos: int) -> int:
        return self.shifts[pos] if pos < len(self.shifts) else 0

    def encode(self, pos: int, exps: Sequence[int]) -> tuple:
        neg = tuple(-e for e in reversed(exps))
        if self.kind == "pot":
            return (-pos, sum(exps)) + neg
        if self.kind == "block":
            return (int(pos < self.split), sum(exps) + self.shift(pos)) + neg + (-pos,)
        return (sum(exps) + self.shift(pos),) + neg + (-pos,)

    def decode(self, key: tuple) -> tuple[int, tuple]:
        if self.kind == "pot":
            return -key[0], tuple(-e for e in reversed(key[2:]))
        if self.kind == "block":
            return -key[-1], tuple(-e for e in reversed(key[2:-1]))
        return -key[-1], tuple(-e for e in reversed(key[1:-1]))

    def delta(self, exps: Sequence[int]) -> tuple:
        neg = tuple(-e for e in reversed(exps))
        if self.kind == "pot":
            return (0, sum(exps)) + neg
        if self.kind == "block":
            return (0, sum(exps)) + neg + (0,)
        return (sum(exps),) + neg + (0,)

    def agrees_below(self, other: ModuleOrder, rank: int) -> bool:
        """True if ``other`` orders terms in positions ``< rank`` exactly like ``self``."""
        if self == other:
            return True
        mine = self._first_block(rank)
        theirs = other._first_block(rank)
        return mine is not None and mine == theirs

    def _first_block(self, rank):
        if self.kind == "pot":
            return ("pot",)
        if self.kind == "top":
            return ("top", tuple(self.shift(i) for i in range(rank)))
        if self.kind == "block" and self.split >= rank:
            return ("top", tuple(self.shift(i) for i in range(rank)))
        return None


def _addt(a: tuple, b: tuple) -> tuple:
    return tuple([x + y for x, y in zip(a, b)])


# ---------------------------------------------------------------------------
# conversion between FreeVector and encoded dicts

def encode_vector(v: FreeVector, order: ModuleOrder) -> dict:
    out = {}
    for pos, poly in enumerate(v.entries):
        for exps, c in poly.terms:
            out[order.encode(pos, exps)] = c
    return out


def decode_vector(d: dict, order: ModuleOrder, ring: PolynomialRing, rank: int) -> FreeVector:
    buckets: list[dict] = [{} for _ in range(rank)]
    for key, c in d.items():
        pos, exps = order.decode(key)
        buckets[pos][exps] = c
    return FreeVector(ring, [Polynomial(ring, b) for b in buckets])


# ---------------------------------------------------------------------------
# core arithmetic on encoded dicts

def _make_monic(f: dict, mod):
    lt = max(f)
    c = f[lt]
    if c == 1:
        return f
    if mod:
        inv = pow(c, -1, mod)
        return {k: v * inv % mod for k, v in f.items()}
    inv = 1 / c
    return {k: v * inv for k, v in f.items()}


@dataclass
class _Elem:
    vec: dict
    lead: tuple
    pos: int
    exps: tuple


def _elem(vec: dict, order: ModuleOrder) -> _Elem:
    lead = max(vec)
    pos, exps = order.decode(lead)
    return _Elem(vec, lead, pos, exps)


def _divides(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


class _Reducer:
    """Index of monic basis elements by leading position (first-fit lookup)."""

    def __init__(self, order: ModuleOrder, mod):
        self.order = order
        self.mod = mod
        self.by_pos: dict[int, list[_Elem]] = {}

    def add(self, e: _Elem):
        self.by_pos.setdefault(e.pos, []).append(e)

    def find(self, pos: int, exps: tuple):
        for e in self.by_pos.get(pos, ()):
            if _divides(e.exps, exps):
                return e
        return None

    def reduce(self, f: dict, full: bool = True) -> dict:
        """Remainder of ``f``; with ``full=False`` stop once the lead is irreducible."""
        if not f:
            return {}
        order, mod = self.order, self.mod
        p = dict(f)
        heap = [tuple(-x for x in k) for k in p]
        heapq.heapify(heap)
        rem = {}
        while heap:
            nk = heapq.heappop(heap)
            key = tuple(-x for x in nk)
            c = p.get(key)
            if c is None:
                continue
            pos, exps = order.decode(key)
            g = self.find(pos, exps)
            if g is None:
                del p[key]
                rem[key] = c
                if not full:
                    rem.update(p)
                    return rem
                continue
            delta = order.delta(tuple(a - b for a, b in zip(exps, g.exps)))
            for gk, gc in g.vec.items():
                k2 = _addt(gk, delta)
                old = p.get(k2)
                if old is None:
                    v = -c * gc
                    if mod:
                        v %= mod
                    p[k2] = v
                    heapq.heappush(heap, tuple(-x for x in k2))
                else:
                    v = old - c * gc
                    if mod:
                        v %= mod
                    if v:
                        p[k2] = v
                    else:
                        del p[k2]
        return rem


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def _spoly(f: _Elem, g: _Elem, order: ModuleOrder, mod) -> dict:
    lcm = _lcm(f.exps, g.exps)
    df = order.delta(tuple(a - b for a, b in zip(lcm, f.exps)))
    dg = order.delta(tuple(a - b for a, b in zip(lcm, g.exps)))
    out = {}
    for k, c in f.vec.items():
        out[_addt(k, df)] = c
    for k, c in g.vec.items():
        k2 = _addt(k, dg)
        v = out.get(k2, 0) - c
        if mod:
            v %= mod
        if v:
            out[k2] = v
        else:
            out.pop(k2, None)
    return out


# ---------------------------------------------------------------------------
# fraction-free arithmetic over Q
#
# Over the rationals, Buchberger runs on primitive integer vectors (content
# removed, positive leading coefficient).  Reduction cross-multiplies instead
# of dividing, which avoids a gcd per coefficient operation; the result is a
# scalar multiple of the rational remainder, which is all the algorithm needs.


def _primitive(f: dict) -> dict:
    if not f:
        return f
    den = ilcm(*(Fraction(c).denominator for c in f.values()))
    ints = {k: int(Fraction(c) * den) for k, c in f.items()}
    g = gcd(*ints.values())
    if ints[max(ints)] < 0:
        g = -g
    if g != 1:
        ints = {k: v // g for k, v in ints.items()}
    return ints


def _to_monic_fractions(f: dict) -> dict:
    lc = f[max(f)]
    return {k: Fraction(v, lc) for k, v in f.items()}


class _IntReducer(_Reducer):
    """First-fit reducer on primitive integer vectors."""

    CONTENT_EVERY = 8

    def reduce(self, f: dict, full: bool = True) -> dict:
        if not f:
            return {}
        order = self.order
        p = dict(f)
        heap = [tuple(-x for x in k) for k in p]
        heapq.heapify(heap)
        rem: dict = {}
        steps = 0
        while heap:
            nk = heapq.heappop(heap)
            key = tuple(-x for x in nk)
            c = p.get(key)
            if c is None:
                continue
            pos, exps = order.decode(key)
            g = self.find(pos, exps)
            if g is None:
                del p[key]
                rem[key] = c
                if not full:
                    rem.update(p)
                    return _primitive(rem)
                continue
            lg = g.vec[g.lead]
            d = gcd(c, lg)
            a, b = lg // d, c // d
            if a != 1:
                for k in p:
                    p[k] *= a
                for k in rem:
                    rem[k] *= a
            delta = order.delta(tuple(x - y for x, y in zip(exps, g.exps)))
            for gk, gc in g.vec.items():
                k2 = _addt(gk, delta)
                old = p.get(k2)
                if old is None:
                    p[k2] = -b * gc
                    heapq.heappush(heap, tuple(-x for x in k2))
                else:
                    v = old - b * gc
                    if v:
                        p[k2] = v
                    else:
                        del p[k2]
            steps += 1
            if steps % self.CONTENT_EVERY == 0 and (p or rem):
                cont = gcd(*p.values(), *rem.values())
                if cont > 1:
                    for k in p:
                        p[k] //= cont
                    for k in rem:
                        rem[k] //= cont
        return _primitive(rem)


def _spoly_int(f: _Elem, g: _Elem, order: ModuleOrder) -> dict:
    lcm = _lcm(f.exps, g.exps)
    df = order.delta(tuple(a - b for a, b in zip(lcm, f.exps)))
    dg = order.delta(tuple(a - b for a, b in zip(lcm, g.exps)))
    lf, lg = f.vec[f.lead], g.vec[g.lead]
    d = gcd(lf, lg)
    mf, mg = lg // d, lf // d
    out = {}
    for k, c in f.vec.items():
        out[_addt(k, df)] = c * mf
    for k, c in g.vec.items():
        k2 = _addt(k, dg)
        v = out.get(k2, 0) - c * mg
        if v:
            out[k2] = v
        else:
            out.pop(k2, None)
    return out


def buchberger(gens: list[dict], order: ModuleOrder, mod=None, known: list[dict] = (),
               ideal: bool = False, stats: dict | None = None) -> list[dict]:
    """Reduced Gröbner basis of the span of ``known + gens``.

    ``known`` must already be a Gröbner basis of its own span; S-pairs among
    its elements are skipped.  ``ideal=True`` enables the coprime-leading-
    monomial criterion, valid only for rank one.
    """
    G: list[_Elem] = []
    exact = mod is None
    red = _IntReducer(order, mod) if exact else _Reducer(order, mod)
    pairs: list = []  # heap of (lcm_key, i, j)
    lcms: dict = {}

    def lcm_key(i, j):
        return order.encode(G[i].pos, _lcm(G[i].exps, G[j].exps))

    def coprime(i, j):
        return ideal and all(not (a and b) for a, b in zip(G[i].exps, G[j].exps))

    def update(h: int):
        nonlocal pairs
        hp, hx = G[h].pos, G[h].exps
        cands = [g for g in range(h) if G[g].pos == hp]
        lcm_h = {g: _lcm(G[g].exps, hx) for g in cands}
        kept = []
        rest = list(cands)
        while rest:
            g = rest.pop(0)
            L = lcm_h[g]
            if coprime(g, h):
                kept.append(g)
                continue
            dominated = any(_divides(lcm_h[g2], L) for g2 in rest) or \
                any(_divides(lcm_h[g2], L) for g2 in kept)
            if not dominated:
                kept.append(g)
        new = [g for g in kept if not coprime(g, h)]
        survivors = []
        for item in pairs:
            _, i, j = item
            if G[i].pos == hp:
                L = _lcm(G[i].exps, G[j].exps)
                if (_divides(hx, L) and _lcm(G[i].exps, hx) != L
                        and _lcm(G[j].exps, hx) != L):
                    continue
            survivors.append(item)
        for g in new:
            survivors.append((lcm_key(g, h), g, h))
        heapq.heapify(survivors)
        pairs = survivors

    def add(vec: dict, with_pairs: bool = True):
        vec = _primitive(vec) if exact else _make_monic(vec, mod)
        e = _elem(vec, order)
        G.append(e)
        red.add(e)
        if with_pairs:
            update(len(G) - 1)

    for k in known:
        if k:
            add(k, with_pairs=False)
    # pairs between known elements are skipped; pairs with new elements are not
    for g in gens:
        r = red.reduce(_primitive(g) if exact else g)
        if r:
            add(r)
    n_red = 0
    while pairs:
        _, i, j = heapq.heappop(pairs)
        s = _spoly_int(G[i], G[j], order) if exact else _spoly(G[i], G[j], order, mod)
        r = red.reduce(s)
        n_red += 1
        if r:
            add(r)
    if stats is not None:
        stats["pairs_reduced"] = n_red
        stats["elements"] = len(G)
    if exact:
        return [_to_monic_fractions(v) for v in _interreduce_int([e.vec for e in G], order)]
    return interreduce([e.vec for e in G], order, mod)


def interreduce(vecs: list[dict], order: ModuleOrder, mod=None) -> list[dict]:
    """Minimal, tail-reduced, monic basis; sorted by leading term ascending."""
    elems = sorted((_elem(_make_monic(v, mod), order) for v in vecs if v), key=lambda e: e.lead)
    minimal: list[_Elem] = []
    for e in elems:
        if any(m.pos == e.pos and _divides(m.exps, e.exps) for m in minimal):
            continue
        minimal.append(e)
    out = []
    for i, e in enumerate(minimal):
        red = _Reducer(order, mod)
        for j, o in enumerate(minimal):
            if j != i:
                red.add(o)
        lead_c = e.vec[e.lead]
        tail = {k: c for k, c in e.vec.items() if k != e.lead}
        r = red.reduce(tail)
        r[e.lead] = lead_c
        out.append(r)
    return out


def _interreduce_int(vecs: list[dict], order: ModuleOrder) -> list[dict]:
    elems = sorted((_elem(v, order) for v in vecs if v), key=lambda e: e.lead)
    minimal: list[_Elem] = []
    for e in elems:
        if any(m.pos == e.pos and _divides(m.exps, e.exps) for m in minimal):
            continue
        minimal.append(e)
    out = []
    for i, e in enumerate(minimal):
        red = _IntReducer(order, None)
        for j, o in enumerate(minimal):
            if j != i:
                red.add(o)
        # the lead is irreducible by the others, so it survives reduction
        out.append(red.reduce(e.vec))
    return out


def spairs_reduce_to_zero(vecs: list[dict], order: ModuleOrder, mod=None) -> bool:
    """Buchberger's criterion, checked exhaustively over all pairs."""
    elems = [_elem(_make_monic(v, mod), order) for v in vecs if v]
    red = _Reducer(order, mod)
    for e in elems:
        red.add(e)
    for a in range(len(elems)):
        for b in range(a + 1, len(elems)):
            if elems[a].pos != elems[b].pos:
                continue
            if red.reduce(_spoly(elems[a], elems[b], order, mod)):
                return False
    return True


# ---------------------------------------------------------------------------
# public, FreeVector-level interface

ORDER_TAGS = ("grevlex", "pot", "top")


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Gröbner basis of a submodule of ``ring^rank``."""

    ring: PolynomialRing
    rank: int
    order: ModuleOrder
    elements: tuple
    reduced: bool = True
    _encoded: tuple = dc_field(default=(), repr=False, compare=False)

    @property
    def order_tag(self) -> str:
        return "grevlex" if self.rank == 1 else self.order.kind

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def _reducer(self) -> _Reducer:
        red = _Reducer(self.order, self.ring.field.modulus)
        for d in self._encoded:
            red.add(_elem(d, self.order))
        return red

    def normal_form(self, f) -> FreeVector | Polynomial:
        scalar = isinstance(f, Polynomial)
        v = FreeVector(self.ring, [f]) if scalar else f
        if v.rank != self.rank:
            raise ValueError(f"rank mismatch: vector of rank {v.rank}, basis of rank {self.rank}")
        r = self._reducer().reduce(encode_vector(v, self.order))
        out = decode_vector(r, self.order, self.ring, self.rank)
        return out.entries[0] if scalar else out

    def contains(self, f) -> bool:
        nf = self.normal_form(f)
        return nf.is_zero()

    def leading_terms(self) -> list[tuple[int, tuple]]:
        return [self.order.decode(max(d)) for d in self._encoded]

    def spairs_reduce_to_zero(self) -> bool:
        return spairs_reduce_to_zero(list(self._encoded), self.order, self.ring.field.modulus)


def _as_vectors(gens, ring=None, rank=None):
    vecs = []
    for g in gens:
        if isinstance(g, Polynomial):
            g = FreeVector(g.ring, [g])
        vecs.append(g)
    if vecs:
        ring = vecs[0].ring
        rank = vecs[0].rank
        for v in vecs:
            if v.ring != ring or v.rank != rank:
                raise ValueError("generators must live in a common free module")
    return vecs, ring, rank


def make_order(order, nvars: int, rank: int) -> ModuleOrder:
    if isinstance(order, ModuleOrder):
        return order
    if order in ("grevlex", "pot"):
        return ModuleOrder(nvars, "pot")
    if order == "top":
        return ModuleOrder(nvars, "top")
    raise ValueError(f"unknown order {order!r}")


def groebner(gens, order="pot", ring: PolynomialRing | None = None, rank: int | None = None,
             known: GroebnerBasis | Sequence = ()) -> GroebnerBasis:
    """Reduced Gröbner basis of the submodule generated by ``gens``.

    ``gens`` may be polynomials (an ideal) or :class:`FreeVector` objects of a
    common rank.  ``ring``/``rank`` are needed only when ``gens`` is empty.
    """
    vecs, r0, k0 = _as_vectors(gens)
    kvecs = list(known.elements) if isinstance(known, GroebnerBasis) else list(known)
    kvecs, r1, k1 = _as_vectors(kvecs)
    ring = ring or r0 or r1
    rank = rank if rank is not None else (k0 if k0 is not None else k1)
    if ring is None or rank is None:
        raise ValueError("empty input needs explicit ring and rank")
    mo = make_order(order, ring.nvars, rank)
    mod = ring.field.modulus
    enc = [encode_vector(v, mo) for v in vecs]
    kenc = [encode_vector(v, mo) for v in kvecs]
    basis = buchberger([e for e in enc if e], mo, mod, known=[e for e in kenc if e],
                       ideal=(rank == 1))
    elements = tuple(decode_vector(d, mo, ring, rank) for d in basis)
    return GroebnerBasis(ring, rank, mo, elements, True, tuple(basis))


def normal_form(f, gb: GroebnerBasis):
    return gb.normal_form(f)


def _augmented(vecs, rank, n_extra_identity, ring):
    """Append identity columns: vector i -> (v_i, e_i)."""
    out = []
    for i, v in enumerate(vecs):
        tail = [ring.zero] * n_extra_identity
        tail[i] = ring.one
        out.append(FreeVector(ring, list(v.entries) + tail))
    return out


def _elimination_order(nvars: int, rank: int, vecs) -> ModuleOrder:
    """Block order for augmented computations: the original components dominate.

    Inside each block terms are compared by degree first; tag ``i`` is
    shifted by the degree of generator ``i`` so that syzygies are ordered by
    the degree of the combination they describe.
    """
    shifts = (0,) * rank + tuple(max(v.degree(), 0) for v in vecs)
    return ModuleOrder(nvars, "block", shifts, split=rank)


def _modulo_terms(modulo: GroebnerBasis | None, rank: int, mo: ModuleOrder):
    """Encode a modulus for an augmented computation as (known, extra) lists.

    A rank-one basis is an ideal and is adjoined in every component.  A basis
    of rank ``rank`` is a submodule; it is already a Gröbner basis in the
    augmented module when it was computed in the same position-over-term
    order, otherwise its elements are fed in as ordinary generators.
    """
    if modulo is None or not len(modulo):
        return [], []
    if modulo.rank == 1:
        known = []
        for pos in range(rank):
            for f in modulo.elements:
                known.append({mo.encode(pos, e): c for e, c in f.entries[0].terms})
        return known, []
    if modulo.rank != rank:
        raise ValueError(f"modulus of rank {modulo.rank} for vectors of rank {rank}")
    vecs = []
    for v in modulo.elements:
        d = {}
        for pos, poly in enumerate(v.entries):
            for e, c in poly.terms:
                d[mo.encode(pos, e)] = c
        vecs.append(d)
    if modulo.order.agrees_below(mo, rank):
        return vecs, []
    return [], vecs


class AugmentedBasis:
    """Gröbner basis of ``{(g_i, e_i)}`` (plus a modulus) in an elimination order.

    Elements whose leading term lies in the tag block describe syzygies of
    the ``g_i``; reducing ``(t, 0)`` expresses ``t`` through the ``g_i``.
    One basis serves both purposes.
    """

    def __init__(self, gens, modulo: GroebnerBasis | None = None, ring=None, rank=None):
        if isinstance(gens, GroebnerBasis):
            ring, rank = gens.ring, gens.rank
            gens = list(gens.elements)
        vecs, r0, k0 = _as_vectors(gens)
        self.ring = ring or r0
        self.rank = rank if rank is not None else k0
        self.gens = vecs
        self.modulo = modulo
        n = len(vecs)
        self.order = _elimination_order(self.ring.nvars, self.rank, vecs)
        self.mod = self.ring.field.modulus
        if n:
            aug = [encode_vector(v, self.order) for v in _augmented(vecs, self.rank, n, self.ring)]
            known, extra = _modulo_terms(modulo, self.rank, self.order)
            self.basis = buchberger(aug + extra, self.order, self.mod, known=known)
        else:
            self.basis = []
        self._reducer = None

    def _ideal_modulus(self):
        m = self.modulo
        return m if m is not None and m.rank == 1 and len(m) else None

    def syzygies(self) -> list[FreeVector]:
        mo, rank, n = self.order, self.rank, len(self.gens)
        out = []
        for d in self.basis:
            pos, _ = mo.decode(max(d))
            if pos >= rank:
                shifted = {}
                for key, c in d.items():
                    q, e = mo.decode(key)
                    shifted[mo.encode(q - rank, e)] = c
                out.append(decode_vector(shifted, mo, self.ring, n))
        ideal = self._ideal_modulus()
        if ideal is not None:
            out = [reduce_componentwise(v, ideal) for v in out]
            out = [v for v in out if not v.is_zero()]
        return out

    def lift(self, target: FreeVector):
        ring, rank, n, mo = self.ring, self.rank, len(self.gens), self.order
        if target.rank != rank:
            raise ValueError("target has the wrong rank")
        if self._reducer is None:
            self._reducer = _Reducer(mo, self.mod)
            for d in self.basis:
                self._reducer.add(_elem(d, mo))
        t = FreeVector(ring, list(target.entries) + [ring.zero] * n)
        r = self._reducer.reduce(encode_vector(t, mo))
        full = decode_vector(r, mo, ring, rank + n)
        if any(not e.is_zero() for e in full.entries[:rank]):
            return None
        coeffs = [-e for e in full.entries[rank:]]
        ideal = self._ideal_modulus()
        if ideal is not None:
            coeffs = [ideal.normal_form(c) for c in coeffs]
        return coeffs


def syzygies(gens, modulo: GroebnerBasis | None = None, ring=None, rank=None) -> list[FreeVector]:
    """Generators of ``{c : sum c_i g_i = 0}`` (modulo ``modulo`` componentwise).

    Accepts a :class:`GroebnerBasis` or any list of vectors.  ``modulo`` is
    either an ideal Gröbner basis, adjoined to every component so the result
    describes syzygies over the quotient ring, or a Gröbner basis of a
    submodule of the same rank, giving syzygies in the quotient module.
    For an ideal modulus the returned vectors are reduced modulo it and
    zero vectors are dropped.
    """
    if not isinstance(gens, GroebnerBasis) and not list(gens):
        return []
    return AugmentedBasis(gens, modulo, ring, rank).syzygies()


def reduce_componentwise(v: FreeVector, ideal: GroebnerBasis) -> FreeVector:
    if not len(ideal):
        return v
    return FreeVector(v.ring, [ideal.normal_form(e) for e in v.entries])


def lift(target: FreeVector, gens: Sequence[FreeVector], modulo: GroebnerBasis | None = None):
    """Coefficients ``c`` with ``sum c_i gens_i == target`` (mod ``modulo``), or None."""
    return AugmentedBasis(list(gens), modulo, target.ring, target.rank).lift(target)
