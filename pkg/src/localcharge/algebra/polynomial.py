"""Sparse multivariate polynomials and free-module vectors with exact coefficients.

Terms are kept sorted by graded reverse lexicographic order, largest first.
All objects are immutable; arithmetic returns new objects.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .field import QQ


def grevlex_key(exps: Sequence[int]) -> tuple:
    """Sort key realising grevlex: larger key means larger monomial."""
    return (sum(exps), tuple(-e for e in reversed(exps)))


class PolynomialRing:
    """``field[names...]`` with grevlex order on monomials."""

    def __init__(self, names: Sequence[str], field=QQ):
        self.names = tuple(names)
        self.nvars = len(self.names)
        self.field = field

    def __repr__(self):
        return f"{self.field!r}[{', '.join(self.names)}]"

    def __eq__(self, other):
        return (isinstance(other, PolynomialRing) and self.names == other.names
                and self.field == other.field)

    def __hash__(self):
        return hash((self.names, self.field))

    @property
    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    @property
    def one(self) -> Polynomial:
        return self.constant(1)

    def constant(self, c) -> Polynomial:
        return Polynomial(self, {(0,) * self.nvars: c})

    def monomial(self, exps, coeff=1) -> Polynomial:
        exps = tuple(exps)
        if len(exps) != self.nvars or min(exps, default=0) < 0:
            raise ValueError(f"bad exponent vector {exps} for {self}")
        return Polynomial(self, {exps: coeff})

    def gens(self) -> list[Polynomial]:
        out = []
        for i in range(self.nvars):
            e = [0] * self.nvars
            e[i] = 1
            out.append(self.monomial(e))
        return out

    def gen(self, name: str) -> Polynomial:
        return self.gens()[self.names.index(name)]

    def with_field(self, field) -> PolynomialRing:
        return PolynomialRing(self.names, field)


class Polynomial:
    """A polynomial in a :class:`PolynomialRing`.

    ``terms`` is a tuple of ``(exponents, coefficient)`` pairs in strictly
    decreasing grevlex order with no zero coefficients.
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolynomialRing, data: Mapping[tuple, object] | Iterable = ()):
        self.ring = ring
        field = ring.field
        items = data.items() if isinstance(data, Mapping) else data
        clean = {}
        for exps, c in items:
            c = field(c)
            if c:
                clean[tuple(exps)] = c
        self.terms = tuple(sorted(clean.items(), key=lambda t: grevlex_key(t[0]), reverse=True))
        self._hash = None

    # -- basic queries -------------------------------------------------
    def as_dict(self) -> dict:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def leading_monomial(self) -> tuple:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return self.terms[0][0]

    def leading_coefficient(self):
        return self.terms[0][1] if self.terms else self.ring.field.zero

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e, _ in self.terms), default=-1)

    def is_constant(self) -> bool:
        return all(not any(e) for e, _ in self.terms)

    def constant_term(self):
        for e, c in self.terms:
            if not any(e):
                return c
        return self.ring.field.zero

    def homogeneous_part(self, d: int) -> Polynomial:
        return Polynomial(self.ring, [(e, c) for e, c in self.terms if sum(e) == d])

    # -- arithmetic ----------------------------------------------------
    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = dict(self.terms)
        p = self.ring.field.modulus
        for e, c in other.terms:
            v = d.get(e, 0) + c
            d[e] = v % p if p else v
        return Polynomial(self.ring, d)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.modulus
        return Polynomial(self.ring, [(e, (-c) % p if p else -c) for e, c in self.terms])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.field.modulus
        d: dict = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                v = d.get(e, 0) + c1 * c2
                d[e] = v % p if p else v
        return Polynomial(self.ring, d)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> Polynomial:
        c = self.ring.field(c)
        p = self.ring.field.modulus
        return Polynomial(self.ring, [(e, (v * c) % p if p else v * c) for e, v in self.terms])

    def mul_monomial(self, exps, c=1) -> Polynomial:
        c = self.ring.field(c)
        p = self.ring.field.modulus
        return Polynomial(self.ring, [(tuple(a + b for a, b in zip(e, exps)),
                                       (v * c) % p if p else v * c) for e, v in self.terms])

    def __eq__(self, other):
        other = self._coerce(other) if not isinstance(other, Polynomial) else other
        if other is NotImplemented or not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.terms))
        return self._hash

    # -- evaluation / substitution -------------------------------------
    def substitute(self, images: Sequence, target_one):
        """Evaluate with variable i replaced by ``images[i]``.

        ``images`` may be any objects supporting ``+``, ``*`` and integer
        powers; ``target_one`` is the multiplicative unit of their ring.
        """
        total = target_one * 0
        cache: dict = {}
        for e, c in self.terms:
            term = target_one * c
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = images[i] ** k
                    term = term * cache[key]
            total = total + term
        return total

    def map_coefficients(self, ring: PolynomialRing) -> Polynomial:
        """Reinterpret the coefficients in ``ring`` (e.g. reduce mod p)."""
        return Polynomial(ring, [(e, ring.field(c)) for e, c in self.terms])

    # -- printing ------------------------------------------------------
    def __str__(self):
        return format_terms(self.terms, self.ring.names)

    def __repr__(self):
        return f"Polynomial({self})"


def _format_monomial(exps, names) -> str:
    parts = []
    for n, e in zip(names, exps):
        if e == 1:
            parts.append(n)
        elif e:
            parts.append(f"{n}^{e}")
    return "*".join(parts)


def format_terms(terms, names) -> str:
    if not terms:
        return "0"
    out = []
    for i, (e, c) in enumerate(terms):
        mono = _format_monomial(e, names)
        neg = c < 0 if isinstance(c, Fraction) else False
        a = -c if neg else c
        if mono and a == 1:
            body = mono
        elif mono:
            body = f"{a}*{mono}"
        else:
            body = str(a)
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


class FreeVector:
    """An element of the free module ``ring^rank``."""

    __slots__ = ("ring", "entries")

    def __init__(self, ring: PolynomialRing, entries: Sequence):
        self.ring = ring
        ents = []
        for x in entries:
            if isinstance(x, Polynomial):
                if x.ring != ring:
                    raise ValueError("entry from a different ring")
                ents.append(x)
            else:
                ents.append(ring.constant(x))
        self.entries = tuple(ents)

    @classmethod
    def zero(cls, ring, rank) -> FreeVector:
        return cls(ring, [ring.zero] * rank)

    @classmethod
    def unit(cls, ring, rank, i, coeff=None) -> FreeVector:
        ents = [ring.zero] * rank
        ents[i] = ring.one if coeff is None else coeff
        return cls(ring, ents)

    @property
    def rank(self) -> int:
        return len(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def __bool__(self):
        return not self.is_zero()

    def _check(self, other):
        if not isinstance(other, FreeVector):
            return NotImplemented
        if other.rank != self.rank:
            raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FreeVector(self.ring, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FreeVector(self.ring, [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self):
        return FreeVector(self.ring, [-a for a in self.entries])

    def __mul__(self, scalar):
        if isinstance(scalar, (int, Fraction)):
            scalar = self.ring.constant(scalar)
        if not isinstance(scalar, Polynomial):
            return NotImplemented
        return FreeVector(self.ring, [a * scalar for a in self.entries])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, FreeVector):
            return NotImplemented
        return self.ring == other.ring and self.entries == other.entries

    def __hash__(self):
        return hash((self.ring, self.entries))

    def degree(self) -> int:
        return max((e.degree() for e in self.entries), default=-1)

    def __str__(self):
        return "(" + ", ".join(str(e) for e in self.entries) + ")"

    def __repr__(self):
        return f"FreeVector{self}"
