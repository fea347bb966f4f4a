"""Rank-two bundles with trivial determinant on Z_k in canonical form.

Z_k is covered by ``U = {(z, u)}`` and ``V = {(xi, v)}`` with ``xi = 1/z`` and
``v = z^k u``.  A bundle is recorded by ``(k, j, p)``: its transition matrix
is ``[[z^j, p], [0, z^-j]]``, so a section ``(a, b)`` on ``U`` becomes
``(z^j a + p b, z^-j b)`` on ``V``.  A function on ``U`` is holomorphic on
``V`` when each monomial ``u^r z^s`` has ``s <= k r``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

from .algebra.linalg import SparseEchelon
from .laurent import LaurentPoly, canonical_string, parse_laurent


class ExtensionClassError(ValueError):
    """A monomial of ``p`` lies outside the admissible support."""

    def __init__(self, k, j, bad):
        self.k, self.j, self.bad = k, j, list(bad)
        slots = ", ".join(f"(r={r}, s={s})" for r, s in self.bad)
        super().__init__(f"monomial(s) {slots} outside the extension-class support for "
                         f"k={k}, j={j}")


def slot_admissible(k: int, j: int, r: int, s: int) -> bool:
    return 1 <= r <= (2 * j - 2) // k and k * r - j + 1 <= s <= j - 1


def ext_slots(k: int, j: int) -> list[tuple[int, int]]:
    """The admissible ``(r, s)`` coefficient slots, sorted."""
    if k < 1 or j < 0:
        raise ValueError("need k >= 1 and j >= 0")
    return [(r, s) for r in range(1, (2 * j - 2) // k + 1)
            for s in range(k * r - j + 1, j)]


def ext_param_count(k: int, j: int) -> int:
    if k < 1 or j < 0:
        raise ValueError("need k >= 1 and j >= 0")
    return sum(2 * j - 1 - k * r for r in range(1, (2 * j - 2) // k + 1))


@dataclass(frozen=True)
class CanonicalBundle:
    k: int
    j: int
    p: LaurentPoly

    @property
    def is_split(self) -> bool:
        return self.p.is_zero()

    @property
    def splitting_class(self) -> SplittingClass:
        return SplittingClass(self.k, self.j % self.k)

    def p_string(self) -> str:
        return canonical_string(self.p)

    def __str__(self):
        return f"E(k={self.k}, j={self.j}, p={self.p})"


def validate_extension_class(k: int, j: int, p: LaurentPoly | str | int = 0) -> CanonicalBundle:
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be an integer >= 1, got {k!r}")
    if not isinstance(j, int) or j < 0:
        raise ValueError(f"j must be an integer >= 0, got {j!r}")
    if isinstance(p, str):
        p = parse_laurent(p)
    elif not isinstance(p, LaurentPoly):
        p = LaurentPoly.const(p)
    bad = [(r, s) for (r, s) in p.terms if not slot_admissible(k, j, r, s)]
    if bad:
        raise ExtensionClassError(k, j, bad)
    return CanonicalBundle(k, j, p)


def bundle(k: int, j: int, p: LaurentPoly | str | int = 0) -> CanonicalBundle:
    return validate_extension_class(k, j, p)


@dataclass(frozen=True)
class SplittingClass:
    k: int
    residue: int

    def __post_init__(self):
        if not 0 <= self.residue < self.k:
            raise ValueError("residue must lie in 0..k-1")


# ---------------------------------------------------------------------------
# transition matrices


@dataclass(frozen=True)
class TransitionMatrix:
    """A 2x2 matrix of Laurent polynomials in ``z`` (polynomial in ``u``)."""

    a: LaurentPoly
    b: LaurentPoly
    c: LaurentPoly
    d: LaurentPoly

    @classmethod
    def of(cls, rows) -> TransitionMatrix:
        (a, b), (c, d) = rows
        conv = lambda x: x if isinstance(x, LaurentPoly) else LaurentPoly.const(x)
        return cls(conv(a), conv(b), conv(c), conv(d))

    def rows(self):
        return ((self.a, self.b), (self.c, self.d))

    def det(self) -> LaurentPoly:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: TransitionMatrix) -> TransitionMatrix:
        return TransitionMatrix(self.a * other.a + self.b * other.c,
                                self.a * other.b + self.b * other.d,
                                self.c * other.a + self.d * other.c,
                                self.c * other.b + self.d * other.d)

    def apply(self, x: LaurentPoly, y: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
        return self.a * x + self.b * y, self.c * x + self.d * y

    def restrict_u0(self) -> TransitionMatrix:
        return TransitionMatrix(*(e.restrict_u0() for e in (self.a, self.b, self.c, self.d)))

    def adjugate(self) -> TransitionMatrix:
        return TransitionMatrix(self.d, -self.b, -self.c, self.a)

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __str__(self):
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


def transition_matrix(b: CanonicalBundle) -> TransitionMatrix:
    return TransitionMatrix(LaurentPoly.z(b.j), b.p, LaurentPoly(), LaurentPoly.z(-b.j))


def diag(x, y) -> TransitionMatrix:
    return TransitionMatrix.of(((x, 0), (0, y)))


def splitting_type(T: TransitionMatrix) -> int:
    """The ``j >= 0`` with ``E|_l = O(j) + O(-j)`` for a matrix on ``u = 0``.

    ``T`` may still carry ``u``; it is restricted first.  For each candidate
    ``d`` (downwards from the spread of z-exponents) we look for a nonzero
    polynomial section ``(a, b)`` of ``C[z]^2`` with ``z^d T (a, b)`` in
    ``C[1/z]^2``; the largest such ``d`` is the splitting type.
    """
    T = T.restrict_u0()
    if T.det() != LaurentPoly.const(1):
        raise ValueError(f"restriction is not unimodular: det = {T.det()}")
    exps = [s for e in T.entries() for (_, s) in e.terms]
    spread = max(exps) - min(exps) if exps else 0
    adj_top = max((s for e in T.adjugate().entries() for (_, s) in e.terms), default=0)
    for d in range(spread, -1, -1):
        if _twisted_sections_exist(T, d, adj_top):
            return d
    raise ArithmeticError("no twisted sections at d = 0; matrix is not a transition function")


def _twisted_sections_exist(T: TransitionMatrix, d: int, adj_top: int) -> bool:
    # any solution has deg a, deg b <= adj_top - d (apply the adjugate)
    n = adj_top - d
    if n < 0:
        return False
    cols = [("a", i) for i in range(n + 1)] + [("b", i) for i in range(n + 1)]
    rows: dict = {}
    for row_idx, (ea, eb) in enumerate(T.rows()):
        for var, entry in (("a", ea), ("b", eb)):
            for (_, s), c in entry.terms.items():
                for i in range(n + 1):
                    e = s + i + d
                    if e > 0:
                        rows.setdefault((row_idx, e), {})[(var, i)] = c
    ech = SparseEchelon(cols)
    for r in rows.values():
        ech.add(r)
    return ech.rank < len(cols)


def restricted_splitting_type(b: CanonicalBundle) -> int:
    return splitting_type(transition_matrix(b))


# ---------------------------------------------------------------------------
# elementary transformation


def elementary_transform(b: CanonicalBundle) -> CanonicalBundle:
    """The bundle agreeing with ``b`` off the zero section with splitting type ``j + k``.

    Conjugating by ``diag(v, 1/v)`` on ``V`` and ``diag(1/u, u)`` on ``U``
    (both invertible away from ``u = 0``) turns ``[[z^j, p], [0, z^-j]]``
    into ``[[z^(j+k), z^k u^2 p], [0, z^-(j+k)]]``.  The new extension class
    is again in canonical support.
    """
    k = b.k
    newp = LaurentPoly.monomial(2, k) * b.p
    return validate_extension_class(k, b.j + k, newp)


def elementary_transform_gauge(b: CanonicalBundle):
    """``(left, right)`` with ``left @ T(b) @ right == T(elementary_transform(b))``.

    ``left = diag(z^k u, 1/(z^k u))`` and ``right = diag(1/u, u)``; both are
    holomorphic and invertible on the complement of the zero section.
    """
    k = b.k
    v = LaurentPoly.monomial(1, k)
    u = LaurentPoly.u(1)
    return diag(v, v ** -1), diag(u ** -1, u)


def iso_on_punctured(b1: CanonicalBundle, b2: CanonicalBundle) -> bool:
    if b1.k != b2.k:
        raise ValueError(f"bundles live on different surfaces (k={b1.k} vs k={b2.k})")
    return (b1.j - b2.j) % b1.k == 0


def is_instanton(b: CanonicalBundle) -> bool:
    return b.j % b.k == 0


def moduli_dim(k: int, j: int) -> int:
    """Dimension ``2j - k - 2`` of the generic stratum of bundles with splitting type j.

    Rejected for ``j < k``, where every bundle is split and rigid.  Negative
    values are returned as computed with an "empty stratum" warning.
    """
    if k < 1 or j < 0:
        raise ValueError("need k >= 1 and j >= 0")
    if j < k:
        raise ValueError(f"split and rigid: for j={j} < k={k} every bundle is O(j)+O(-j)")
    value = 2 * j - k - 2
    if value < 0:
        warnings.warn(f"empty stratum: dimension formula gives {value} for k={k}, j={j}",
                      RuntimeWarning, stacklevel=2)
    return value


def random_extension_class(k: int, j: int, rng, slots=None) -> LaurentPoly:
    """Random coefficients ``n/d`` (``n`` in -9..9 without 0, ``d`` in 1..4) on ``slots``."""
    slots = ext_slots(k, j) if slots is None else slots
    terms = {}
    for r, s in slots:
        n = rng.choice([i for i in range(-9, 10) if i])
        d = rng.randint(1, 4)
        terms[(r, s)] = Fraction(n, d)
    return LaurentPoly(terms)
