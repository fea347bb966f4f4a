"""Laurent polynomials in the chart coordinates ``z`` and ``u`` of Z_k.

A term ``c * u^r * z^s`` is stored under the key ``(r, s)``.  Negative
exponents are allowed in both variables; transition functions need negative
powers of ``z`` and gauge transformations on the punctured surface need
negative powers of ``u``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Mapping


class LaurentPoly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None):
        clean = {}
        for (r, s), c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[(int(r), int(s))] = c
        self.terms = dict(sorted(clean.items()))

    @classmethod
    def monomial(cls, r: int, s: int, c=1) -> LaurentPoly:
        return cls({(r, s): c})

    @classmethod
    def z(cls, s: int = 1) -> LaurentPoly:
        return cls({(0, s): 1})

    @classmethod
    def u(cls, r: int = 1) -> LaurentPoly:
        return cls({(r, 0): 1})

    @classmethod
    def const(cls, c) -> LaurentPoly:
        return cls({(0, 0): c})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def coefficient(self, r: int, s: int) -> Fraction:
        return self.terms.get((r, s), Fraction(0))

    def support(self) -> list[tuple[int, int]]:
        return list(self.terms)

    def u_degrees(self) -> set[int]:
        return {r for r, _ in self.terms}

    def min_u_degree(self) -> int | None:
        return min((r for r, _ in self.terms), default=None)

    def max_u_degree(self) -> int | None:
        return max((r for r, _ in self.terms), default=None)

    def u_part(self, r: int) -> LaurentPoly:
        return LaurentPoly({k: c for k, c in self.terms.items() if k[0] == r})

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = dict(self.terms)
        for k, c in other.terms.items():
            d[k] = d.get(k, 0) + c
        return LaurentPoly(d)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d: dict = {}
        for (r1, s1), c1 in self.terms.items():
            for (r2, s2), c2 in other.terms.items():
                k = (r1 + r2, s1 + s2)
                d[k] = d.get(k, 0) + c1 * c2
        return LaurentPoly(d)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials can be inverted")
            (r, s), c = next(iter(self.terms.items()))
            return LaurentPoly({(-r * -n, -s * -n): Fraction(1) / c ** -n})
        out = LaurentPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def restrict_u0(self) -> LaurentPoly:
        """Restriction to the zero section ``u = 0`` (terms with ``r == 0``)."""
        if any(r < 0 for r, _ in self.terms):
            raise ValueError("restriction to u=0 needs no negative u-powers")
        return self.u_part(0)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __repr__(self):
        return f"LaurentPoly({canonical_string(self)!r})"

    def __str__(self):
        return pretty_string(self)


def _mono_text(r: int, s: int) -> str:
    parts = []
    if s == 1:
        parts.append("z")
    elif s:
        parts.append(f"z^{s}")
    if r == 1:
        parts.append("u")
    elif r:
        parts.append(f"u^{r}")
    return "*".join(parts)


def _coeff_text(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def canonical_string(p: LaurentPoly) -> str:
    """Diffable serialisation: terms by ``(r, s)`` ascending, explicit coefficients."""
    if not p.terms:
        return "0"
    out = []
    for i, ((r, s), c) in enumerate(p.terms.items()):
        mono = _mono_text(r, s)
        a = abs(c)
        body = _coeff_text(a) + ("*" + mono if mono else "")
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


def pretty_string(p: LaurentPoly) -> str:
    if not p.terms:
        return "0"
    out = []
    for i, ((r, s), c) in enumerate(p.terms.items()):
        mono = _mono_text(r, s)
        a = abs(c)
        if mono and a == 1:
            body = mono
        elif mono:
            body = _coeff_text(a) + "*" + mono
        else:
            body = _coeff_text(a)
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


class ParseError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>[zu])|(?P<op>[-+*/^]))")


def _tokens(text: str):
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at position {pos}: {text[pos:]!r}")
        pos = m.end()
        kind = m.lastgroup
        yield kind, m.group(kind)


def parse_laurent(text: str) -> LaurentPoly:
    """Parse ``p`` in the grammar ``poly := term (('+'|'-') term)*``.

    A term is an optional rational coefficient ``a`` or ``a/b`` followed by
    ``z^s`` and ``u^r`` factors (``*`` optional).  Exponents may be negative,
    written ``z^-1``.
    """
    toks = list(_tokens(text))
    if not toks:
        raise ParseError("empty polynomial")
    i = 0

    def peek():
        return toks[i] if i < len(toks) else (None, None)

    def take():
        nonlocal i
        t = toks[i]
        i += 1
        return t

    def exponent():
        sign = 1
        kind, val = peek()
        if kind == "op" and val == "-":
            take()
            sign = -1
            kind, val = peek()
        if kind != "num":
            raise ParseError("expected integer exponent")
        take()
        return sign * int(val)

    result: dict = {}
    first = True
    while i < len(toks):
        sign = 1
        kind, val = peek()
        if kind == "op" and val in "+-":
            take()
            sign = -1 if val == "-" else 1
        elif not first:
            raise ParseError(f"expected '+' or '-' before term, got {val!r}")
        first = False
        coeff = Fraction(1)
        kind, val = peek()
        saw_coeff = False
        if kind == "num":
            take()
            num = int(val)
            kind, val = peek()
            if kind == "op" and val == "/":
                take()
                kind, val = peek()
                if kind != "num":
                    raise ParseError("expected denominator")
                take()
                if int(val) == 0:
                    raise ParseError("zero denominator")
                coeff = Fraction(num, int(val))
            else:
                coeff = Fraction(num)
            saw_coeff = True
        r = s = 0
        seen = set()
        while True:
            kind, val = peek()
            if kind == "op" and val == "*":
                take()
                kind, val = peek()
                if kind != "var":
                    raise ParseError("expected 'z' or 'u' after '*'")
            if kind != "var":
                break
            take()
            if val in seen:
                raise ParseError(f"variable {val!r} repeated in one term")
            seen.add(val)
            e = 1
            k2, v2 = peek()
            if k2 == "op" and v2 == "^":
                take()
                e = exponent()
            if val == "z":
                s = e
            else:
                r = e
        if not saw_coeff and not seen:
            raise ParseError("empty term")
        key = (r, s)
        result[key] = result.get(key, 0) + sign * coeff
    return LaurentPoly(result)
