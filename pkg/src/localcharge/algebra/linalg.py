"""Sparse exact Gaussian elimination over QQ or GF(p).

Rows are dicts ``{column: coefficient}``.  Columns are arbitrary hashable
labels; the elimination order is given explicitly so callers control which
variables become pivots.
"""

from __future__ import annotations

from typing import Hashable, Iterable, Sequence

from .field import QQ


class SparseEchelon:
    """Incrementally maintained reduced echelon form.

    ``order`` ranks the columns: pivots are chosen at the smallest-ranked
    nonzero column of each row.
    """

    def __init__(self, order: Sequence[Hashable], field=QQ):
        self.field = field
        self.rank_of = {c: i for i, c in enumerate(order)}
        self.order = list(order)
        self.pivots: dict = {}  # pivot column -> row (monic at pivot)

    def _lead(self, row: dict):
        return min(row, key=self.rank_of.__getitem__)

    def reduce(self, row: dict) -> dict:
        """Remainder of ``row`` against the current pivots (row is not modified)."""
        mod = self.field.modulus
        row = dict(row)
        while row:
            hit = None
            for c in sorted(row, key=self.rank_of.__getitem__):
                if c in self.pivots:
                    hit = c
                    break
            if hit is None:
                return row
            f = row[hit]
            for c, v in self.pivots[hit].items():
                w = row.get(c, 0) - f * v
                if mod:
                    w %= mod
                if w:
                    row[c] = w
                else:
                    row.pop(c, None)
        return row

    def add(self, row: dict) -> bool:
        """Insert ``row``; return False if it was already in the span."""
        r = self.reduce({c: v for c, v in row.items() if v})
        if not r:
            return False
        mod = self.field.modulus
        lead = self._lead(r)
        inv = self.field.inv(r[lead])
        r = {c: (v * inv) % mod if mod else v * inv for c, v in r.items()}
        # keep the form fully reduced
        for pc, prow in self.pivots.items():
            f = prow.get(lead)
            if f:
                for c, v in r.items():
                    w = prow.get(c, 0) - f * v
                    if mod:
                        w %= mod
                    if w:
                        prow[c] = w
                    else:
                        prow.pop(c, None)
        self.pivots[lead] = r
        return True

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def nullspace(self) -> list[dict]:
        """Basis of the solution space of ``row . x = 0`` for all rows.

        One vector per free column, in column order; the free column carries
        coefficient 1 and every other free column 0.
        """
        mod = self.field.modulus
        free = [c for c in self.order if c not in self.pivots]
        out = []
        for fc in free:
            vec = {fc: self.field.one}
            for pc, prow in self.pivots.items():
                v = prow.get(fc)
                if v:
                    vec[pc] = (-v) % mod if mod else -v
            out.append(vec)
        return out


def nullspace(rows: Iterable[dict], order: Sequence[Hashable], field=QQ) -> list[dict]:
    ech = SparseEchelon(order, field)
    for r in rows:
        ech.add(r)
    return ech.nullspace()


def rank(rows: Iterable[dict], order: Sequence[Hashable], field=QQ) -> int:
    ech = SparseEchelon(order, field)
    for r in rows:
        ech.add(r)
    return ech.rank
