"""Integral group ring of a realized finite group, and matrices over it.

A matrix of shape (rows, cols) is a map of free right modules
``ZG^cols -> ZG^rows`` acting on coordinate columns from the left:
``(M v)_i = sum_j M_ij v_j``.  Right scalars act on coordinates.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .errors import ValidationError
from .realize import FiniteRealization
from .words import Word, format_word, parse_word


class RingElement:
    __slots__ = ("realization", "terms")

    def __init__(self, realization: FiniteRealization, terms: Mapping[int, int] | None = None):
        self.realization = realization
        order = realization.order
        clean = {}
        for g, c in (terms or {}).items():
            if not 0 <= g < order:
                raise ValueError(f"element id {g} out of range for order {order}")
            if c:
                clean[g] = c
        self.terms = clean

    @classmethod
    def _raw(cls, realization, terms):
        obj = cls.__new__(cls)
        obj.realization = realization
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, r: FiniteRealization) -> "RingElement":
        return cls._raw(r, {})

    @classmethod
    def one(cls, r: FiniteRealization) -> "RingElement":
        return cls._raw(r, {0: 1})

    @classmethod
    def of(cls, r: FiniteRealization, g: int, c: int = 1) -> "RingElement":
        return cls(r, {g: c})

    @classmethod
    def of_word(cls, r: FiniteRealization, w: Word, c: int = 1) -> "RingElement":
        return cls(r, {r.image_of_word(w): c})

    def _check(self, other: "RingElement") -> None:
        if self.realization is not other.realization and self.realization != other.realization:
            raise ValidationError("group ring elements come from different realizations")

    def __add__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        out = dict(self.terms)
        for g, c in other.terms.items():
            v = out.get(g, 0) + c
            if v:
                out[g] = v
            else:
                out.pop(g, None)
        return RingElement._raw(self.realization, out)

    def __neg__(self) -> "RingElement":
        return RingElement._raw(self.realization, {g: -c for g, c in self.terms.items()})

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return RingElement.zero(self.realization)
            return RingElement._raw(self.realization, {g: c * other for g, c in self.terms.items()})
        self._check(other)
        table = self.realization.mul_table
        out: dict[int, int] = {}
        for g, a in self.terms.items():
            row = table[g]
            for h, b in other.terms.items():
                k = row[h]
                out[k] = out.get(k, 0) + a * b
        return RingElement._raw(self.realization, {k: v for k, v in out.items() if v})

    def __rmul__(self, other: int) -> "RingElement":
        return self * other

    def __eq__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.terms == other.terms and (
            self.realization is other.realization or self.realization == other.realization
        )

    __hash__ = None

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*g{g}" for g, c in sorted(self.terms.items()))

    def format(self) -> str:
        """Human readable form using canonical element words."""
        if not self.terms:
            return "0"
        parts = []
        for g, c in sorted(self.terms.items()):
            w = format_word(self.realization.words[g], self.realization.generators)
            parts.append(f"{c}*({w})")
        return " + ".join(parts)


def ring_arith(a: RingElement, b: RingElement, op: str) -> RingElement:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def augment(x: RingElement) -> int:
    return sum(x.terms.values())


def left_regular(x: RingElement) -> list[list[int]]:
    """|G| x |G| integer matrix of left multiplication by ``x``."""
    n = x.realization.order
    table = x.realization.mul_table
    m = [[0] * n for _ in range(n)]
    for g, c in x.terms.items():
        row = table[g]
        for h in range(n):
            m[row[h]][h] += c
    return m


class RingMatrix:
    """Sparse matrix over ``Z[G]``; absent entries are zero."""

    __slots__ = ("realization", "rows", "cols", "entries")

    def __init__(self, realization: FiniteRealization, rows: int, cols: int,
                 entries: Mapping[tuple[int, int], RingElement] | None = None):
        self.realization = realization
        self.rows = rows
        self.cols = cols
        self.entries: dict[tuple[int, int], RingElement] = {}
        for (i, j), e in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise ValueError(f"entry ({i}, {j}) outside a {rows}x{cols} matrix")
            if e:
                self.entries[(i, j)] = e

    @classmethod
    def zeros(cls, r: FiniteRealization, rows: int, cols: int) -> "RingMatrix":
        return cls(r, rows, cols)

    @classmethod
    def identity(cls, r: FiniteRealization, n: int) -> "RingMatrix":
        one = RingElement.one(r)
        return cls(r, n, n, {(i, i): one for i in range(n)})

    @classmethod
    def from_rows(cls, r: FiniteRealization, rows: list[list[RingElement]], ncols: int | None = None) -> "RingMatrix":
        ncols = ncols if ncols is not None else (len(rows[0]) if rows else 0)
        return cls(r, len(rows), ncols, {(i, j): e for i, row in enumerate(rows) for j, e in enumerate(row)})

    def __getitem__(self, ij: tuple[int, int]) -> RingElement:
        return self.entries.get(ij) or RingElement.zero(self.realization)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def is_zero(self) -> bool:
        return not self.entries

    def __matmul__(self, other: "RingMatrix") -> "RingMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot compose {self.shape} with {other.shape}")
        by_row: dict[int, list[tuple[int, RingElement]]] = {}
        for (k, j), e in other.entries.items():
            by_row.setdefault(k, []).append((j, e))
        out: dict[tuple[int, int], RingElement] = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                prod = a * b
                if (i, j) in out:
                    out[(i, j)] = out[(i, j)] + prod
                else:
                    out[(i, j)] = prod
        return RingMatrix(self.realization, self.rows, other.cols, out)

    def __add__(self, other: "RingMatrix") -> "RingMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        out = dict(self.entries)
        for ij, e in other.entries.items():
            out[ij] = out[ij] + e if ij in out else e
        return RingMatrix(self.realization, self.rows, self.cols, out)

    def __neg__(self) -> "RingMatrix":
        return RingMatrix(self.realization, self.rows, self.cols, {ij: -e for ij, e in self.entries.items()})

    def __sub__(self, other: "RingMatrix") -> "RingMatrix":
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, RingMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    __hash__ = None

    def __repr__(self) -> str:
        return f"RingMatrix({self.rows}x{self.cols}, {len(self.entries)} nonzero)"

    def column(self, j: int) -> list[RingElement]:
        return [self[i, j] for i in range(self.rows)]

    def hstack(self, other: "RingMatrix") -> "RingMatrix":
        if self.rows != other.rows:
            raise ValueError("row counts differ")
        out = dict(self.entries)
        out.update({(i, j + self.cols): e for (i, j), e in other.entries.items()})
        return RingMatrix(self.realization, self.rows, self.cols + other.cols, out)

    def vstack(self, other: "RingMatrix") -> "RingMatrix":
        if self.cols != other.cols:
            raise ValueError("column counts differ")
        out = dict(self.entries)
        out.update({(i + self.rows, j): e for (i, j), e in other.entries.items()})
        return RingMatrix(self.realization, self.rows + other.rows, self.cols, out)

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "RingMatrix":
        rows, cols = list(rows), list(cols)
        ri = {r: k for k, r in enumerate(rows)}
        ci = {c: k for k, c in enumerate(cols)}
        out = {(ri[i], ci[j]): e for (i, j), e in self.entries.items() if i in ri and j in ci}
        return RingMatrix(self.realization, len(rows), len(cols), out)

    def map_entries(self, f) -> list[list]:
        return [[f(self[i, j]) for j in range(self.cols)] for i in range(self.rows)]

    def to_json(self) -> dict:
        gens = self.realization.generators
        words = self.realization.words
        entries = []
        for (i, j) in sorted(self.entries):
            e = self.entries[(i, j)]
            entries.append([i, j, [[format_word(words[g], gens), c] for g, c in sorted(e.terms.items())]])
        return {"rows": self.rows, "cols": self.cols, "entries": entries}

    @classmethod
    def from_json(cls, doc: dict, realization: FiniteRealization) -> "RingMatrix":
        gens = realization.generators
        out: dict[tuple[int, int], RingElement] = {}
        for i, j, terms in doc["entries"]:
            acc = RingElement.zero(realization)
            for text, c in terms:
                acc = acc + RingElement.of_word(realization, parse_word(text, gens), int(c))
            key = (int(i), int(j))
            out[key] = out[key] + acc if key in out else acc
        return cls(realization, int(doc["rows"]), int(doc["cols"]), out)


def regular_matrix(m: RingMatrix) -> list[list[int]]:
    """Replace each entry by its left-multiplication block (element index fastest)."""
    n = m.realization.order
    table = m.realization.mul_table
    out = [[0] * (m.cols * n) for _ in range(m.rows * n)]
    for (i, j), e in m.entries.items():
        r0, c0 = i * n, j * n
        for g, c in e.terms.items():
            row = table[g]
            for h in range(n):
                out[r0 + row[h]][c0 + h] += c
    return out


def trivial_matrix(m: RingMatrix) -> list[list[int]]:
    out = [[0] * m.cols for _ in range(m.rows)]
    for (i, j), e in m.entries.items():
        out[i][j] = augment(e)
    return out
