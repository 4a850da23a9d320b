"""Chain complexes of free right ``Z[G]``-modules and their integer homology."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import ValidationError
from .groupring import RingElement, RingMatrix, regular_matrix, trivial_matrix
from .realize import FiniteRealization
from .smith import IntMatrix, NoIntegerSolution, matmul, smith_normal_form, solve_many


class AlgebraicComplex:
    """``ranks[k]`` is the rank of ``C_k``; ``boundaries[k-1]`` is ``d_k: C_k -> C_{k-1}``."""

    def __init__(self, realization: FiniteRealization, ranks: Sequence[int],
                 boundaries: Sequence[RingMatrix], check: bool = True):
        self.realization = realization
        self.ranks = list(ranks)
        self.boundaries = list(boundaries)
        if len(self.boundaries) != max(len(self.ranks) - 1, 0):
            raise ValidationError("need one boundary per adjacent pair of degrees")
        for k, d in enumerate(self.boundaries, start=1):
            if d.shape != (self.ranks[k - 1], self.ranks[k]):
                raise ValidationError(
                    f"d_{k} has shape {d.shape}, expected {(self.ranks[k - 1], self.ranks[k])}")
        if check:
            for k in range(1, len(self.boundaries)):
                if not (self.boundaries[k - 1] @ self.boundaries[k]).is_zero():
                    raise ValidationError(f"d_{k} d_{k + 1} is not zero")

    @property
    def top(self) -> int:
        return len(self.ranks) - 1

    def boundary(self, k: int) -> RingMatrix:
        """``d_k``; zero maps outside the stored range."""
        r = self.realization
        if 1 <= k <= len(self.boundaries):
            return self.boundaries[k - 1]
        return RingMatrix.zeros(r, self.rank(k - 1), self.rank(k))

    def rank(self, k: int) -> int:
        return self.ranks[k] if 0 <= k < len(self.ranks) else 0

    def to_json(self) -> dict:
        return {
            "realization": self.realization.to_json(),
            "ranks": list(self.ranks),
            "boundaries": [d.to_json() for d in self.boundaries],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "AlgebraicComplex":
        r = FiniteRealization.from_json(doc["realization"])
        return cls(r, doc["ranks"], [RingMatrix.from_json(d, r) for d in doc["boundaries"]])


def zero_complex(r: FiniteRealization) -> AlgebraicComplex:
    return AlgebraicComplex(r, [], [])


@dataclass
class IntegerComplex:
    ranks: list[int]
    boundaries: list[IntMatrix]

    def boundary(self, k: int) -> IntMatrix:
        if 1 <= k <= len(self.boundaries):
            return self.boundaries[k - 1]
        rows = self.ranks[k - 1] if 0 <= k - 1 < len(self.ranks) else 0
        cols = self.ranks[k] if 0 <= k < len(self.ranks) else 0
        return [[0] * cols for _ in range(rows)]

    def rank(self, k: int) -> int:
        return self.ranks[k] if 0 <= k < len(self.ranks) else 0


@dataclass(frozen=True)
class HomologyGroup:
    free_rank: int
    torsion: tuple[int, ...] = field(default=())

    def __post_init__(self):
        t = tuple(self.torsion)
        object.__setattr__(self, "torsion", t)
        if self.free_rank < 0 or any(x <= 1 for x in t):
            raise ValueError("invalid homology group")
        if any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError("torsion coefficients must form a divisibility chain")

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


def specialize(c: AlgebraicComplex, coeff: str) -> IntegerComplex:
    """Tensor with trivial ``Z`` (augmentation) or pass to the underlying abelian groups."""
    if coeff == "trivial":
        return IntegerComplex(list(c.ranks), [trivial_matrix(d) for d in c.boundaries])
    if coeff == "regular":
        n = c.realization.order
        return IntegerComplex([k * n for k in c.ranks], [regular_matrix(d) for d in c.boundaries])
    raise ValueError(f"unknown coefficients {coeff!r}")


def homology(c: IntegerComplex, degree: int) -> HomologyGroup:
    """``ker d_n / im d_{n+1}`` from Smith forms."""
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    dn = c.boundary(degree)
    dn1 = c.boundary(degree + 1)
    rank_n = smith_normal_form(dn, transforms=False, cols=c.rank(degree)).rank if degree > 0 else 0
    factors = [d for d in smith_normal_form(dn1, transforms=False, cols=c.rank(degree + 1)).diagonal if d]
    kernel = c.rank(degree) - rank_n
    return HomologyGroup(kernel - len(factors), tuple(d for d in factors if d != 1))


def homology_all(c: IntegerComplex, top: int | None = None) -> list[HomologyGroup]:
    top = len(c.ranks) - 1 if top is None else top
    return [homology(c, k) for k in range(top + 1)]


def euler_characteristic(c: AlgebraicComplex) -> int:
    return sum((-1) ** k * r for k, r in enumerate(c.ranks))


def split_injection_test(c: AlgebraicComplex, degree: int | None = None) -> RingMatrix | None:
    """Find ``phi`` with ``phi d_top = 1`` over ``Z[G]``, or ``None``.

    A splitting exists exactly when ``H^top(C; M) = 0`` for every coefficient
    module M: the identity cocycle on ``C_top`` (M = ``C_top``) must be a
    coboundary, and conversely ``phi`` exhibits every cocycle as one.

    The coefficients of ``phi`` are the unknowns of one integer system.  Row
    ``a`` of ``phi`` solves ``sum_b phi_ab d_bc = delta_ac``; comparing the
    coefficient of group element k, ``phi_ab = sum_g p_abg g`` gives
    ``sum_{b,g} p_abg * coeff(d_bc, g^-1 k) = [a == c and k == 1]``.
    """
    top = c.top if degree is None else degree
    r = c.realization
    if top < 1:
        raise ValidationError("complex has no top boundary")
    d = c.boundary(top)
    rows_top, cols_top = d.rows, d.cols  # C_{top-1} x C_top
    if cols_top == 0:
        return RingMatrix.zeros(r, 0, rows_top)
    order = r.order
    inv = r.inverses
    table = r.mul_table
    nrows = cols_top * order
    ncols = rows_top * order
    a: IntMatrix = [[0] * ncols for _ in range(nrows)]
    for (b, cc), e in d.entries.items():
        for h, coeff in e.terms.items():
            for g in range(order):
                k = table[g][h]  # g^-1 k = h
                a[cc * order + k][b * order + g] += coeff
    rhs = []
    for row_a in range(cols_top):
        vec = [0] * nrows
        vec[row_a * order] = 1
        rhs.append(vec)
    try:
        sols = solve_many(a, rhs, cols=ncols)
    except NoIntegerSolution:
        return None
    entries = {}
    for row_a, x in enumerate(sols):
        for b in range(rows_top):
            terms = {g: x[b * order + g] for g in range(order) if x[b * order + g]}
            if terms:
                entries[(row_a, b)] = RingElement(r, terms)
    phi = RingMatrix(r, cols_top, rows_top, entries)
    if phi @ d != RingMatrix.identity(r, cols_top):
        raise AssertionError("splitting failed verification")
    return phi


def exactness_check(c: AlgebraicComplex, degree: int) -> bool:
    return homology(specialize(c, "regular"), degree).is_zero()


def check_boundaries_vanish(c: IntegerComplex) -> bool:
    for k in range(1, len(c.boundaries)):
        prod = matmul(c.boundaries[k - 1], c.boundaries[k])
        if any(any(row) for row in prod):
            return False
    return True
