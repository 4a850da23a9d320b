"""Recover a partial presentation from a cohomologically 2-dimensional 3-complex.

Input is vertex-reduced: 1-cells are generators, 2-cells are relator words,
and the 3-cells are given only through their boundary matrix over ``Z[G]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .chain import (AlgebraicComplex, HomologyGroup, euler_characteristic, exactness_check,
                    homology_all, specialize, split_injection_test)
from .errors import ValidationError
from .fox import boundary_one, cayley_complex, fox_matrix
from .groupring import RingElement, RingMatrix, regular_matrix
from .plus import KernelSpec, PlusComplex, build_plus_complex
from .realize import FiniteRealization, same_action, todd_coxeter
from .smith import smith_normal_form
from .words import Presentation, Word, conjugate_relator_product


@dataclass
class CellThreeComplex:
    base_presentation: Presentation
    quotient: FiniteRealization
    d3: RingMatrix

    @property
    def two_cells(self) -> int:
        return self.base_presentation.m

    @property
    def three_cells(self) -> int:
        return self.d3.cols

    def algebraic(self, check: bool = True) -> AlgebraicComplex:
        p, q = self.base_presentation, self.quotient
        return AlgebraicComplex(q, [1, p.n, p.m, self.d3.cols],
                                [boundary_one(q), fox_matrix(p.relators, q), self.d3], check=check)


def three_complex_from_plus(pc: PlusComplex) -> CellThreeComplex:
    """View a plus complex as a vertex-reduced 3-complex (needs decompositions)."""
    words = pc.kernel.attaching_words()
    p = pc.presentation.with_relators(words)
    return CellThreeComplex(p, pc.realization, pc.full.boundaries[2])


class NotCohomologicallyTwoDimensional(ValidationError):
    pass


@dataclass
class ValidationReport:
    failures: list[str] = field(default_factory=list)
    phi: RingMatrix | None = None

    @property
    def ok(self) -> bool:
        return not self.failures

    def raise_for_failures(self) -> None:
        if not self.failures:
            return
        if self.failures == ["not cohomologically 2-dimensional"]:
            raise NotCohomologicallyTwoDimensional(self.failures[0])
        raise ValidationError("; ".join(self.failures))


def validate_three_complex(x: CellThreeComplex, max_cosets: int | None = None,
                           check_quotient: bool = True) -> ValidationReport:
    report = ValidationReport()
    p, q = x.base_presentation, x.quotient
    if tuple(p.generators) != q.generators:
        report.failures.append("quotient alphabet does not match the presentation")
        return report
    bad = [j for j, rel in enumerate(p.relators, start=1) if not q.is_trivial(rel)]
    if bad:
        report.failures.append(f"relators {bad} are not trivial in the quotient")
        return report
    if check_quotient and not same_action(todd_coxeter(p, max_cosets), q):
        report.failures.append("quotient does not realize the group of the presentation")
    if x.d3.rows != p.m:
        report.failures.append(f"d3 has {x.d3.rows} rows but there are {p.m} 2-cells")
        return report
    d2 = fox_matrix(p.relators, q)
    if not (d2 @ x.d3).is_zero():
        report.failures.append("d2 d3 is not zero")
        return report
    c = x.algebraic(check=False)
    if not exactness_check(c, 1):
        report.failures.append("cover is not simply connected (H_1 with regular coefficients is nonzero)")
    phi = split_injection_test(c, 3)
    if phi is None:
        report.failures.append("not cohomologically 2-dimensional")
    report.phi = phi
    return report


def _fresh_names(taken, count: int) -> list[str]:
    out, i = [], 1
    taken = set(taken)
    while len(out) < count:
        name = f"z{i}"
        if name not in taken:
            out.append(name)
            taken.add(name)
        i += 1
    return out


@dataclass
class StabilizedComplex:
    presentation: Presentation  # n + q generators, m + q relators
    quotient: FiniteRealization
    d3: RingMatrix               # (m + q) x q
    phi: RingMatrix              # q x (m + q)
    original_d3: RingMatrix      # m x q
    original_phi: RingMatrix     # q x m

    @property
    def m(self) -> int:
        return self.original_d3.rows

    @property
    def q(self) -> int:
        return self.original_d3.cols

    def algebraic(self) -> AlgebraicComplex:
        p, r = self.presentation, self.quotient
        return AlgebraicComplex(r, [1, p.n, p.m, self.q],
                                [boundary_one(r), fox_matrix(p.relators, r), self.d3])


def stabilize(x: CellThreeComplex, phi: RingMatrix) -> StabilizedComplex:
    """Wedge on one disk per 3-cell: a new generator and the relator killing it."""
    q = x.three_cells
    p = x.base_presentation
    if not (phi @ x.d3 == RingMatrix.identity(x.quotient, q)):
        raise ValidationError("phi is not a splitting of d3")
    names = _fresh_names(p.generators, q)
    n = p.n
    gens = p.generators + tuple(names)
    rels = p.relators + tuple(Word._trusted((n + i + 1,)) for i in range(q))
    quotient = x.quotient.extend_trivially(names)
    d3 = _rebase(x.d3, quotient).vstack(RingMatrix.zeros(quotient, q, q))
    phi_ext = _rebase(phi, quotient).hstack(RingMatrix.zeros(quotient, q, q))
    return StabilizedComplex(Presentation(gens, rels), quotient, d3, phi_ext,
                             _rebase(x.d3, quotient), _rebase(phi, quotient))


def _rebase(m: RingMatrix, r: FiniteRealization) -> RingMatrix:
    # extending by trivially acting generators keeps element ids
    return RingMatrix(r, m.rows, m.cols, {ij: RingElement(r, e.terms) for ij, e in m.entries.items()})


@dataclass
class PartialPresentationResult:
    eps: Presentation
    coordinates: list[list[tuple[int, int, int]]]  # per x_i: (2-cell index, element id, sign)
    kernel_relators: tuple[Word, ...]
    quotient: FiniteRealization
    basis: RingMatrix  # (m + q) x m, column i is x_i

    def to_json(self) -> dict:
        p = self.eps
        return {
            "partial_presentation": str(p),
            "kernel": [p.format_word(k) for k in self.kernel_relators],
            "coordinates": [[list(t) for t in col] for col in self.coordinates],
        }


class HomologyNonvanishing(ValidationError):
    pass


def basis_matrix(s: StabilizedComplex) -> RingMatrix:
    """Columns ``x_j = (E_j - d3 phi E_j) + iota(phi E_j)`` for the original 2-cells."""
    r = s.quotient
    top = RingMatrix.identity(r, s.m) - s.original_d3 @ s.original_phi
    return top.vstack(s.original_phi)


def derive_partial_presentation(s: StabilizedComplex) -> PartialPresentationResult:
    r = s.quotient
    p = s.presentation
    x = basis_matrix(s)
    words = r.words
    relators, coords = [], []
    for j in range(x.cols):
        terms = []
        for k in range(x.rows):
            e = x.entries.get((k, j))
            if e is None:
                continue
            for g in sorted(e.terms):
                c = e.terms[g]
                sign = 1 if c > 0 else -1
                terms.extend([(k, g, sign)] * abs(c))
        coords.append(terms)
        relators.append(conjugate_relator_product([(words[g], p.relators[k], sign) for k, g, sign in terms]))
    eps = Presentation(p.generators, tuple(relators))
    for i, w in enumerate(relators, start=1):
        if not r.is_trivial(w):
            raise ValidationError(f"relator S_{i} is not trivial in G")
    cayley = cayley_complex(eps, r)
    if not exactness_check(cayley, 1):
        raise HomologyNonvanishing("H_1 of the new Cayley complex over Z[G] is nonzero")
    return PartialPresentationResult(eps, coords, p.relators, r, x)


def basis_is_unimodular(s: StabilizedComplex, result: PartialPresentationResult) -> bool:
    """``[d3' | x_1..x_m]`` is invertible over ``Z[G]`` (regular determinant +-1)."""
    square = s.d3.hstack(result.basis)
    reg = regular_matrix(square)
    diag = smith_normal_form(reg, transforms=False).diagonal
    return len(reg) == len(reg[0]) and all(d == 1 for d in diag)


class RoundTripMismatch(ValidationError):
    pass


def invariants(c: AlgebraicComplex, top: int = 3) -> dict:
    out = {"chi": euler_characteristic(c)}
    for coeff in ("trivial", "regular"):
        out[coeff] = [str(h) for h in homology_all(specialize(c, coeff), top)]
    return out


def round_trip_verify(x: CellThreeComplex, result: PartialPresentationResult,
                      max_cosets: int | None = None) -> dict:
    """Rebuild the plus complex of the result and compare homological invariants."""
    try:
        original = x.algebraic(check=True)
    except ValidationError as err:
        raise RoundTripMismatch(f"input is not a chain complex: {err}") from None
    pc = build_plus_complex(result.eps, result.quotient, KernelSpec(result.kernel_relators),
                            max_cosets=max_cosets, check_perfect=False)
    left, right = invariants(original), invariants(pc.full)
    mismatches = [key for key in left if left[key] != right[key]]
    report = {"input": left, "rebuilt": right, "match": not mismatches}
    if mismatches:
        raise RoundTripMismatch(f"invariants differ: {', '.join(mismatches)}")
    return report


def extract(x: CellThreeComplex, max_cosets: int | None = None) -> tuple[PartialPresentationResult, dict]:
    """Validate, stabilize, derive and round-trip in one go."""
    report = validate_three_complex(x, max_cosets)
    report.raise_for_failures()
    s = stabilize(x, report.phi)
    result = derive_partial_presentation(s)
    return result, round_trip_verify(x, result, max_cosets)
