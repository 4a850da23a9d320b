"""The plus construction on a Cayley complex, at chain level.

For a presentation of E and words ``k_1..k_r`` whose normal closure K is
perfect, attach one 2-cell per ``k_i`` along a product of commutators of
words trivial in ``G = E/K`` and one 3-cell per new 2-cell.  Over ``Z[G]``
the new 2-cells have zero boundary, so the 3-cell boundary is the inclusion
of the new summand; the spherical attaching maps never need to be built.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .chain import AlgebraicComplex, euler_characteristic
from .errors import ValidationError
from .fox import cayley_complex, fox_derivative
from .groupring import RingMatrix
from .kernel import PerfectnessCertificate, is_perfect, reidemeister_schreier
from .realize import FiniteRealization, same_action, todd_coxeter
from .words import Presentation, Word, commutator

# Schreier generator count above which perfectness is reported as unverified
PERFECTNESS_LIMIT = 50_000


@dataclass(frozen=True)
class KernelSpec:
    kernel_words: tuple[Word, ...] = ()
    decompositions: tuple[tuple[tuple[Word, Word], ...], ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "kernel_words", tuple(Word(k) for k in self.kernel_words))
        if self.decompositions is not None:
            decs = tuple(tuple((Word(a), Word(b)) for a, b in d) for d in self.decompositions)
            object.__setattr__(self, "decompositions", decs)
            if len(decs) != len(self.kernel_words):
                raise ValidationError("one decomposition per kernel word is required")

    @property
    def r(self) -> int:
        return len(self.kernel_words)

    def attaching_words(self) -> list[Word]:
        """The words ``prod_j [A_ij, B_ij]`` bounding the new 2-cells."""
        if self.decompositions is None:
            raise ValidationError("attaching words need commutator decompositions")
        out = []
        for dec in self.decompositions:
            w = Word()
            for a, b in dec:
                w = w * commutator(a, b)
            out.append(w)
        return out


class QuotientMismatch(ValidationError):
    pass


class KernelVerificationError(ValidationError):
    def __init__(self, check: str, index: int, message: str):
        super().__init__(f"check ({check}) failed for kernel word {index + 1}: {message}")
        self.check = check
        self.index = index


@dataclass
class PlusComplex:
    presentation: Presentation
    kernel: KernelSpec
    base: AlgebraicComplex
    full: AlgebraicComplex
    perfectness: PerfectnessCertificate | None = field(default=None)

    @property
    def r(self) -> int:
        return self.kernel.r

    @property
    def realization(self) -> FiniteRealization:
        return self.full.realization

    @property
    def perfect(self) -> bool | None:
        """True/False when certified, None when the check was skipped."""
        return None if self.perfectness is None else self.perfectness.perfect


def validate_quotient(eps: Presentation, quotient: FiniteRealization, kernel_words,
                      max_cosets: int | None = None) -> None:
    """The realization must be exactly ``E / <<k_1..k_r>>`` with matching generator images."""
    if tuple(eps.generators) != quotient.generators:
        raise QuotientMismatch("quotient alphabet does not match the presentation")
    for j, rel in enumerate(eps.relators, start=1):
        if not quotient.is_trivial(rel):
            raise QuotientMismatch(f"relator {j} is not trivial in the quotient")
    for i, k in enumerate(kernel_words, start=1):
        if not quotient.is_trivial(k):
            raise QuotientMismatch(f"kernel word {i} is not trivial in the quotient")
    enumerated = todd_coxeter(eps.with_relators(kernel_words), max_cosets)
    if not same_action(enumerated, quotient):
        raise QuotientMismatch(
            f"realization of order {quotient.order} is not E/K (enumeration gives order {enumerated.order})")


def verify_kernel_words(ks: KernelSpec, quotient: FiniteRealization,
                        check_in: FiniteRealization | None = None) -> dict:
    """Check decomposition data; raises :class:`KernelVerificationError`.

    (a) every ``A_ij``, ``B_ij`` is trivial in the quotient; (b) the Fox
    derivative of ``prod [A_ij, B_ij]`` over the quotient vanishes; (c) with
    a realization of E, ``k_i = prod [A_ij, B_ij]`` holds there.
    """
    report = {"r": ks.r, "checked": ["a", "b"] + (["c"] if check_in is not None else [])}
    if ks.decompositions is None:
        report["checked"] = []
        return report
    words = ks.attaching_words()
    for i, dec in enumerate(ks.decompositions):
        for j, (a, b) in enumerate(dec):
            for label, w in (("A", a), ("B", b)):
                if not quotient.is_trivial(w):
                    raise KernelVerificationError("a", i, f"{label}_{j + 1} has nontrivial quotient image")
    for i, w in enumerate(words):
        if any(fox_derivative(w, quotient)):
            raise KernelVerificationError("b", i, "Fox derivative of the commutator product is nonzero")
    if check_in is not None:
        for i, (k, w) in enumerate(zip(ks.kernel_words, words)):
            if check_in.image_of_word(k.inverse() * w) != 0:
                raise KernelVerificationError("c", i, "commutator product differs from the kernel word in E")
    return report


def build_plus_complex(eps: Presentation, quotient: FiniteRealization, ks: KernelSpec,
                       max_cosets: int | None = None, validate: bool = True,
                       check_perfect: bool = True) -> PlusComplex:
    if validate:
        validate_quotient(eps, quotient, ks.kernel_words, max_cosets)
        verify_kernel_words(ks, quotient)
    base = cayley_complex(eps, quotient)
    n, m, r = eps.n, eps.m, ks.r
    d1, d2 = base.boundaries
    d2_full = d2.hstack(RingMatrix.zeros(quotient, n, r))
    d3 = RingMatrix.zeros(quotient, m, r).vstack(RingMatrix.identity(quotient, r))
    full = AlgebraicComplex(quotient, [1, n, m + r, r], [d1, d2_full, d3])
    cert = None
    if check_perfect and quotient.order * n <= PERFECTNESS_LIMIT:
        cert = is_perfect(reidemeister_schreier(eps, quotient))
    return PlusComplex(eps, ks, base, full, cert)


def relative_complex(pc: PlusComplex) -> AlgebraicComplex:
    """Quotient of the full complex by the Cayley complex: ``Z[G]^r -> Z[G]^r`` in degrees 3, 2."""
    q = pc.realization
    r, m = pc.r, pc.presentation.m
    d3 = pc.full.boundaries[2].submatrix(range(m, m + r), range(r))
    return AlgebraicComplex(q, [0, 0, r, r], [
        RingMatrix.zeros(q, 0, 0), RingMatrix.zeros(q, 0, r), d3])


def plus_euler_characteristic(pc: PlusComplex) -> int:
    return euler_characteristic(pc.full)
