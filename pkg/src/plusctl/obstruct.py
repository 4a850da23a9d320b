"""Deficiency arithmetic for a short exact sequence ``1 -> K -> E -> G -> 1``.

Group deficiencies are not computable in general, so the functions here
work with presentation deficiencies and treat group-level values as
assertions supplied by the user; anything depending on them is labelled
conditional.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .chain import euler_characteristic
from .errors import ValidationError
from .kernel import abelian_invariants, exponent_matrix, is_perfect, reidemeister_schreier
from .plus import KernelSpec, PlusComplex, build_plus_complex, validate_quotient
from .realize import FiniteRealization, todd_coxeter
from .smith import smith_normal_form
from .words import Presentation, Word, exponent_sum_vector


def deficiency(p: Presentation) -> int:
    return p.n - p.m


def abelianization_rank(p: Presentation) -> tuple[int, tuple[int, ...]]:
    """Free rank and torsion of ``G/[G,G]`` from the relator exponent sums."""
    _, h1 = abelian_invariants(p)
    return h1.free_rank, h1.torsion


@dataclass
class SesSpec:
    eps_E: Presentation
    kernel_words: tuple[Word, ...]
    quotient: FiniteRealization
    asserted_def_E: int | None = None
    asserted_def_G: int | None = None

    @classmethod
    def build(cls, eps_E: Presentation, kernel_words, asserted_def_E=None, asserted_def_G=None,
              max_cosets: int | None = None) -> "SesSpec":
        """Enumerate ``G = E / <<kernel_words>>`` and validate."""
        kernel_words = tuple(Word(k) for k in kernel_words)
        quotient = todd_coxeter(eps_E.with_relators(kernel_words), max_cosets)
        return cls(eps_E, kernel_words, quotient, asserted_def_E, asserted_def_G)

    def validate(self, max_cosets: int | None = None) -> None:
        validate_quotient(self.eps_E, self.quotient, self.kernel_words, max_cosets)

    @property
    def r(self) -> int:
        return len(self.kernel_words)

    def quotient_presentation(self) -> Presentation:
        """The presentation of G obtained by adding the kernel words as relators."""
        return self.eps_E.with_relators(self.kernel_words)


def coinvariant_relations(s: SesSpec) -> tuple[list[list[int]], int]:
    """Relation matrix for ``(K/[K,K]) (x)_G Z`` on the Schreier generators.

    Rows are the rewritten relators plus, for each ambient generator g and
    Schreier generator s, ``rewrite(g s g^-1) - s``.  Conjugation does not
    just permute Schreier generators, so the rewrite is done exactly.
    """
    sp = reidemeister_schreier(s.eps_E, s.quotient, simplify=False)
    p = sp.presentation
    rows = exponent_matrix(p)
    for g in range(1, s.eps_E.n + 1):
        letter = Word._trusted((g,))
        for i, d in enumerate(sp.definitions):
            w, end = sp.rewrite(letter * d * letter.inverse())
            assert end == 0
            vec = exponent_sum_vector(w, p.n)
            vec[i] -= 1
            if any(vec):
                rows.append(vec)
    return rows, p.n


def rk_bounds(s: SesSpec) -> tuple[int, int]:
    """``(lower, upper)`` for the number of Z[G]-generators of ``K/[K,K]``."""
    upper = s.r
    rows, ncols = coinvariant_relations(s)
    diag = smith_normal_form(rows, transforms=False, cols=ncols).diagonal
    lower = ncols - sum(1 for d in diag if d == 1)
    return lower, upper


def evaluate_inequality(rk_lower: int, rk_upper: int, def_G: int, def_E: int) -> bool | None:
    """``rk + Def(G) < Def(E)`` for rk in the bound interval; None if the bounds straddle it."""
    if rk_upper + def_G < def_E:
        return True
    if rk_lower + def_G >= def_E:
        return False
    return None


def deficiency_chain(def_E: int, def_G: int) -> dict:
    """``1 - Def(G') >= 1 - Def(E/K) > 1 - Def(E) = chi`` for minimal eps and any G' of deficiency <= Def(E/K)."""
    chi_plus = 1 - def_E
    bound = 1 - def_G
    return {
        "chi_plus": chi_plus,
        "one_minus_def_quotient": bound,
        "applies": def_E > def_G,
        "statement": (f"1 - Def(G') >= 1 - Def(E/K) = {bound} > 1 - Def(E) = {chi_plus}"
                      if def_E > def_G else
                      f"Def(E) = {def_E} does not exceed Def(E/K) = {def_G}; no strict chain"),
    }


@dataclass
class ObstructionReport:
    def_eps: int
    def_quotient_presentation: int
    rk_lower: int
    rk_upper: int
    inequality_holds: bool | None
    conditional: bool
    chi_values: dict
    chain: dict | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        if self.inequality_holds is None:
            return "inconclusive"
        if self.inequality_holds:
            return "conditional positive" if self.conditional else "holds for presentation bounds"
        return "no obstruction exhibited"

    def to_json(self) -> dict:
        return {
            "def_eps": self.def_eps,
            "def_quotient_presentation": self.def_quotient_presentation,
            "rk_lower": self.rk_lower,
            "rk_upper": self.rk_upper,
            "inequality_holds": self.inequality_holds,
            "conditional": self.conditional,
            "verdict": self.verdict,
            "chi": self.chi_values,
            "chain": self.chain,
            "notes": list(self.notes),
        }


def check_inequality(s: SesSpec, bounds: tuple[int, int] | None = None) -> ObstructionReport:
    lower, upper = rk_bounds(s) if bounds is None else bounds
    def_eps = deficiency(s.eps_E)
    def_q = deficiency(s.quotient_presentation())
    notes = []
    asserted = s.asserted_def_E is not None and s.asserted_def_G is not None
    if asserted:
        def_E, def_G = s.asserted_def_E, s.asserted_def_G
        if def_E < def_eps:
            notes.append(f"asserted Def(E) = {def_E} is below the deficiency {def_eps} of the given presentation")
        if def_G < def_q:
            notes.append(f"asserted Def(G) = {def_G} is below the deficiency {def_q} of eps_E with the kernel words")
    else:
        def_E, def_G = def_eps, def_q
        notes.append("bounds, not group deficiencies")
        if s.asserted_def_E is not None or s.asserted_def_G is not None:
            notes.append("only one deficiency asserted; both are needed for a conditional conclusion")
    holds = evaluate_inequality(lower, upper, def_G, def_E)
    chi = {"cayley": 1 - def_eps, "plus": 1 - def_eps}
    chain = deficiency_chain(def_E, def_G) if asserted else None
    return ObstructionReport(def_eps, def_q, lower, upper, holds, asserted, chi, chain, notes)


class NotPerfect(ValidationError):
    pass


def construct_candidate(s: SesSpec, max_cosets: int | None = None) -> tuple[PlusComplex, dict]:
    """Plus complex of ``eps_E`` along the kernel words, after certifying K perfect."""
    cert = is_perfect(reidemeister_schreier(s.eps_E, s.quotient))
    if not cert.perfect:
        raise NotPerfect(f"kernel is not perfect: H_1(K) = {cert.h1}")
    pc = build_plus_complex(s.eps_E, s.quotient, KernelSpec(s.kernel_words),
                            max_cosets=max_cosets, check_perfect=False)
    pc.perfectness = cert
    chi = euler_characteristic(pc.full)
    if chi != 1 - deficiency(s.eps_E):
        raise AssertionError("Euler characteristic disagrees with the deficiency")
    report = {
        "chi": chi,
        "quotient_order": s.quotient.order,
        "ranks": list(pc.full.ranks),
        "perfectness": cert.to_json(),
        "quotient_presentation": str(s.quotient_presentation()),
    }
    return pc, report

