"""The kernel ``K`` of ``E -> G`` for a finite realized quotient ``G``.

Reidemeister-Schreier rewriting uses the prefix-closed BFS transversal of
the realization: coset x has representative ``t_x = words[x]`` and the
Schreier generator for ``(x, g)`` is ``t_x g t_{xg}^-1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .chain import HomologyGroup
from .errors import ResourceExhausted, ValidationError
from .realize import FiniteRealization
from .smith import NoIntegerSolution, smith_normal_form, solve
from .words import Presentation, Word, commutator, conjugate_relator_product, exponent_sum_vector

DEFAULT_BOUND = 100_000


@dataclass(frozen=True)
class SubgroupPresentation:
    presentation: Presentation
    transversal: tuple[Word, ...]
    generator_origin: dict[str, tuple[int, int]]
    definitions: tuple[Word, ...]
    ambient: Presentation
    quotient: FiniteRealization
    # (coset, generator) -> signed-free index into presentation.generators (1-based)
    letter_map: dict[tuple[int, int], int] = field(repr=False, default_factory=dict)
    # (coset, relator index) for each relator; empty once simplified
    relator_origin: tuple[tuple[int, int], ...] = ()

    def rewrite(self, w: Word, start: int = 0) -> tuple[Word, int]:
        """Rewrite ``t_start w`` as a Schreier word; also returns the final coset."""
        right = self.quotient._right
        lm = self.letter_map
        c = start
        out = []
        for letter in w:
            if letter > 0:
                k = lm.get((c, letter))
                if k:
                    out.append(k)
                c = right[letter][c]
            else:
                c = right[letter][c]
                k = lm.get((c, -letter))
                if k:
                    out.append(-k)
        return Word(out), c

    def to_ambient(self, w: Word) -> Word:
        out = Word()
        for letter in w:
            d = self.definitions[abs(letter) - 1]
            out = out * (d if letter > 0 else d.inverse())
        return out


def _schreier_name(gen: str, coset: int) -> str:
    return gen if coset == 0 else f"{gen}_{coset}"


def reidemeister_schreier(eps: Presentation, quotient: FiniteRealization,
                          simplify: bool = True) -> SubgroupPresentation:
    """Presentation of ``ker(E -> G)`` on the nontrivial Schreier generators.

    With ``simplify`` the generators killed by a one-letter relator are
    removed too; the unsimplified form keeps exact free-group bookkeeping.
    """
    if tuple(eps.generators) != quotient.generators:
        raise ValidationError("quotient alphabet does not match the presentation")
    quotient.check_relators(eps)
    order, n = quotient.order, eps.n
    t = quotient.words
    right = quotient._right
    names: list[str] = []
    defs: list[Word] = []
    origin: dict[str, tuple[int, int]] = {}
    letter_map: dict[tuple[int, int], int] = {}
    raw_origin = []
    for x in range(order):
        for g in range(1, n + 1):
            y = right[g][x]
            d = t[x] * Word._trusted((g,)) * t[y].inverse()
            if not d:
                continue
            names.append(_schreier_name(eps.generators[g - 1], x))
            raw_origin.append((x, g))
            defs.append(d)
            letter_map[(x, g)] = len(names)
    if len(set(names)) != len(names):
        names = [f"s{i}" for i in range(1, len(names) + 1)]
    for nm, o in zip(names, raw_origin):
        origin[nm] = o

    sp = SubgroupPresentation(
        presentation=Presentation(tuple(names), ()),
        transversal=t, generator_origin=origin, definitions=tuple(defs),
        ambient=eps, quotient=quotient, letter_map=letter_map)
    rels, rel_origin = [], []
    for j, rel in enumerate(eps.relators):
        for x in range(order):
            w, end = sp.rewrite(rel, x)
            if end != x:
                raise ValidationError(f"relator {j + 1} is not trivial in the quotient")
            if w:
                rels.append(w)
                rel_origin.append((x, j))
    sp = SubgroupPresentation(
        presentation=Presentation(tuple(names), tuple(rels)),
        transversal=t, generator_origin=origin, definitions=tuple(defs),
        ambient=eps, quotient=quotient, letter_map=letter_map,
        relator_origin=tuple(rel_origin))
    return _eliminate_trivial(sp) if simplify else sp


def _eliminate_trivial(sp: SubgroupPresentation) -> SubgroupPresentation:
    names = list(sp.presentation.generators)
    rels = list(sp.presentation.relators)
    alive = [True] * len(names)
    changed = True
    while changed:
        changed = False
        for r in rels:
            if len(r) == 1 and alive[abs(r[0]) - 1]:
                dead = abs(r[0])
                alive[dead - 1] = False
                rels = [Word(x for x in w if abs(x) != dead) for w in rels]
                rels = [w for w in rels if w]
                changed = True
                break
    keep = [i for i in range(len(names)) if alive[i]]
    renum = {i + 1: k + 1 for k, i in enumerate(keep)}
    new_rels = tuple(Word((renum[abs(x)] if x > 0 else -renum[abs(x)]) for x in w) for w in rels)
    new_names = tuple(names[i] for i in keep)
    letter_map = {key: renum[v] for key, v in sp.letter_map.items() if v in renum}
    return SubgroupPresentation(
        presentation=Presentation(new_names, new_rels),
        transversal=sp.transversal,
        generator_origin={nm: sp.generator_origin[nm] for nm in new_names},
        definitions=tuple(sp.definitions[i] for i in keep),
        ambient=sp.ambient, quotient=sp.quotient, letter_map=letter_map)


def exponent_matrix(p: Presentation) -> list[list[int]]:
    return [exponent_sum_vector(r, p.n) for r in p.relators]


@dataclass(frozen=True)
class PerfectnessCertificate:
    perfect: bool
    invariant_factors: tuple[int, ...]
    h1: HomologyGroup

    def to_json(self) -> dict:
        return {"perfect": self.perfect, "invariant_factors": list(self.invariant_factors),
                "h1": str(self.h1)}


def abelian_invariants(p: Presentation) -> tuple[tuple[int, ...], HomologyGroup]:
    """Nonzero invariant factors of the relation matrix and the abelianization."""
    factors = tuple(d for d in smith_normal_form(exponent_matrix(p), transforms=False, cols=p.n).diagonal if d)
    return factors, HomologyGroup(p.n - len(factors), tuple(d for d in factors if d != 1))


def is_perfect(sp: SubgroupPresentation | Presentation) -> PerfectnessCertificate:
    p = sp.presentation if isinstance(sp, SubgroupPresentation) else sp
    factors, h1 = abelian_invariants(p)
    return PerfectnessCertificate(h1.is_zero(), factors, h1)


# ---------------------------------------------------------------- decomposition


class DecompositionError(ValidationError):
    pass


class NotInKernel(DecompositionError):
    pass


class NoIntegerSolutionError(DecompositionError):
    pass


class BoundExceeded(ResourceExhausted):
    pass


@dataclass(frozen=True)
class CommutatorDecomposition:
    """``k`` equals ``prod [A_j, B_j] * conjugate_relator_product(certificate)`` after free reduction."""

    pairs: tuple[tuple[Word, Word], ...]
    certificate: tuple[tuple[Word, Word, int], ...]

    def product(self) -> Word:
        out = Word()
        for a, b in self.pairs:
            out = out * commutator(a, b)
        return out

    def check(self, k: Word) -> bool:
        return self.product() * conjugate_relator_product(self.certificate) == Word(k)


def collect_commutators(w: Word) -> list[tuple[Word, Word]]:
    """Write an exponent-sum-zero free word as a product of commutators.

    With ``w = y p y^-1 q`` (first letter y, first later occurrence of its
    inverse) we have ``w = [y, p] (p q)`` and recurse on the shorter ``p q``.
    """
    pairs = []
    w = list(Word(w))
    while w:
        y = w[0]
        try:
            j = w.index(-y, 1)
        except ValueError:
            raise ValueError("word has nonzero exponent sum") from None
        p = w[1:j]
        pairs.append((Word._trusted((y,)), Word(p)))
        w = list(Word(p + w[j + 1:]))
    return pairs


def commutator_decompose(k: Word, sp: SubgroupPresentation,
                         bound: int = DEFAULT_BOUND) -> CommutatorDecomposition:
    """Certified decomposition of ``k`` into commutators of kernel elements.

    ``k`` is rewritten in Schreier generators, corrected by an integer
    combination of rewritten relators that cancels its exponent vector, and
    the exponent-zero remainder is collected into commutators.
    """
    k = Word(k)
    quotient = sp.quotient
    if not quotient.is_trivial(k):
        raise NotInKernel("word is not in the kernel")
    full = reidemeister_schreier(sp.ambient, quotient, simplify=False)
    p = full.presentation
    u, _ = full.rewrite(k)
    target = exponent_sum_vector(u, p.n)
    mat = exponent_matrix(p)
    transpose = [[mat[j][i] for j in range(len(mat))] for i in range(p.n)]
    try:
        coeffs = solve(transpose, target, cols=len(mat)) if p.n else []
    except NoIntegerSolution:
        raise NoIntegerSolutionError(
            "kernel element has nonzero image in the abelianized kernel") from None
    correction = Word()
    cert = []
    for j, c in enumerate(coeffs):
        if not c:
            continue
        if sum(abs(x) for x in coeffs) * max(len(r) for r in p.relators) > bound:
            raise BoundExceeded(f"relator correction exceeds bound {bound}")
        correction = correction * p.relators[j] ** c
        x, ridx = full.relator_origin[j]
        t = full.transversal[x]
        sigma = 1 if c > 0 else -1
        cert.extend([(t.inverse(), sp.ambient.relators[ridx], sigma)] * abs(c))
    remainder = u * correction.inverse()
    if len(remainder) > bound:
        raise BoundExceeded(f"corrected word has length {len(remainder)} > bound {bound}")
    pairs = tuple((full.to_ambient(a), full.to_ambient(b)) for a, b in collect_commutators(remainder))
    dec = CommutatorDecomposition(pairs, tuple(cert))
    if not dec.check(k):
        raise AssertionError("commutator decomposition failed its certificate")
    return dec
