"""Fox free differential calculus valued in ``Z[G]`` and Cayley complexes."""

from __future__ import annotations

from .errors import ValidationError
from .groupring import RingElement, RingMatrix
from .realize import FiniteRealization
from .words import Presentation, Word


def fox_derivative(w: Word, r: FiniteRealization) -> list[RingElement]:
    """Coordinates of ``d(w)`` in the basis ``e_1..e_n``.

    Uses ``d(g_i) = e_i`` and ``d(AB) = d(A) B + d(B)``: the letter at position
    j contributes ``+e_i * (x_{j+1}..x_k)`` for ``g_i`` and
    ``-e_i * (x_j..x_k)`` for ``g_i^-1``.
    """
    w = Word(w)
    n = r.n
    left = r._left
    coeffs: list[dict[int, int]] = [{} for _ in range(n)]
    suffix = 0  # image of the letters to the right of the current one
    for letter in reversed(w):
        i = abs(letter) - 1
        here = left[letter][suffix]
        if letter > 0:
            d = coeffs[i]
            d[suffix] = d.get(suffix, 0) + 1
        else:
            d = coeffs[i]
            d[here] = d.get(here, 0) - 1
        suffix = here
    return [RingElement(r, c) for c in coeffs]


def boundary_one(r: FiniteRealization) -> RingMatrix:
    """``d_1(e_i) = g_i - 1`` as a 1 x n matrix."""
    one = RingElement.one(r)
    entries = {}
    for i in range(r.n):
        entries[(0, i)] = RingElement.of(r, r.image_of_word(Word((i + 1,)))) - one
    return RingMatrix(r, 1, r.n, entries)


def fox_matrix(relators, r: FiniteRealization) -> RingMatrix:
    """n x m matrix whose j-th column is the Fox derivative of relator j."""
    entries = {}
    for j, rel in enumerate(relators):
        for i, e in enumerate(fox_derivative(rel, r)):
            if e:
                entries[(i, j)] = e
    return RingMatrix(r, r.n, len(relators), entries)


def fundamental_defect(w: Word, r: FiniteRealization) -> RingElement:
    """``sum_i (g_i - 1) d(w)_i - (w - 1)``; zero for every word."""
    d1 = boundary_one(r)
    acc = RingElement.zero(r)
    for i, e in enumerate(fox_derivative(w, r)):
        acc = acc + d1[0, i] * e
    return acc - (RingElement.of(r, r.image_of_word(w)) - RingElement.one(r))


def cayley_complex(p: Presentation, r: FiniteRealization):
    """Algebraic complex ``C_2 -> C_1 -> C_0`` of the Cayley complex over ``Z[G]``."""
    from .chain import AlgebraicComplex

    if tuple(p.generators) != r.generators:
        raise ValidationError("realization alphabet does not match the presentation")
    r.check_relators(p)
    d1 = boundary_one(r)
    d2 = fox_matrix(p.relators, r)
    return AlgebraicComplex(r, [1, p.n, p.m], [d1, d2])
