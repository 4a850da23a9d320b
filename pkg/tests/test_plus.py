import pytest

from helpers import random_word
from plusctl.chain import euler_characteristic, homology_all, specialize, split_injection_test
from plusctl.fox import cayley_complex, fox_derivative
from plusctl.groupring import RingMatrix
from plusctl.kernel import commutator_decompose, reidemeister_schreier
from plusctl.plus import (KernelSpec, KernelVerificationError, QuotientMismatch, build_plus_complex,
                          relative_complex, verify_kernel_words)
from plusctl.realize import todd_coxeter, trivial_realization
from plusctl.words import Word, commutator, parse_presentation


def corpus(a5, a5z2, a5z2_kernel, a5z2_quotient):
    triv = trivial_realization(a5.generators)
    return {
        "a5": build_plus_complex(a5, triv, KernelSpec((a5.word("a"), a5.word("b")))),
        "a5z2": build_plus_complex(a5z2, a5z2_quotient, KernelSpec(a5z2_kernel)),
        "empty": build_plus_complex(a5, todd_coxeter(a5), KernelSpec(())),
    }


@pytest.fixture(scope="module")
def plus_corpus(a5, a5z2, a5z2_kernel, a5z2_quotient):
    return corpus(a5, a5z2, a5z2_kernel, a5z2_quotient)


def test_ranks(plus_corpus):
    assert plus_corpus["a5"].full.ranks == [1, 2, 5, 2]
    assert plus_corpus["a5z2"].full.ranks == [1, 3, 8, 2]
    assert plus_corpus["a5z2"].realization.order == 2
    assert plus_corpus["empty"].full.ranks == [1, 2, 3, 0]


def test_boundary_shapes(plus_corpus):
    pc = plus_corpus["a5"]
    r = pc.realization
    d2, d3 = pc.full.boundaries[1], pc.full.boundaries[2]
    assert d2.submatrix(range(2), range(3, 5)).is_zero()
    assert d3 == RingMatrix.zeros(r, 3, 2).vstack(RingMatrix.identity(r, 2))


def test_empty_kernel_is_cayley(plus_corpus, a5, a5_group):
    pc = plus_corpus["empty"]
    base = cayley_complex(a5, a5_group)
    assert pc.full.boundaries[:2] == base.boundaries


@pytest.mark.parametrize("name", ["a5", "a5z2", "empty"])
def test_plus_invariants(plus_corpus, name):
    pc = plus_corpus[name]
    for coeff in ("trivial", "regular"):
        full = homology_all(specialize(pc.full, coeff), 3)
        base = homology_all(specialize(pc.base, coeff), 3)
        assert full == base
        assert all(h.is_zero() for h in homology_all(specialize(relative_complex(pc), coeff), 3))
    assert split_injection_test(pc.full) is not None
    m, n = pc.presentation.m, pc.presentation.n
    assert euler_characteristic(pc.full) == euler_characteristic(pc.base) == 1 - (n - m)


def test_relative_shape(plus_corpus):
    rel = relative_complex(plus_corpus["a5z2"])
    assert rel.ranks == [0, 0, 2, 2]
    assert rel.boundaries[2] == RingMatrix.identity(rel.realization, 2)
    assert relative_complex(plus_corpus["empty"]).ranks == [0, 0, 0, 0]


def test_perfectness_flag(plus_corpus):
    assert plus_corpus["a5"].perfect is True
    assert plus_corpus["a5z2"].perfect is True


def test_quotient_mismatch(a5, a5_group):
    with pytest.raises(QuotientMismatch):
        build_plus_complex(a5, a5_group, KernelSpec((a5.word("a"),)))
    z2 = todd_coxeter(parse_presentation("gens: a, b; rels: a^2, b"))
    with pytest.raises(QuotientMismatch):
        build_plus_complex(a5, z2, KernelSpec((a5.word("b"),)))


def test_verify_decomposition(a5z2, a5z2_kernel, a5z2_quotient):
    e = todd_coxeter(a5z2)
    sp = reidemeister_schreier(a5z2, a5z2_quotient)
    decs = tuple(commutator_decompose(k, sp).pairs for k in a5z2_kernel)
    ks = KernelSpec(a5z2_kernel, decs)
    assert verify_kernel_words(ks, a5z2_quotient, check_in=e)["checked"] == ["a", "b", "c"]
    for w in ks.attaching_words():
        assert not any(fox_derivative(w, a5z2_quotient))


def test_verify_rejects_nonkernel_letter(a5z2, a5z2_kernel, a5z2_quotient):
    c = a5z2.word("c")
    bad = KernelSpec(a5z2_kernel, (((c, a5z2.word("a")),), ((a5z2.word("a"), a5z2.word("b")),)))
    with pytest.raises(KernelVerificationError) as info:
        verify_kernel_words(bad, a5z2_quotient)
    assert info.value.check == "a"


def test_verify_rejects_wrong_product(a5z2, a5z2_kernel, a5z2_quotient):
    e = todd_coxeter(a5z2)
    a, b = a5z2.word("a"), a5z2.word("b")
    ks = KernelSpec(a5z2_kernel, (((a, b),), ((a, b),)))
    with pytest.raises(KernelVerificationError) as info:
        verify_kernel_words(ks, a5z2_quotient, check_in=e)
    assert info.value.check == "c"


def test_vacuous():
    r = trivial_realization(["a"])
    assert verify_kernel_words(KernelSpec(()), r)["r"] == 0


def test_random_commutator_products_have_zero_fox(a5z2_quotient, rng):
    q = a5z2_quotient
    # every word here maps to the identity of Z/2 = <c>
    kernel_gens = [Word([1]), Word([2]), Word([3, 1, -3])]
    for _ in range(100):
        w = Word()
        for _ in range(rng.randint(1, 3)):
            a = Word()
            b = Word()
            for _ in range(rng.randint(1, 3)):
                a = a * rng.choice(kernel_gens) * random_word(rng, 3, 3) ** 2
                b = b * rng.choice(kernel_gens)
            w = w * commutator(a, b)
        assert q.is_trivial(w)
        assert not any(fox_derivative(w, q))
