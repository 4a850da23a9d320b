import pytest
from hypothesis import given, settings, strategies as st

from helpers import sympy_invariants
from plusctl.chain import (AlgebraicComplex, HomologyGroup, IntegerComplex, check_boundaries_vanish,
                           euler_characteristic, exactness_check, homology, homology_all, specialize,
                           split_injection_test, zero_complex)
from plusctl.errors import ValidationError
from plusctl.fox import cayley_complex
from plusctl.groupring import RingElement, RingMatrix
from plusctl.realize import todd_coxeter, trivial_realization
from plusctl.smith import NoIntegerSolution, matmul, smith_normal_form, solve
from plusctl.words import parse_presentation


def det(m):
    # Bareiss-free cofactor expansion; fine for tiny matrices
    if not m:
        return 1
    return sum((-1) ** j * m[0][j] * det([row[:j] + row[j + 1:] for row in m[1:]]) for j in range(len(m)))


@pytest.fixture(scope="module")
def rp2():
    p = parse_presentation("gens: a; rels: a^2")
    r = todd_coxeter(p)
    return cayley_complex(p, r)


def test_snf_examples():
    assert smith_normal_form([[2, 4], [6, 8]]).diagonal == [2, 4]
    assert smith_normal_form([[1, 0], [0, 1]]).diagonal == [1, 1]
    assert smith_normal_form([[0, 0], [0, 0]]).diagonal == [0, 0]
    assert smith_normal_form([], cols=0).diagonal == []


def test_snf_minor_oracle():
    m = [[2, 4], [6, 8]]
    d = smith_normal_form(m).diagonal
    # d1 = gcd of entries, d1 d2 = |det|
    assert d[0] == 2 and d[0] * d[1] == abs(det(m))


def test_snf_reconstruction(rng):
    for _ in range(200):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        m = [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)]
        f = smith_normal_form(m)
        diag = matmul(matmul(f.left, m), f.right)
        for i in range(rows):
            for j in range(cols):
                expected = f.diagonal[i] if i == j else 0
                assert diag[i][j] == expected
        assert abs(det(f.left)) == 1 and abs(det(f.right)) == 1
        d = f.diagonal
        assert all(x >= 0 for x in d)
        nz = [x for x in d if x]
        assert d[:len(nz)] == nz
        assert all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))
        assert sorted(nz) == sympy_invariants(m)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.lists(st.integers(-20, 20), min_size=3, max_size=3), min_size=1, max_size=4),
       st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_solve_consistent_systems(m, x):
    b = [sum(a * c for a, c in zip(row, x)) for row in m]
    y = solve(m, b)
    assert [sum(a * c for a, c in zip(row, y)) for row in m] == b


def test_solve_rejects():
    with pytest.raises(NoIntegerSolution):
        solve([[2]], [1])


def test_specialize_examples(rp2):
    t = specialize(rp2, "trivial")
    assert t.boundaries == [[[0]], [[2]]]
    r = specialize(rp2, "regular")
    assert r.boundaries == [[[-1, 1], [1, -1]], [[1, 1], [1, 1]]]
    z = zero_complex(trivial_realization(["a"]))
    assert specialize(z, "trivial").ranks == []


def direct_homology_rp2():
    # kernel/image by hand: trivial d1 = [0], d2 = [2]; regular d2 = [[1,1],[1,1]] of rank 1
    trivial = ["Z", "Z/2", "0"]
    regular = ["Z", "0", "Z"]
    return trivial, regular


def test_rp2_homology(rp2):
    trivial, regular = direct_homology_rp2()
    assert [str(h) for h in homology_all(specialize(rp2, "trivial"))] == trivial
    assert [str(h) for h in homology_all(specialize(rp2, "regular"))] == regular


def test_identity_boundary_acyclic():
    r = trivial_realization(["a"])
    c = AlgebraicComplex(r, [1, 1], [RingMatrix.identity(r, 1)])
    assert all(h.is_zero() for h in homology_all(specialize(c, "trivial")))
    assert exactness_check(c, 0) and exactness_check(c, 1)


def test_euler(a5, a5_group):
    assert euler_characteristic(cayley_complex(a5, a5_group)) == 2
    assert euler_characteristic(zero_complex(a5_group)) == 0


def test_euler_cancelling_pair(a5_group):
    r = a5_group
    c = AlgebraicComplex(r, [1, 2, 2], [RingMatrix.zeros(r, 1, 2), RingMatrix.zeros(r, 2, 2)])
    bigger = AlgebraicComplex(r, [1, 2, 3, 1], [RingMatrix.zeros(r, 1, 2), RingMatrix.zeros(r, 2, 3),
                                                 RingMatrix.zeros(r, 3, 1)])
    assert euler_characteristic(c) == euler_characteristic(bigger)


def test_split_examples():
    r = trivial_realization(["a"])
    incl = RingMatrix.zeros(r, 1, 1).vstack(RingMatrix.identity(r, 1))
    c = AlgebraicComplex(r, [1, 1, 2, 1], [RingMatrix.zeros(r, 1, 1), RingMatrix.zeros(r, 1, 2), incl])
    phi = split_injection_test(c)
    assert phi == RingMatrix.zeros(r, 1, 1).hstack(RingMatrix.identity(r, 1))
    two = RingMatrix(r, 1, 1, {(0, 0): RingElement(r, {0: 2})})
    c2 = AlgebraicComplex(r, [0, 0, 1, 1], [RingMatrix.zeros(r, 0, 0), RingMatrix.zeros(r, 0, 1), two])
    assert split_injection_test(c2) is None


def test_split_over_group_ring(a5z2_quotient):
    # 1 + t is a zero divisor; 1 + t - t is a unit disguised by cancellation
    r = a5z2_quotient
    t = RingElement.of(r, 1)
    one = RingElement.one(r)
    for entry, ok in ((one + t, False), (t, True), (one + t + t, False)):
        d = RingMatrix(r, 1, 1, {(0, 0): entry})
        c = AlgebraicComplex(r, [0, 0, 1, 1], [RingMatrix.zeros(r, 0, 0), RingMatrix.zeros(r, 0, 1), d])
        assert (split_injection_test(c) is not None) == ok


def test_rp2_exactness(rp2):
    assert exactness_check(rp2, 1)
    assert not exactness_check(rp2, 2)


def test_complex_validation(a5_group):
    r = a5_group
    with pytest.raises(ValidationError):
        AlgebraicComplex(r, [1, 1], [RingMatrix.identity(r, 2)])
    one = RingMatrix.identity(r, 1)
    with pytest.raises(ValidationError):
        AlgebraicComplex(r, [1, 1, 1], [one, one])


def test_homology_group_invariants():
    assert str(HomologyGroup(2, (2, 4))) == "Z^2 + Z/2 + Z/4"
    assert str(HomologyGroup(0)) == "0"
    with pytest.raises(ValueError):
        HomologyGroup(0, (4, 2))
    assert check_boundaries_vanish(IntegerComplex([1, 1, 1], [[[0]], [[2]]]))
    assert str(homology(IntegerComplex([1, 1, 1], [[[0]], [[2]]]), 1)) == "Z/2"


def test_json_roundtrip(rp2):
    again = AlgebraicComplex.from_json(rp2.to_json())
    assert again.ranks == rp2.ranks and again.boundaries == rp2.boundaries
