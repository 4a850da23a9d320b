"""Acceptance criteria, one test per criterion, each under its time limit.

Run ``pytest tests/test_acceptance.py`` (or this file directly) to see one
PASS/FAIL line per criterion.
"""

import random
import sys
import time
from pathlib import Path

import pytest

from plusctl.chain import euler_characteristic, homology_all, specialize, split_injection_test
from plusctl.cli import main as cli_main
from plusctl.extract import (CellThreeComplex, NotCohomologicallyTwoDimensional, RoundTripMismatch,
                             derive_partial_presentation, extract, round_trip_verify, stabilize,
                             three_complex_from_plus, validate_three_complex)
from plusctl.fox import cayley_complex, fox_derivative, fundamental_defect
from plusctl.groupring import RingElement, RingMatrix
from plusctl.kernel import commutator_decompose, is_perfect, reidemeister_schreier
from plusctl.obstruct import SesSpec, check_inequality, construct_candidate, deficiency
from plusctl.plus import (KernelSpec, KernelVerificationError, build_plus_complex, relative_complex,
                          verify_kernel_words)
from plusctl.realize import todd_coxeter, trivial_realization
from plusctl.words import Word, commutator, parse_presentation

SAMPLES = Path(__file__).resolve().parent.parent / "samples"
A5 = "gens: a, b; rels: a^2, b^3, (a b)^5"
A5Z2 = "gens: a, b, c; rels: a^2, b^3, (a b)^5, c^2, [a, c], [b, c]"
DEFAULT_SEED = 20240607

RESULTS: dict[int, str] = {}


def random_word(rng, n, length):
    return Word(rng.choice((1, -1)) * rng.randint(1, n) for _ in range(length))


def a5z2_plus(with_decompositions=False):
    e = parse_presentation(A5Z2)
    ks = (e.word("a"), e.word("b"))
    q = todd_coxeter(e.with_relators(ks))
    decs = None
    if with_decompositions:
        sp = reidemeister_schreier(e, q)
        decs = tuple(commutator_decompose(k, sp).pairs for k in ks)
    return build_plus_complex(e, q, KernelSpec(ks, decs))


def plus_corpus():
    a5 = parse_presentation(A5)
    return {
        "A5 over trivial quotient": build_plus_complex(
            a5, trivial_realization(a5.generators), KernelSpec((a5.word("a"), a5.word("b")))),
        "A5 x Z/2 over Z/2": a5z2_plus(),
        "r = 0": build_plus_complex(a5, todd_coxeter(a5), KernelSpec(())),
    }


def homology_strings(c, coeff, top=3):
    return [str(h) for h in homology_all(specialize(c, coeff), top)]


# ---------------------------------------------------------------- criteria


def criterion_1(seed):
    p = parse_presentation(A5)
    r = todd_coxeter(p)
    rng = random.Random(seed)
    for _ in range(1000):
        w = random_word(rng, 2, rng.randint(0, 30))
        assert not fundamental_defect(w, r), w


def criterion_2(seed):
    p = parse_presentation("gens: a; rels: a^2")
    c = cayley_complex(p, todd_coxeter(p))
    assert homology_strings(c, "trivial", 2) == ["Z", "Z/2", "0"]
    assert homology_strings(c, "regular", 2) == ["Z", "0", "Z"]
    # direct linear algebra on the 2x2 regular matrices
    d1 = specialize(c, "regular").boundaries[0]
    d2 = specialize(c, "regular").boundaries[1]
    assert d1 == [[-1, 1], [1, -1]] and d2 == [[1, 1], [1, 1]]


def criterion_3(seed):
    rng = random.Random(seed)
    for text in (A5, "gens: a, b; rels: a^2, b^3, (a b)^2"):
        r = todd_coxeter(parse_presentation(text))
        assert r.order <= 60

        def trivial_word():
            u = random_word(rng, 2, rng.randint(1, 10))
            return u * r.words[r.image_of_word(u)].inverse()

        for _ in range(250):
            w = Word()
            for _ in range(rng.randint(1, 3)):
                a, b = trivial_word(), trivial_word()
                assert r.is_trivial(a) and r.is_trivial(b)
                w = w * commutator(a, b)
            assert not any(fox_derivative(w, r))


def criterion_4(seed):
    for name, pc in plus_corpus().items():
        start = time.perf_counter()
        rel = relative_complex(pc)
        for coeff in ("trivial", "regular"):
            assert all(h == "0" for h in homology_strings(rel, coeff)), name
        assert time.perf_counter() - start < 5, name


def criterion_5(seed):
    for name, pc in plus_corpus().items():
        for coeff in ("trivial", "regular"):
            assert homology_strings(pc.full, coeff) == homology_strings(pc.base, coeff), name
        assert split_injection_test(pc.full) is not None, name
        assert euler_characteristic(pc.full) == 1 - deficiency(pc.presentation), name


def criterion_6(seed):
    a5 = parse_presentation(A5)
    cert = is_perfect(reidemeister_schreier(a5, trivial_realization(a5.generators)))
    assert cert.perfect and list(cert.invariant_factors) == [1, 1] and str(cert.h1) == "0"
    cert = is_perfect(parse_presentation("gens: a; rels: a^2"))
    assert not cert.perfect and str(cert.h1) == "Z/2"
    p = parse_presentation("gens: a, b; rels: b^2")
    q = todd_coxeter(p.with_relators([p.word("a")]))
    assert q.order == 2
    cert = is_perfect(reidemeister_schreier(p, q))
    assert not cert.perfect and str(cert.h1) == "Z^2"


def criterion_7(seed):
    x = three_complex_from_plus(a5z2_plus(with_decompositions=True))
    report = validate_three_complex(x)
    assert report.ok
    result = derive_partial_presentation(stabilize(x, report.phi))
    assert result.eps.n == 5
    h1 = homology_all(specialize(cayley_complex(result.eps, result.quotient), "regular"), 1)[1]
    assert h1.is_zero()
    rt = round_trip_verify(x, result)
    assert rt["match"] and rt["input"] == rt["rebuilt"]
    assert set(rt["input"]) == {"chi", "trivial", "regular"}
    assert len(rt["input"]["trivial"]) == 4


def criterion_8(seed):
    # non-split d3
    p = parse_presentation("gens: a; rels: a, a")
    r = trivial_realization(p.generators)
    d3 = RingMatrix(r, 2, 1, {(0, 0): RingElement(r, {0: 2}), (1, 0): RingElement(r, {0: -2})})
    with pytest.raises(NotCohomologicallyTwoDimensional):
        validate_three_complex(CellThreeComplex(p, r, d3)).raise_for_failures()
    # corrupted d3 against a correct extraction
    x = three_complex_from_plus(a5z2_plus(with_decompositions=True))
    result, _ = extract(x)
    q = x.quotient
    scale = RingMatrix(q, 2, 2, {(0, 0): RingElement(q, {0: 2}), (1, 1): RingElement.one(q)})
    with pytest.raises(RoundTripMismatch):
        round_trip_verify(CellThreeComplex(x.base_presentation, q, x.d3 @ scale), result)
    # decomposition letter outside the kernel
    a, b, c = Word([1]), Word([2]), Word([3])
    bad = KernelSpec((a, b), (((c, a),), ((a, b),)))
    with pytest.raises(KernelVerificationError) as info:
        verify_kernel_words(bad, q)
    assert info.value.check == "a"


def criterion_9(seed):
    e = parse_presentation(A5Z2)
    ks = (e.word("a"), e.word("b"))
    synthetic = SesSpec.build(e, ks, asserted_def_E=2, asserted_def_G=0)
    report = check_inequality(synthetic, bounds=(0, 0))
    assert report.inequality_holds is True and report.conditional
    chain = report.chain
    # 1 - Def(G') >= 1 - Def(E/K) > 1 - Def(E)
    assert chain["applies"] and chain["one_minus_def_quotient"] == 1 and chain["chi_plus"] == -1
    assert chain["one_minus_def_quotient"] > chain["chi_plus"]
    asserted = check_inequality(SesSpec.build(e, ks, asserted_def_E=-4, asserted_def_G=0))
    assert asserted.inequality_holds is False and asserted.verdict == "no obstruction exhibited"
    pc, cand = construct_candidate(SesSpec.build(e, ks))
    assert cand["chi"] == 4 == euler_characteristic(pc.full)
    assert cand["perfectness"]["perfect"] and cand["perfectness"]["h1"] == "0"


def criterion_10(seed, tmp_path):
    plus_json = tmp_path / "plus.json"
    assert cli_main(["plus", str(SAMPLES / "a5xz2.pres"), "--kernel", str(SAMPLES / "a5xz2.kernel"),
                     "--decompose", "--format", "json", "--out", str(plus_json), "--seed", str(seed)]) == 0
    commands = [
        ["homology", str(SAMPLES / "rp2.pres"), "--coeff", "both"],
        ["homology", str(plus_json), "--coeff", "both"],
        ["plus", str(SAMPLES / "a5.pres"), "--kernel", str(SAMPLES / "a5.kernel")],
        ["plus", str(SAMPLES / "a5xz2.pres"), "--kernel", str(SAMPLES / "a5xz2.kernel"), "--decompose"],
        ["perfect", str(SAMPLES / "a5.pres")],
        ["extract", str(plus_json)],
        ["obstruct", str(SAMPLES / "a5xz2.ses"), "--construct"],
    ]
    for k, cmd in enumerate(commands):
        outputs = []
        for run in range(2):
            out = tmp_path / f"out{k}_{run}.json"
            assert cli_main(cmd + ["--format", "json", "--out", str(out), "--seed", str(seed)]) == 0, cmd
            outputs.append(out.read_bytes())
        assert outputs[0] == outputs[1], cmd


CRITERIA = {
    1: ("Fox fundamental identity on 1000 words", criterion_1, 10),
    2: ("RP2 homology", criterion_2, 1),
    3: ("commutator products have zero Fox vector", criterion_3, 10),
    4: ("relative complexes acyclic", criterion_4, 15),
    5: ("plus complex homology, splitting, Euler characteristic", criterion_5, None),
    6: ("perfectness certificates", criterion_6, 5),
    7: ("extraction round trip", criterion_7, 60),
    8: ("negative controls", criterion_8, None),
    9: ("deficiency arithmetic and candidate", criterion_9, 30),
    10: ("byte-identical reruns", criterion_10, None),
}


def _run(number, seed, tmp_path):
    title, fn, limit = CRITERIA[number]
    start = time.perf_counter()
    try:
        fn(seed, tmp_path) if number == 10 else fn(seed)
    except BaseException as err:
        RESULTS[number] = f"criterion {number:2d} FAIL  {title}: {type(err).__name__} {err}"
        raise
    elapsed = time.perf_counter() - start
    if limit is not None and elapsed >= limit:
        RESULTS[number] = f"criterion {number:2d} FAIL  {title}: {elapsed:.2f} s >= {limit} s"
        raise AssertionError(RESULTS[number])
    RESULTS[number] = f"criterion {number:2d} PASS  {title} ({elapsed:.2f} s)"


@pytest.fixture
def acceptance_seed(request):
    return request.config.getoption("--seed", default=DEFAULT_SEED)


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, acceptance_seed, tmp_path):
    _run(number, acceptance_seed, tmp_path)


if __name__ == "__main__":
    import tempfile

    failed = 0
    for number in sorted(CRITERIA):
        with tempfile.TemporaryDirectory() as tmp:
            try:
                _run(number, DEFAULT_SEED, Path(tmp))
            except BaseException:
                failed += 1
        print(RESULTS[number])
    sys.exit(1 if failed else 0)
