"""``plusctl`` command line.

Exit status 0 on success, 1 when an input fails validation, 2 when a
bounded computation (coset enumeration, decomposition search) runs out.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import formats
from .chain import euler_characteristic, homology, homology_all, specialize, split_injection_test
from .errors import PlusctlError, ResourceExhausted, ValidationError
from .extract import (basis_is_unimodular, derive_partial_presentation, round_trip_verify, stabilize,
                      validate_three_complex)
from .fox import cayley_complex
from .kernel import commutator_decompose, is_perfect, reidemeister_schreier
from .obstruct import check_inequality, construct_candidate, deficiency
from .plus import KernelSpec, build_plus_complex, relative_complex
from .realize import todd_coxeter, trivial_realization

COEFFS = ("trivial", "regular")


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise ValidationError(f"cannot read {path}: {err.strerror}") from None


def _is_json(path: str, text: str) -> bool:
    return path.endswith(".json") or text.lstrip().startswith("{")


def _homology_doc(c, coeffs, deg) -> dict:
    doc = {"order": c.realization.order, "ranks": list(c.ranks), "euler_characteristic": euler_characteristic(c)}
    for coeff in coeffs:
        ic = specialize(c, coeff)
        if deg is None:
            groups = homology_all(ic)
            doc[coeff] = {str(k): h.to_json() | {"text": str(h)} for k, h in enumerate(groups)}
        else:
            h = homology(ic, deg)
            doc[coeff] = {str(deg): h.to_json() | {"text": str(h)}}
    return doc


def _homology_text(doc: dict, coeffs) -> list[str]:
    lines = [f"|G| = {doc['order']}, chi = {doc['euler_characteristic']}"]
    for coeff in coeffs:
        if len(coeffs) > 1:
            lines.append(f"[{coeff}]")
        for k, h in doc[coeff].items():
            lines.append(f"H_{k} = {h['text']}")
    return lines


def cmd_homology(args) -> tuple[dict, list[str]]:
    text = _read(args.input)
    if _is_json(args.input, text):
        c = formats.complex_from_json(formats.load_json(text))
    else:
        # kernel lines, if present, select the quotient E/K for the coefficients
        p, ks, _ = formats.parse_presentation_with_kernel(text)
        c = cayley_complex(p, todd_coxeter(p.with_relators(ks.kernel_words), args.max_cosets))
    if args.deg is not None and args.deg < 0:
        raise ValidationError("--deg must be nonnegative")
    coeffs = COEFFS if args.coeff == "both" else (args.coeff,)
    doc = _homology_doc(c, coeffs, args.deg)
    return doc, _homology_text(doc, coeffs)


def _load_plus_inputs(args):
    p, ks, asserts = formats.parse_presentation_with_kernel(_read(args.input))
    if asserts:
        raise ValidationError("assert lines are only meaningful for obstruct")
    if args.kernel:
        if ks.kernel_words:
            raise ValidationError("kernel given both inline and with --kernel")
        ks = formats.parse_kernel_spec(_read(args.kernel), p)
    return p, ks


def cmd_plus(args) -> tuple[dict, list[str]]:
    p, ks = _load_plus_inputs(args)
    quotient = todd_coxeter(p.with_relators(ks.kernel_words), args.max_cosets)
    if args.decompose and ks.decompositions is None:
        sp = reidemeister_schreier(p, quotient)
        ks = KernelSpec(ks.kernel_words, tuple(commutator_decompose(k, sp).pairs for k in ks.kernel_words))
    pc = build_plus_complex(p, quotient, ks, max_cosets=args.max_cosets)
    doc = formats.plus_to_json(pc)
    chi = euler_characteristic(pc.full)
    rel = relative_complex(pc)
    checks = {
        "chi_equals_one_minus_deficiency": chi == 1 - deficiency(p),
        "split": split_injection_test(pc.full) is not None,
        "relative_acyclic": all(h.is_zero() for coeff in COEFFS
                                for h in homology_all(specialize(rel, coeff), 3)),
    }
    doc["report"] = {"order": quotient.order, "ranks": list(pc.full.ranks), "chi": chi, "checks": checks}
    perfect = {None: "unverified", True: "verified", False: "FAILED"}[pc.perfect]
    lines = [
        f"|G| = {quotient.order}, ranks = {tuple(pc.full.ranks)}",
        f"chi = {chi}",
        f"perfectness: {perfect}" + (f" (H_1(K) = {pc.perfectness.h1})" if pc.perfectness else ""),
    ] + [f"{name}: {'ok' if ok else 'FAILED'}" for name, ok in checks.items()]
    return doc, lines


def cmd_perfect(args) -> tuple[dict, list[str]]:
    p, ks = _load_plus_inputs(args)
    if ks.kernel_words:
        quotient = todd_coxeter(p.with_relators(ks.kernel_words), args.max_cosets)
    else:
        quotient = trivial_realization(p.generators)
    sp = reidemeister_schreier(p, quotient)
    cert = is_perfect(sp)
    doc = {"order": quotient.order, "schreier_generators": sp.presentation.n,
           "schreier_relators": sp.presentation.m} | cert.to_json()
    lines = [
        f"|G| = {quotient.order}, kernel presentation: {sp.presentation.n} generators, {sp.presentation.m} relators",
        f"H_1(K) = {cert.h1}",
        "perfect" if cert.perfect else "not perfect",
    ]
    return doc, lines


def cmd_extract(args) -> tuple[dict, list[str]]:
    x = formats.cell_complex_from_json(formats.load_json(_read(args.input)), args.max_cosets)
    report = validate_three_complex(x, args.max_cosets)
    report.raise_for_failures()
    s = stabilize(x, report.phi)
    result = derive_partial_presentation(s)
    unimodular = basis_is_unimodular(s, result)
    if not unimodular:
        raise AssertionError("extracted basis is not unimodular")
    rt = round_trip_verify(x, result, args.max_cosets)
    doc = result.to_json() | {"order": x.quotient.order, "round_trip": rt}
    lines = [
        f"|G| = {x.quotient.order}",
        f"partial presentation: {result.eps}",
        f"kernel: {', '.join(doc['kernel'])}",
        f"round trip: chi = {rt['rebuilt']['chi']}, homology matches",
    ]
    return doc, lines


def cmd_obstruct(args) -> tuple[dict, list[str]]:
    s = formats.parse_ses_spec(_read(args.input), args.max_cosets)
    report = check_inequality(s)
    doc = {"order": s.quotient.order, "report": report.to_json()}
    lines = [
        f"|G| = {s.quotient.order}, Def(eps) = {report.def_eps}",
        f"rk_G(K) in [{report.rk_lower}, {report.rk_upper}]",
        f"verdict: {report.verdict}",
    ]
    if report.chain:
        lines.append(report.chain["statement"])
    lines += [f"note: {n}" for n in report.notes]
    if args.construct:
        pc, cand = construct_candidate(s, args.max_cosets)
        doc["candidate"] = cand | {"complex": formats.plus_to_json(pc)}
        lines.append(f"candidate: ranks = {tuple(pc.full.ranks)}, chi = {cand['chi']}, perfectness verified")
    return doc, lines


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="plusctl", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("input", help="input file")
        sp.add_argument("--max-cosets", type=int, default=None,
                        help="coset enumeration limit (default: $PLUSCTL_MAX_COSETS or 1000000)")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--out", help="write the JSON document to this path")
        sp.add_argument("--seed", type=int, default=None,
                        help="accepted for reproducible scripting; every command is deterministic")
        return sp

    h = common(sub.add_parser("homology", help="homology of a Cayley complex or a saved complex"))
    h.add_argument("--coeff", choices=COEFFS + ("both",), default="trivial")
    h.add_argument("--deg", type=int, default=None)
    h.set_defaults(func=cmd_homology)

    p = common(sub.add_parser("plus", help="build the plus complex along kernel words"))
    p.add_argument("--kernel", help="kernel spec file")
    p.add_argument("--decompose", action="store_true",
                   help="search commutator decompositions and include attaching words")
    p.set_defaults(func=cmd_plus)

    f = common(sub.add_parser("perfect", help="certify perfectness of the kernel"))
    f.add_argument("--kernel", help="kernel spec file (default: K = E)")
    f.set_defaults(func=cmd_perfect)

    e = common(sub.add_parser("extract", help="partial presentation from a 3-complex"))
    e.set_defaults(func=cmd_extract)

    o = common(sub.add_parser("obstruct", help="deficiency inequality report"))
    o.add_argument("--construct", action="store_true", help="also build the candidate plus complex")
    o.set_defaults(func=cmd_obstruct)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.max_cosets is not None and args.max_cosets < 1:
        print("error: --max-cosets must be positive", file=sys.stderr)
        return 1
    try:
        doc, lines = args.func(args)
    except ResourceExhausted as err:
        print(f"error: {type(err).__name__}: {err}", file=sys.stderr)
        return 2
    except PlusctlError as err:
        print(f"error: {type(err).__name__}: {err}", file=sys.stderr)
        return 1
    text = formats.dumps(doc)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    if args.format == "text":
        print("\n".join(lines))
    elif not args.out:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
