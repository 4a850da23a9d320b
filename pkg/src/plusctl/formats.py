"""Text and JSON file formats used by the command line."""

from __future__ import annotations

import json
import re

from .chain import AlgebraicComplex
from .errors import ValidationError
from .extract import CellThreeComplex
from .groupring import RingMatrix
from .obstruct import SesSpec
from .plus import KernelSpec, PlusComplex
from .realize import FiniteRealization, todd_coxeter
from .words import Presentation, Word, parse_pairs, parse_presentation, parse_word_list

_DECOMP = re.compile(r"decomp\s+(\d+)\s*:(.*)", re.S)
_ASSERT = re.compile(r"assert\s+(defE|defG)\s*:\s*(-?\d+)\s*")


def dumps(doc) -> str:
    """Canonical JSON text: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _split_directives(text: str) -> tuple[str, list[tuple[int, str]]]:
    """Separate ``kernel:``/``decomp``/``assert`` lines from presentation text."""
    body, directives = [], []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped.startswith(("kernel:", "decomp", "assert")):
            directives.append((lineno, stripped))
        else:
            body.append(line)
    return "\n".join(body), directives


def _parse_kernel_directives(directives, gens) -> tuple[list[Word], dict[int, list], dict[str, int]]:
    kernel: list[Word] | None = None
    decomps: dict[int, list] = {}
    asserts: dict[str, int] = {}
    for lineno, line in directives:
        try:
            if line.startswith("kernel:"):
                if kernel is not None:
                    raise ValidationError("more than one kernel line")
                kernel = parse_word_list(line[len("kernel:"):], gens)
            elif line.startswith("decomp"):
                m = _DECOMP.fullmatch(line)
                if not m:
                    raise ValidationError("expected 'decomp i: (A,B)(A,B)...'")
                i = int(m.group(1))
                if i in decomps:
                    raise ValidationError(f"duplicate decomposition {i}")
                decomps[i] = parse_pairs(m.group(2), gens)
            else:
                m = _ASSERT.fullmatch(line)
                if not m:
                    raise ValidationError("expected 'assert defE: n' or 'assert defG: n'")
                asserts[m.group(1)] = int(m.group(2))
        except ValidationError as err:
            raise ValidationError(f"line {lineno}: {err}") from None
    return kernel or [], decomps, asserts


def _kernel_spec(kernel, decomps) -> KernelSpec:
    if not decomps:
        return KernelSpec(tuple(kernel))
    if sorted(decomps) != list(range(1, len(kernel) + 1)):
        raise ValidationError("decomposition lines must be numbered 1..r, one per kernel word")
    return KernelSpec(tuple(kernel), tuple(tuple(decomps[i]) for i in range(1, len(kernel) + 1)))


def parse_kernel_spec(text: str, p: Presentation) -> KernelSpec:
    """``kernel: w1, w2, ...`` optionally followed by ``decomp i: (A,B)...`` lines."""
    rest, directives = _split_directives(text)
    if rest.strip():
        raise ValidationError("unexpected text in kernel file")
    kernel, decomps, asserts = _parse_kernel_directives(directives, p.generators)
    if asserts:
        raise ValidationError("assert lines belong in an obstruction file")
    return _kernel_spec(kernel, decomps)


def parse_presentation_with_kernel(text: str) -> tuple[Presentation, KernelSpec, dict[str, int]]:
    """A presentation followed by optional kernel, decomp and assert lines."""
    body, directives = _split_directives(text)
    p = parse_presentation(body)
    kernel, decomps, asserts = _parse_kernel_directives(directives, p.generators)
    return p, _kernel_spec(kernel, decomps), asserts


def parse_ses_spec(text: str, max_cosets: int | None = None) -> SesSpec:
    p, ks, asserts = parse_presentation_with_kernel(text)
    return SesSpec.build(p, ks.kernel_words, asserts.get("defE"), asserts.get("defG"), max_cosets)


def format_kernel_spec(p: Presentation, ks: KernelSpec) -> str:
    lines = ["kernel: " + ", ".join(p.format_word(k) for k in ks.kernel_words)]
    for i, dec in enumerate(ks.decompositions or (), start=1):
        pairs = "".join(f"({p.format_word(a)}, {p.format_word(b)})" for a, b in dec)
        lines.append(f"decomp {i}: {pairs}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- JSON documents


def plus_to_json(pc: PlusComplex) -> dict:
    p = pc.presentation
    doc = {
        "kind": "plus_complex",
        "presentation": str(p),
        "kernel": [p.format_word(k) for k in pc.kernel.kernel_words],
        "complex": pc.full.to_json(),
        "perfectness": None if pc.perfectness is None else pc.perfectness.to_json(),
    }
    if pc.kernel.decompositions is not None:
        doc["decompositions"] = [[[p.format_word(a), p.format_word(b)] for a, b in dec]
                                 for dec in pc.kernel.decompositions]
        attaching = pc.kernel.attaching_words()
        doc["cell_complex"] = {
            "presentation": str(p.with_relators(attaching)),
            "quotient": pc.realization.to_json(),
            "d3": pc.full.boundaries[2].to_json(),
        }
    return doc


def cell_complex_to_json(x: CellThreeComplex) -> dict:
    return {
        "kind": "cell_complex",
        "presentation": str(x.base_presentation),
        "quotient": x.quotient.to_json(),
        "d3": x.d3.to_json(),
    }


def cell_complex_from_json(doc: dict, max_cosets: int | None = None) -> CellThreeComplex:
    if "cell_complex" in doc:
        doc = doc["cell_complex"]
    try:
        p = parse_presentation(doc["presentation"])
        q = doc.get("quotient")
        quotient = todd_coxeter(p, max_cosets) if q is None else FiniteRealization.from_json(q)
        d3 = RingMatrix.from_json(doc["d3"], quotient)
    except KeyError as err:
        raise ValidationError(f"cell complex document lacks field {err}") from None
    return CellThreeComplex(p, quotient, d3)


def complex_from_json(doc: dict) -> AlgebraicComplex:
    """Accept a plus complex document or a bare algebraic complex."""
    if "complex" in doc:
        doc = doc["complex"]
    try:
        return AlgebraicComplex.from_json(doc)
    except KeyError as err:
        raise ValidationError(f"complex document lacks field {err}") from None


def load_json(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise ValidationError(f"invalid JSON: {err}") from None
    if not isinstance(doc, dict):
        raise ValidationError("JSON document must be an object")
    return doc
