"""Command line interface: ``drep <subcommand> ...``.

Algebra arguments are file paths or the names of bundled examples
(``drep examples list``). The internal-degree cap for module computations
defaults to the DREP_MAX_DEGREE environment variable (6 if unset).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from importlib import resources
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from .cohomology import Complex
from .expand import InvalidResolutionError, expand
from .gcalg import format_cpoly
from .groebner import InhomogeneousError
from .ncalg import Resolution, validate_resolution
from .parser import ParseError, parse_algebra, parse_rep
from .tangent import InvalidRepresentationError, Representation, check_p2, tangent_cohomology, validate_rep

class CLIError(Exception):
    pass


# ---------------------------------------------------------------- bundled examples


def example_names() -> List[str]:
    data = resources.files("drep") / "data"
    return sorted(p.name[:-4] for p in data.iterdir() if p.name.endswith(".alg"))


def example_text(name: str) -> str:
    name = name[:-4] if name.endswith(".alg") else name
    if name not in example_names():
        raise CLIError(f"no bundled example named {name!r}")
    return (resources.files("drep") / "data" / f"{name}.alg").read_text(encoding="utf-8")


def load_algebra(arg: str) -> Resolution:
    path = Path(arg)
    if path.is_file():
        text, source = path.read_text(encoding="utf-8"), str(path)
    else:
        stem = path.name
        try:
            text, source = example_text(stem), stem
        except CLIError:
            raise CLIError(f"{arg}: no such file or bundled example") from None
    res = parse_algebra(text, source)
    report = validate_resolution(res)
    if not report.ok:
        raise CLIError(f"{source}: invalid resolution: " + "; ".join(report.lines()))
    return res


# ---------------------------------------------------------------- output helpers


def _vector_str(vec, labels: Sequence[str]) -> str:
    parts = []
    for p, lab in zip(vec, labels):
        if p.is_zero():
            continue
        s = str(p)
        if len(p.terms) > 1:
            s = f"({s})"
        parts.append(lab if s == "1" else f"-{lab}" if s == "-1" else f"{s}*{lab}")
    return " + ".join(parts).replace("+ -", "- ") or "0"


def emit(doc: Dict, fmt: str, text_lines: List[str]) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    return "\n".join(text_lines) + "\n"


def _hname(m: int) -> str:
    return "H^0" if m == 0 else f"H^-{m}"


def _max_degree(arg: Optional[int]) -> int:
    if arg is not None:
        return arg
    return int(os.environ.get("DREP_MAX_DEGREE", "6"))


# ---------------------------------------------------------------- subcommands


def cmd_validate(args) -> str:
    path = Path(args.file)
    text = path.read_text(encoding="utf-8") if path.is_file() else example_text(path.name)
    res = parse_algebra(text, args.file)
    report = validate_resolution(res)
    doc = {"algebra": res.name, "valid": report.ok,
           "violations": [{"kind": v.kind, "generator": v.generator, "detail": v.detail}
                          for v in report.violations]}
    out = emit(doc, args.format, [f"{args.file}: " + line for line in report.lines()])
    if not report.ok:
        raise CLIError(out.rstrip())
    return out


def cmd_expand(args) -> str:
    res = load_algebra(args.file)
    ea = expand(res, args.n)
    variables = [{"name": v.name, "degree": v.degree} for v in ea.variables]
    diffs = {}
    for v in ea.variables:
        p = ea.presentation.diff.get(v.name)
        if p is not None and not p.is_zero():
            diffs[v.name] = format_cpoly(p)
    lines = [f"R_{args.n} for {res.name or args.file}: {len(ea.variables)} variables"]
    by_deg: Dict[int, List[str]] = {}
    for v in ea.variables:
        by_deg.setdefault(v.degree, []).append(v.name)
    for deg in sorted(by_deg, reverse=True):
        lines.append(f"degree {deg}: " + ", ".join(by_deg[deg]))
    for name, s in diffs.items():
        lines.append(f"d {name} = {s}")
    doc = {"n": args.n, "algebra": res.name, "variables": variables, "differentials": diffs}
    return emit(doc, args.format, lines)


def _complex(args) -> Complex:
    res = load_algebra(args.file)
    return Complex(expand(res, args.n), modulus=getattr(args, "modulus", 0) or 0)


def cmd_h(args) -> str:
    cx = _complex(args)
    m = args.degree
    if m < 0:
        raise CLIError("--degree is the cohomological degree m of H^{-m}, m >= 0")
    cap = _max_degree(args.max_internal_degree) if cx.homogeneous else None
    pres = cx.h_presentation(m, cap if m > 0 else None)
    labels = [f"g{i + 1}" for i in range(pres.ngens)]
    gens = []
    field = f"GF({args.modulus})" if args.modulus else "Q"
    lines = [f"{_hname(m)} of R_{args.n} over S = {field}[{', '.join(cx.ring.names)}]"]
    if cap is not None and m > 0:
        lines.append(f"internal degrees up to {cap}")
    for flag in pres.flags:
        lines.append(f"note: {flag}")
    kind = "minimal generators" if pres.is_homogeneous() else "generators"
    lines.append(f"{kind}: {pres.ngens}")
    for i, rep in enumerate(pres.generator_labels or []):
        rep_s = format_cpoly(cx.from_vector(rep, m))
        w = pres.shifts[i] if pres.shifts is not None else None
        gens.append({"name": labels[i], "internal_degree": w, "representative": rep_s})
        weight = f" [weight {w}]" if w is not None else ""
        lines.append(f"  {labels[i]}{weight} = {rep_s}")
    rels = [_vector_str(v, labels) for v in pres.relations]
    lines.append(f"relations: {len(rels)}")
    lines.extend(f"  {r}" for r in rels)
    doc = {"degree": -m, "n": args.n, "ring": list(cx.ring.names), "max_internal_degree": cap,
           "flags": list(pres.flags), "generators": gens, "relations": rels}
    return emit(doc, args.format, lines)


def cmd_hilbert(args) -> str:
    cx = _complex(args)
    if not cx.homogeneous:
        raise CLIError("Hilbert functions need a homogeneous differential")
    hf = cx.hilbert_function(args.degree, args.up_to)
    doc = {"degree": -args.degree, "n": args.n, "hilbert_function": hf}
    lines = [f"dim {_hname(args.degree)}_d for d = 0..{args.up_to}:", " ".join(str(v) for v in hf)]
    return emit(doc, args.format, lines)


def cmd_vanish(args) -> str:
    cx = _complex(args)
    v = cx.vanishing(args.degree)
    doc = {"degree": -args.degree, "n": args.n, "vanishes": v}
    return emit(doc, args.format, [f"{_hname(args.degree)} of R_{args.n} {'vanishes' if v else 'is nonzero'}"])


def cmd_tangent(args) -> str:
    res = load_algebra(args.file)
    n, values = parse_rep(Path(args.rep).read_text(encoding="utf-8"), args.rep)
    if n != args.n:
        raise CLIError(f"--n {args.n} but the representation file has n = {n}")
    rep = Representation(n, values)
    report = validate_rep(res, rep)
    if not report.ok:
        raise CLIError("invalid representation: " + "; ".join(report.lines()))
    dims = tangent_cohomology(res, rep)
    lines = [f"T^{i} = {d}" for i, d in dims.items()]
    doc: Dict = {"n": n, "tangent": {str(i): d for i, d in dims.items()}}
    if args.koszul is not None:
        p2 = check_p2(res, rep, args.koszul)
        lines.append("Hochschild cross-check: " + ("agree" if p2.ok else "DISAGREE"))
        lines.extend("  " + ln for ln in p2.lines())
        doc["hochschild"] = {"z1": p2.hochschild.z1,
                             "hh": {str(p): d for p, d in p2.hochschild.hh.items()},
                             "agree": p2.ok}
    return emit(doc, args.format, lines)


def cmd_examples(args) -> str:
    if args.action == "list":
        names = example_names()
        return emit({"examples": names}, args.format, names)
    if not args.name:
        raise CLIError("examples show needs a NAME")
    text = example_text(args.name)
    return emit({"name": args.name, "text": text}, args.format, [text.rstrip("\n")])


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="drep", description="Derived representation schemes of DG algebras.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, needs_n=True):
        sp.add_argument("file", help="algebra file or bundled example name")
        if needs_n:
            sp.add_argument("--n", type=int, required=True, help="matrix size")
        sp.add_argument("--format", choices=("text", "json"), default="text")

    sp = sub.add_parser("validate", help="check an algebra file")
    common(sp, needs_n=False)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("expand", help="print the expanded algebra R_n")
    common(sp)
    sp.set_defaults(func=cmd_expand)

    sp = sub.add_parser("h", help="presentation of H^{-m}")
    common(sp)
    sp.add_argument("--degree", type=int, required=True, help="m, for H^{-m}")
    sp.add_argument("--max-internal-degree", type=int, default=None)
    sp.add_argument("--modulus", type=int, default=0, help="compute modulo this prime (pre-check)")
    sp.set_defaults(func=cmd_h)

    sp = sub.add_parser("hilbert", help="Hilbert function of H^{-m}")
    common(sp)
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--up-to", type=int, required=True)
    sp.add_argument("--modulus", type=int, default=0)
    sp.set_defaults(func=cmd_hilbert)

    sp = sub.add_parser("vanish", help="decide whether H^{-m} = 0")
    common(sp)
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--modulus", type=int, default=0)
    sp.set_defaults(func=cmd_vanish)

    sp = sub.add_parser("tangent", help="derived tangent spaces at a representation")
    common(sp)
    sp.add_argument("--rep", required=True, help="representation file")
    sp.add_argument("--koszul", type=int, default=None, metavar="D",
                    help="cross-check against Hochschild cohomology of k[x_1..x_D]")
    sp.set_defaults(func=cmd_tangent)

    sp = sub.add_parser("examples", help="list or show bundled algebras")
    sp.add_argument("action", choices=("list", "show"))
    sp.add_argument("name", nargs="?")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_examples)
    return p


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=stderr)
    try:
        stdout.write(args.func(args))
    except (CLIError, ParseError, InvalidResolutionError, InvalidRepresentationError,
            InhomogeneousError, OSError, ValueError) as exc:
        stderr.write(f"drep: error: {exc}\n")
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
