"""Free graded noncommutative DG algebras and almost-free resolutions.

Words are tuples of generator indices; coefficients are exact rationals.
The differential follows the graded Leibniz rule

    d(uv) = d(u) v + (-1)^{|u|} u d(v)

with cohomological degrees (generators live in degrees <= 0, d raises
degree by one).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

Word = Tuple[int, ...]


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int

    @property
    def parity(self) -> int:
        return self.degree % 2


class NCPoly:
    """A finite rational combination of words in a fixed generator set."""

    __slots__ = ("gens", "terms")

    def __init__(self, gens: Sequence[Generator], terms: Optional[Mapping[Word, object]] = None):
        self.gens = tuple(gens)
        clean: Dict[Word, Fraction] = {}
        for w, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[tuple(w)] = c
        self.terms = clean

    # -- constructors
    @classmethod
    def zero(cls, gens: Sequence[Generator]) -> "NCPoly":
        return cls(gens)

    @classmethod
    def one(cls, gens: Sequence[Generator]) -> "NCPoly":
        return cls(gens, {(): 1})

    @classmethod
    def gen(cls, gens: Sequence[Generator], name: str) -> "NCPoly":
        names = [g.name for g in gens]
        return cls(gens, {(names.index(name),): 1})

    @classmethod
    def _raw(cls, gens: Tuple[Generator, ...], terms: Dict[Word, Fraction]) -> "NCPoly":
        obj = cls.__new__(cls)
        obj.gens = gens
        obj.terms = {w: c for w, c in terms.items() if c}
        return obj

    # -- queries
    def is_zero(self) -> bool:
        return not self.terms

    def word_degree(self, w: Word) -> int:
        return sum(self.gens[i].degree for i in w)

    def degrees(self) -> set:
        return {self.word_degree(w) for w in self.terms}

    def homogeneous_degree(self) -> Optional[int]:
        """Common degree of all terms; None for zero or inhomogeneous input."""
        degs = self.degrees()
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def sorted_terms(self) -> List[Tuple[Word, Fraction]]:
        # deglex: longer words first, then lexicographic in declaration order
        return sorted(self.terms.items(), key=lambda wc: (-len(wc[0]), wc[0]))

    # -- arithmetic
    def _check(self, other: "NCPoly") -> None:
        if self.gens != other.gens:
            raise ValueError("NCPoly operands are over different generator sets")

    def __add__(self, other: "NCPoly") -> "NCPoly":
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return NCPoly._raw(self.gens, out)

    def __neg__(self) -> "NCPoly":
        return NCPoly._raw(self.gens, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + (-other)

    def scale(self, c) -> "NCPoly":
        c = Fraction(c)
        return NCPoly._raw(self.gens, {w: c * v for w, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, NCPoly):
            return nc_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.gens == other.gens and self.terms == other.terms

    def __hash__(self):
        return hash((self.gens, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"NCPoly({format_ncpoly(self)})"

    def __str__(self) -> str:
        return format_ncpoly(self)


def nc_mul(p: NCPoly, q: NCPoly) -> NCPoly:
    """Concatenation product, extended bilinearly."""
    p._check(q)
    out: Dict[Word, Fraction] = {}
    for u, a in p.terms.items():
        for v, b in q.terms.items():
            w = u + v
            out[w] = out.get(w, 0) + a * b
    return NCPoly._raw(p.gens, out)


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_ncpoly(p: NCPoly) -> str:
    """Render in the algebra-file expression syntax (``2*x*y - y*x``)."""
    if not p.terms:
        return "0"
    parts = []
    for w, c in p.sorted_terms():
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = "*".join(p.gens[i].name for i in w)
        if not body:
            body = _fmt_coeff(mag)
        elif mag != 1:
            body = f"{_fmt_coeff(mag)}*{body}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


@dataclass
class Resolution:
    """Almost-free DG algebra: free on ``generators`` with differential ``diff``.

    ``diff`` maps generator names to NCPolys; missing entries mean d = 0.
    """

    generators: Tuple[Generator, ...]
    diff: Dict[str, NCPoly] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        self.generators = tuple(self.generators)
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        for k, v in self.diff.items():
            if k not in names:
                raise ValueError(f"differential given for unknown generator {k!r}")
            if v.gens != self.generators:
                raise ValueError(f"differential of {k!r} is over a different generator set")

    @property
    def names(self) -> List[str]:
        return [g.name for g in self.generators]

    def index(self, name: str) -> int:
        return self.names.index(name)

    def generator(self, name: str) -> Generator:
        return self.generators[self.index(name)]

    def d_of(self, i: int) -> NCPoly:
        return self.diff.get(self.generators[i].name, NCPoly.zero(self.generators))

    def poly(self, terms: Mapping) -> NCPoly:
        """Build an NCPoly from ``{tuple of names: coeff}``."""
        idx = {g.name: i for i, g in enumerate(self.generators)}
        return NCPoly(self.generators, {tuple(idx[n] for n in w): c for w, c in terms.items()})

    def var(self, name: str) -> NCPoly:
        return NCPoly.gen(self.generators, name)

    def by_degree(self) -> Dict[int, List[Generator]]:
        out: Dict[int, List[Generator]] = {}
        for g in self.generators:
            out.setdefault(g.degree, []).append(g)
        return out

    def negative_generators(self) -> List[Generator]:
        return [g for g in self.generators if g.degree < 0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Resolution):
            return NotImplemented
        if self.generators != other.generators:
            return False
        zero = NCPoly.zero(self.generators)
        return all(self.diff.get(n, zero) == other.diff.get(n, zero) for n in self.names)


def nc_d(p: NCPoly, res: Resolution) -> NCPoly:
    if p.gens != res.generators:
        raise ValueError("polynomial is not over the resolution's generators")
    gens = res.generators
    diffs = [res.d_of(i).terms for i in range(len(gens))]
    out: Dict[Word, Fraction] = {}
    for w, c in p.terms.items():
        prefix_deg = 0
        for i, g in enumerate(w):
            dg = diffs[g]
            if dg:
                coef = c if prefix_deg % 2 == 0 else -c
                head, tail = w[:i], w[i + 1:]
                for mid, a in dg.items():
                    key = head + mid + tail
                    out[key] = out.get(key, 0) + coef * a
            prefix_deg += gens[g].degree
    return NCPoly._raw(gens, out)


@dataclass
class Violation:
    kind: str
    generator: str
    detail: str


@dataclass
class ValidationReport:
    violations: List[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def lines(self) -> List[str]:
        if self.ok:
            return ["valid"]
        return [f"{v.kind}: {v.generator}: {v.detail}" for v in self.violations]


def validate_resolution(res: Resolution) -> ValidationReport:
    """Check the almost-free DG axioms; every violation is reported."""
    report = ValidationReport()
    for i, g in enumerate(res.generators):
        if g.degree > 0:
            report.violations.append(Violation("positive-degree", g.name, f"degree {g.degree} > 0"))
        dg = res.d_of(i)
        degs = dg.degrees()
        if len(degs) > 1:
            report.violations.append(
                Violation("inhomogeneous", g.name, f"d({g.name}) = {dg} mixes degrees {sorted(degs)}"))
        bad = sorted(e for e in degs if e != g.degree + 1)
        if bad:
            report.violations.append(
                Violation("degree", g.name,
                          f"d({g.name}) has terms in degree {bad}, expected {g.degree + 1}"))
    for i, g in enumerate(res.generators):
        dd = nc_d(res.d_of(i), res)
        if not dd.is_zero():
            report.violations.append(Violation("d-squared", g.name, f"d(d({g.name})) = {dd}"))
    return report
