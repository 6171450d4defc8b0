"""Graded-commutative DG polynomial algebras with the Koszul sign rule.

A monomial is a product of even variables (with exponents) and distinct odd
variables in increasing declaration order. Swapping two odd factors costs a
sign; repeating an odd factor kills the monomial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from .ncalg import Violation, ValidationReport


@dataclass(frozen=True)
class CommVariable:
    name: str
    degree: int

    @property
    def parity(self) -> int:
        return self.degree % 2


class CommMonomial(NamedTuple):
    evens: Tuple[Tuple[int, int], ...]  # (variable index, exponent>0), sorted by index
    odds: Tuple[int, ...]  # strictly increasing variable indices

    @classmethod
    def unit(cls) -> "CommMonomial":
        return cls((), ())

    def degree(self, variables: Sequence[CommVariable]) -> int:
        return (sum(variables[i].degree * e for i, e in self.evens)
                + sum(variables[i].degree for i in self.odds))

    def even_degree(self) -> int:
        return sum(e for _, e in self.evens)

    def names(self, variables: Sequence[CommVariable]) -> str:
        parts = []
        for i, e in self.evens:
            parts.append(variables[i].name if e == 1 else f"{variables[i].name}^{e}")
        parts.extend(variables[i].name for i in self.odds)
        return "*".join(parts) if parts else "1"


UNIT = CommMonomial.unit()


def normalize(factors: Sequence, variables: Sequence[CommVariable]) -> Tuple[int, Optional[CommMonomial]]:
    """Sort a listed product of variables into canonical form.

    ``factors`` holds variable indices or names. Returns ``(sign, monomial)``;
    ``(0, None)`` when an odd variable repeats.
    """
    index = None
    idx: List[int] = []
    for f in factors:
        if isinstance(f, str):
            if index is None:
                index = {v.name: i for i, v in enumerate(variables)}
            if f not in index:
                raise KeyError(f"unknown variable {f!r}")
            idx.append(index[f])
        else:
            if not 0 <= f < len(variables):
                raise KeyError(f"unknown variable index {f!r}")
            idx.append(f)
    evens: Dict[int, int] = {}
    odds: List[int] = []
    for i in idx:
        if variables[i].degree % 2:
            odds.append(i)
        else:
            evens[i] = evens.get(i, 0) + 1
    if len(set(odds)) != len(odds):
        return 0, None
    inversions = sum(1 for a in range(len(odds)) for b in range(a + 1, len(odds)) if odds[a] > odds[b])
    sign = -1 if inversions % 2 else 1
    return sign, CommMonomial(tuple(sorted(evens.items())), tuple(sorted(odds)))


def mono_mul(a: CommMonomial, b: CommMonomial) -> Tuple[int, Optional[CommMonomial]]:
    """Product of canonical monomials; returns (sign, monomial) or (0, None)."""
    if a.odds and b.odds:
        sb = set(b.odds)
        if any(i in sb for i in a.odds):
            return 0, None
        # count pairs (i in a.odds, j in b.odds) with i > j
        inv = 0
        j = 0
        nb = len(b.odds)
        for i in a.odds:
            while j < nb and b.odds[j] < i:
                j += 1
            inv += j
        odds = tuple(sorted(a.odds + b.odds))
        sign = -1 if inv % 2 else 1
    else:
        odds = a.odds or b.odds
        sign = 1
    if not a.evens:
        evens = b.evens
    elif not b.evens:
        evens = a.evens
    else:
        d = dict(a.evens)
        for i, e in b.evens:
            d[i] = d.get(i, 0) + e
        evens = tuple(sorted(d.items()))
    return sign, CommMonomial(evens, odds)


def monomial_sort_key(m: CommMonomial, variables: Sequence[CommVariable]):
    """Canonical order: degree, then odd part, then even exponent vector."""
    expvec = [0] * len(variables)
    for i, e in m.evens:
        expvec[i] = e
    return (-m.degree(variables), m.odds, tuple(-e for e in expvec))


class CPoly:
    """Element of a graded-commutative polynomial algebra over Q."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[CommVariable], terms: Optional[Mapping[CommMonomial, object]] = None):
        self.variables = tuple(variables)
        clean: Dict[CommMonomial, Fraction] = {}
        for m, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[m] = clean.get(m, 0) + c
        self.terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def _raw(cls, variables, terms) -> "CPoly":
        obj = cls.__new__(cls)
        obj.variables = variables
        obj.terms = {m: c for m, c in terms.items() if c}
        return obj

    @classmethod
    def zero(cls, variables) -> "CPoly":
        return cls(variables)

    @classmethod
    def one(cls, variables) -> "CPoly":
        return cls(variables, {UNIT: 1})

    @classmethod
    def var(cls, variables, name: str) -> "CPoly":
        sign, m = normalize([name], variables)
        return cls(variables, {m: 1})

    @classmethod
    def from_factors(cls, variables, factors: Sequence, coeff=1) -> "CPoly":
        sign, m = normalize(factors, variables)
        if not sign:
            return cls(variables)
        return cls(variables, {m: sign * Fraction(coeff)})

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set:
        return {m.degree(self.variables) for m in self.terms}

    def homogeneous_degree(self) -> Optional[int]:
        degs = self.degrees()
        return degs.pop() if len(degs) == 1 else None

    def _check(self, other: "CPoly") -> None:
        if self.variables != other.variables:
            raise ValueError("CPoly operands are over different variable sets")

    def __add__(self, other: "CPoly") -> "CPoly":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return CPoly._raw(self.variables, out)

    def __neg__(self) -> "CPoly":
        return CPoly._raw(self.variables, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "CPoly") -> "CPoly":
        return self + (-other)

    def scale(self, c) -> "CPoly":
        c = Fraction(c)
        return CPoly._raw(self.variables, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, CPoly):
            return c_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CPoly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: monomial_sort_key(mc[0], self.variables))

    def __str__(self) -> str:
        return format_cpoly(self)

    def __repr__(self) -> str:
        return f"CPoly({format_cpoly(self)})"


def c_mul(p: CPoly, q: CPoly) -> CPoly:
    p._check(q)
    out: Dict[CommMonomial, Fraction] = {}
    for a, ca in p.terms.items():
        for b, cb in q.terms.items():
            sign, m = mono_mul(a, b)
            if sign:
                out[m] = out.get(m, 0) + (ca * cb if sign > 0 else -ca * cb)
    return CPoly._raw(p.variables, out)


def format_cpoly(p: CPoly) -> str:
    if not p.terms:
        return "0"
    pieces = []
    for k, (m, c) in enumerate(p.sorted_terms()):
        mag = abs(c)
        body = m.names(p.variables)
        if body == "1":
            body = str(mag)
        elif mag != 1:
            body = f"{mag}*{body}"
        if k == 0:
            pieces.append(("-" if c < 0 else "") + body)
        else:
            pieces.append(("- " if c < 0 else "+ ") + body)
    return " ".join(pieces)


@dataclass
class DGCommPresentation:
    """Free graded-commutative algebra on ``variables`` with differential ``diff``."""

    variables: Tuple[CommVariable, ...]
    diff: Dict[str, CPoly] = field(default_factory=dict)

    def __post_init__(self):
        self.variables = tuple(self.variables)
        names = [v.name for v in self.variables]
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        self._index = {n: i for i, n in enumerate(names)}
        # per-index differential, CPoly terms dicts, for the Leibniz loop
        self._dterms = [self.diff[n].terms if n in self.diff else {} for n in names]

    @property
    def names(self) -> List[str]:
        return [v.name for v in self.variables]

    def index(self, name: str) -> int:
        return self._index[name]

    def d_var(self, name: str) -> CPoly:
        return self.diff.get(name, CPoly.zero(self.variables))

    def degree_zero_indices(self) -> List[int]:
        return [i for i, v in enumerate(self.variables) if v.degree == 0]

    def negative_indices(self) -> List[int]:
        return [i for i, v in enumerate(self.variables) if v.degree < 0]


def _d_monomial(m: CommMonomial, pres: DGCommPresentation) -> Dict[CommMonomial, Fraction]:
    """Leibniz rule on E * o_1 ... o_k (even block first, odds in order)."""
    dterms = pres._dterms
    out: Dict[CommMonomial, Fraction] = {}

    def acc(left: CommMonomial, mid: Dict[CommMonomial, Fraction], right: CommMonomial, coef):
        for mm, c in mid.items():
            s1, lm = mono_mul(left, mm)
            if not s1:
                continue
            s2, full = mono_mul(lm, right)
            if not s2:
                continue
            v = coef * c if s1 * s2 > 0 else -coef * c
            out[full] = out.get(full, 0) + v

    for pos, (i, e) in enumerate(m.evens):
        if not dterms[i]:
            continue
        rest = list(m.evens)
        if e == 1:
            del rest[pos]
        else:
            rest[pos] = (i, e - 1)
        left = CommMonomial(tuple(rest), ())
        right = CommMonomial((), m.odds)
        acc(left, dterms[i], right, e)
    for pos, i in enumerate(m.odds):
        if not dterms[i]:
            continue
        left = CommMonomial(m.evens, m.odds[:pos])
        right = CommMonomial((), m.odds[pos + 1:])
        acc(left, dterms[i], right, -1 if pos % 2 else 1)
    return out


def c_d(p: CPoly, pres: DGCommPresentation) -> CPoly:
    if p.variables != pres.variables:
        raise ValueError("polynomial is not over the presentation's variables")
    out: Dict[CommMonomial, Fraction] = {}
    for m, c in p.terms.items():
        for mm, v in _d_monomial(m, pres).items():
            out[mm] = out.get(mm, 0) + c * v
    return CPoly._raw(p.variables, out)


def validate_presentation(pres: DGCommPresentation) -> ValidationReport:
    report = ValidationReport()
    for v in pres.variables:
        dv = pres.d_var(v.name)
        if v.degree > 0:
            report.violations.append(Violation("positive-degree", v.name, f"degree {v.degree} > 0"))
        bad = sorted(e for e in dv.degrees() if e != v.degree + 1)
        if bad:
            report.violations.append(Violation("degree", v.name, f"d({v.name}) has terms in degree {bad}"))
        dd = c_d(dv, pres)
        if not dd.is_zero():
            report.violations.append(Violation("d-squared", v.name, f"d(d({v.name})) = {dd}"))
    return report


def component_basis(pres: DGCommPresentation, m: int) -> List[CommMonomial]:
    """Monomials in the negative-degree variables of total degree -m.

    They form a free basis of the degree -m piece over the polynomial ring on
    the degree-0 variables.
    """
    if m < 0:
        return []
    variables = pres.variables
    neg = [i for i, v in enumerate(variables) if v.degree < 0]
    found: List[CommMonomial] = []

    def rec(k: int, budget: int, evens: List[Tuple[int, int]], odds: List[int]):
        if budget == 0:
            found.append(CommMonomial(tuple(evens), tuple(odds)))
            return
        if k == len(neg):
            return
        i = neg[k]
        w = -variables[i].degree
        if variables[i].degree % 2:
            rec(k + 1, budget, evens, odds)
            if w <= budget:
                odds.append(i)
                rec(k + 1, budget - w, evens, odds)
                odds.pop()
        else:
            e = 0
            while e * w <= budget:
                if e:
                    evens.append((i, e))
                rec(k + 1, budget - e * w, evens, odds)
                if e:
                    evens.pop()
                e += 1

    rec(0, m, [], [])
    found.sort(key=lambda mono: monomial_sort_key(mono, variables))
    return found


def generating_function_counts(degrees: Iterable[int], m_max: int) -> List[int]:
    """Coefficients of prod_{odd}(1+s^w) * prod_{even}(1-s^w)^{-1}, w = -degree."""
    coeffs = [1] + [0] * m_max
    for deg in degrees:
        if deg >= 0:
            continue
        w = -deg
        if deg % 2:
            for k in range(m_max, w - 1, -1):
                coeffs[k] += coeffs[k - w]
        else:
            for k in range(w, m_max + 1):
                coeffs[k] += coeffs[k - w]
    return coeffs
