"""Derived tangent spaces at a representation, and a Hochschild cross-check.

A representation rho sends the degree-0 generators of R to n x n matrices
(negative generators go to 0). A degree-m derivation theta is fixed by its
values on the degree -m generators; the complex Der(R, End V) has differential
delta(theta) = -(-1)^m theta o d_R, and its cohomology is T^m.

For polynomial algebras k[x_1..x_d] the Koszul complex of End V gives the
Hochschild cohomology independently; one expects T^0 = Z^1 (derivations) and
T^i = HH^{i+1} for i >= 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .linalg import Matrix
from .ncalg import Resolution, ValidationReport, Violation


@dataclass
class Representation:
    n: int
    values: Dict[str, Matrix]

    def __post_init__(self):
        self.values = {k: linalg.to_fractions(v) for k, v in self.values.items()}
        for name, mat in self.values.items():
            if len(mat) != self.n or any(len(r) != self.n for r in mat):
                raise ValueError(f"matrix for {name!r} is not {self.n}x{self.n}")

    def matrix(self, name: str) -> Matrix:
        return self.values.get(name) or linalg.zeros(self.n, self.n)

    def conjugate(self, g: Matrix) -> "Representation":
        """The representation g rho g^{-1}."""
        gi = linalg.inverse(g)
        return Representation(self.n, {k: linalg.matmul(linalg.matmul(g, v), gi)
                                       for k, v in self.values.items()})


def _add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(r, s)] for r, s in zip(a, b)]


def _scale(a: Matrix, c) -> Matrix:
    return [[x * c for x in r] for r in a]


def _commutator(a: Matrix, b: Matrix) -> Matrix:
    return _add(linalg.matmul(a, b), _scale(linalg.matmul(b, a), -1))


def _rho(res: Resolution, rep: Representation) -> List[Optional[Matrix]]:
    """rho on every generator; None marks a negative generator (rho = 0)."""
    out = []
    for g in res.generators:
        out.append(rep.matrix(g.name) if g.degree == 0 else None)
    return out


def evaluate(res: Resolution, rep: Representation, poly) -> Matrix:
    """rho applied to an NCPoly (words with a negative letter evaluate to 0)."""
    rho = _rho(res, rep)
    n = rep.n
    total = linalg.zeros(n, n)
    for word, c in poly.terms.items():
        if any(rho[i] is None for i in word):
            continue
        m = linalg.identity(n)
        for i in word:
            m = linalg.matmul(m, rho[i])
        total = _add(total, _scale(m, c))
    return total


def validate_rep(res: Resolution, rep: Representation) -> ValidationReport:
    violations = []
    known = {g.name for g in res.generators}
    for name in rep.values:
        if name not in known:
            violations.append(Violation("unknown-generator", name, "not a generator of the algebra"))
        elif res.generators[res.index(name)].degree != 0:
            violations.append(Violation("negative-value", name,
                                        "values are given on degree-0 generators only"))
    if violations:
        return ValidationReport(violations)
    for i, g in enumerate(res.generators):
        if g.degree != -1:
            continue
        residue = evaluate(res, rep, res.d_of(i))
        if not linalg.is_zero(residue):
            violations.append(Violation("relation", g.name, f"rho(d {g.name}) = {_fmt(residue)}"))
    return ValidationReport(violations)


def _fmt(m: Matrix) -> str:
    return "[" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in m) + "]"


class InvalidRepresentationError(ValueError):
    pass


@dataclass
class DerComplex:
    """Der^m(R, End V) with basis (generator of degree -m, matrix unit E_ab)."""

    n: int
    pieces: Dict[int, List[Tuple[str, int, int]]]
    differentials: Dict[int, Matrix]  # delta_m : piece m -> piece m+1, rows index piece m+1

    def dim(self, m: int) -> int:
        return len(self.pieces.get(m, []))

    @property
    def top(self) -> int:
        return max(self.pieces) if self.pieces else 0


def _theta_hat(word, m: int, res: Resolution, rho, theta: Dict[int, Matrix], n: int) -> Matrix:
    """theta extended to a word by the rho-twisted graded Leibniz rule."""
    total = linalg.zeros(n, n)
    degrees = [res.generators[i].degree for i in word]
    for pos, gi in enumerate(word):
        if gi not in theta:
            continue
        others = word[:pos] + word[pos + 1:]
        if any(rho[i] is None for i in others):
            continue
        sign = -1 if (m * sum(degrees[:pos])) % 2 else 1
        left = linalg.identity(n)
        for i in word[:pos]:
            left = linalg.matmul(left, rho[i])
        right = linalg.identity(n)
        for i in word[pos + 1:]:
            right = linalg.matmul(right, rho[i])
        total = _add(total, _scale(linalg.matmul(linalg.matmul(left, theta[gi]), right), sign))
    return total


def der_complex(res: Resolution, rep: Representation) -> DerComplex:
    report = validate_rep(res, rep)
    if not report.ok:
        raise InvalidRepresentationError("; ".join(report.lines()))
    n = rep.n
    rho = _rho(res, rep)
    pieces: Dict[int, List[Tuple[str, int, int]]] = {}
    for g in res.generators:
        pieces.setdefault(-g.degree, [])
    for g in res.generators:
        pieces[-g.degree].extend((g.name, a, b) for a in range(n) for b in range(n))
    top = max(pieces) if pieces else 0
    for m in range(top + 1):
        pieces.setdefault(m, [])
    diffs: Dict[int, Matrix] = {}
    for m in range(top):
        src, dst = pieces[m], pieces[m + 1]
        cols = []
        for name, a, b in src:
            e = linalg.zeros(n, n)
            e[a][b] = Fraction(1)
            theta = {res.index(name): e}
            image: Dict[str, Matrix] = {}
            for h in {nm for nm, _, _ in dst}:
                val = linalg.zeros(n, n)
                for word, c in res.d_of(res.index(h)).terms.items():
                    val = _add(val, _scale(_theta_hat(word, m, res, rho, theta, n), c))
                image[h] = _scale(val, -1 if m % 2 == 0 else 1)
            cols.append([image[h][p][q] for h, p, q in dst])
        diffs[m] = [[cols[j][i] for j in range(len(src))] for i in range(len(dst))]
    return DerComplex(n, pieces, diffs)


def tangent_cohomology(res: Resolution, rep: Representation) -> Dict[int, int]:
    """dim T^i for 0 <= i <= the lowest generator degree (negated)."""
    cx = der_complex(res, rep)
    ranks = {m: linalg.rank(mat, cx.dim(m)) if mat else 0 for m, mat in cx.differentials.items()}
    return {m: cx.dim(m) - ranks.get(m, 0) - ranks.get(m - 1, 0) for m in range(cx.top + 1)}


# ---------------------------------------------------------------- Hochschild oracle


@dataclass
class HochschildDims:
    hh: Dict[int, int]
    z1: int


def hh_koszul(d: int, mats: Sequence[Matrix], p_max: Optional[int] = None) -> HochschildDims:
    """HH^p(k[x_1..x_d], End V) from the Koszul complex, with x_i acting by ``mats[i]``."""
    if len(mats) != d:
        raise ValueError(f"expected {d} matrices, got {len(mats)}")
    mats = [linalg.to_fractions(m) for m in mats]
    n = len(mats[0]) if mats else 0
    for a, b in itertools.combinations(mats, 2):
        if not linalg.is_zero(_commutator(a, b)):
            raise ValueError("the matrices do not commute")
    p_max = d if p_max is None else min(p_max, d)
    subsets = {p: list(itertools.combinations(range(d), p)) for p in range(d + 2)}
    units = [(a, b) for a in range(n) for b in range(n)]

    def koszul(p: int) -> Matrix:
        """Differential C^p -> C^{p+1}; basis (subset I, matrix unit)."""
        src, dst = subsets[p], subsets[p + 1]
        dst_index = {s: k for k, s in enumerate(dst)}
        rows = [[Fraction(0)] * (len(src) * n * n) for _ in range(len(dst) * n * n)]
        for si, subset in enumerate(src):
            for ui, (a, b) in enumerate(units):
                e = linalg.zeros(n, n)
                e[a][b] = Fraction(1)
                col = si * n * n + ui
                for i in range(d):
                    if i in subset:
                        continue
                    target = tuple(sorted(subset + (i,)))
                    sign = -1 if sum(1 for j in subset if j < i) % 2 else 1
                    c = _commutator(mats[i], e)
                    base = dst_index[target] * n * n
                    for vi, (p_, q_) in enumerate(units):
                        if c[p_][q_]:
                            rows[base + vi][col] += sign * c[p_][q_]
        return rows

    dims = {p: len(subsets[p]) * n * n for p in range(d + 1)}
    ranks = {}
    for p in range(d):
        mat = koszul(p)
        ranks[p] = linalg.rank(mat, dims[p]) if mat and dims[p] else 0
    hh = {p: dims[p] - ranks.get(p, 0) - ranks.get(p - 1, 0) for p in range(p_max + 1)}
    z1 = dims.get(1, 0) - ranks.get(1, 0) if d >= 1 else 0
    return HochschildDims(hh, z1)


@dataclass
class P2Report:
    tangent: Dict[int, int]
    hochschild: HochschildDims
    comparisons: List[Tuple[str, int, str, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(a == b for _, a, _, b in self.comparisons)

    def lines(self) -> List[str]:
        return [f"{ln} = {a}  {rn} = {b}  {'ok' if a == b else 'MISMATCH'}"
                for ln, a, rn, b in self.comparisons]


def check_p2(res: Resolution, rep: Representation, d: Optional[int], p_max: Optional[int] = None) -> P2Report:
    """Compare T^i with the Koszul oracle; ``d`` declares A = k[x_1..x_d]."""
    if d is None:
        raise ValueError("the Hochschild oracle needs the algebra declared polynomial in d variables")
    zero_gens = [g.name for g in res.generators if g.degree == 0]
    if len(zero_gens) != d:
        raise ValueError(f"declared {d} variables but the algebra has {len(zero_gens)} degree-0 generators")
    tan = tangent_cohomology(res, rep)
    p_max = d if p_max is None else p_max
    hh = hh_koszul(d, [rep.matrix(g) for g in zero_gens], p_max)
    comps = [("T^0", tan.get(0, 0), "Z^1", hh.z1)]
    for i in range(1, p_max):
        comps.append((f"T^{i}", tan.get(i, 0), f"HH^{i + 1}", hh.hh.get(i + 1, 0)))
    return P2Report(tan, hh, comps)
