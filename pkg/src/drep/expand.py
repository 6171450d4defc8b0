"""Matrix expansion of an almost-free resolution.

Each generator r of R becomes an n x n matrix of variables r_j_k of the same
degree. A word r_{t1} ... r_{tm} is sent, entry (j, k), to the (j, k) entry of
the product of the generic matrices; abelianizing with Koszul signs gives the
graded-commutative DG algebra R_n whose cohomology is the derived
representation algebra.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .gcalg import CommMonomial, CommVariable, CPoly, DGCommPresentation, c_d, component_basis, normalize
from .ncalg import Generator, NCPoly, Resolution, Word, validate_resolution


class InvalidResolutionError(ValueError):
    pass


def var_name(gen: str, j: int, k: int) -> str:
    return f"{gen}_{j}_{k}"


def expanded_generators(res: Resolution, n: int) -> Tuple[Generator, ...]:
    """Generators of the free algebra on r_i^{jk}, ordered by (i, j, k)."""
    return tuple(Generator(var_name(g.name, j, k), g.degree)
                 for g in res.generators
                 for j in range(1, n + 1) for k in range(1, n + 1))


def _vindex(i: int, j: int, k: int, n: int) -> int:
    return i * n * n + (j - 1) * n + (k - 1)


def f_jk(w: Word, j: int, k: int, n: int, res: Resolution) -> NCPoly:
    """Entry (j, k) of the product of generic matrices along the word ``w``.

    For a word of length m the result has n^(m-1) summands; the empty word
    goes to the (j, k) entry of the identity.
    """
    if not (1 <= j <= n and 1 <= k <= n):
        raise IndexError(f"matrix index ({j}, {k}) out of range for n = {n}")
    gens = expanded_generators(res, n)
    return NCPoly(gens, _f_terms(w, j, k, n))


def _f_terms(w: Word, j: int, k: int, n: int) -> Dict[Word, int]:
    m = len(w)
    if m == 0:
        return {(): 1} if j == k else {}
    out: Dict[Word, int] = {}
    for inner in itertools.product(range(1, n + 1), repeat=m - 1):
        idx = (j,) + inner + (k,)
        word = tuple(_vindex(w[t], idx[t], idx[t + 1], n) for t in range(m))
        out[word] = out.get(word, 0) + 1
    return out


def f_jk_poly(p: NCPoly, j: int, k: int, n: int, res: Resolution) -> NCPoly:
    """f_jk extended linearly to an NCPoly over the resolution's generators."""
    gens = expanded_generators(res, n)
    out: Dict[Word, Fraction] = {}
    for w, c in p.terms.items():
        for ww, mult in _f_terms(w, j, k, n).items():
            out[ww] = out.get(ww, 0) + c * mult
    return NCPoly(gens, out)


def abelianize(p: NCPoly, variables) -> CPoly:
    """Image of a noncommutative polynomial under the Koszul-signed quotient map."""
    out: Dict[CommMonomial, Fraction] = {}
    for w, c in p.terms.items():
        sign, m = normalize(w, variables)
        if sign:
            out[m] = out.get(m, 0) + sign * c
    return CPoly(variables, out)


@dataclass
class ExpandedAlgebra:
    n: int
    source: Resolution
    variables: Tuple[CommVariable, ...]
    presentation: DGCommPresentation

    def var(self, gen: str, j: int, k: int) -> CPoly:
        return CPoly.var(self.variables, var_name(gen, j, k))

    def matrix(self, gen: str) -> List[List[CPoly]]:
        return [[self.var(gen, j, k) for k in range(1, self.n + 1)] for j in range(1, self.n + 1)]

    def d(self, p: CPoly) -> CPoly:
        return c_d(p, self.presentation)

    @property
    def degree_zero_names(self) -> List[str]:
        return [v.name for v in self.variables if v.degree == 0]

    def basis(self, m: int) -> List[CommMonomial]:
        return component_basis(self.presentation, m)


def expand(res: Resolution, n: int, check: bool = True) -> ExpandedAlgebra:
    if n < 1:
        raise ValueError("matrix size must be at least 1")
    if check:
        report = validate_resolution(res)
        if not report.ok:
            raise InvalidResolutionError("; ".join(report.lines()))
    gens = expanded_generators(res, n)
    variables = tuple(CommVariable(g.name, g.degree) for g in gens)
    diff: Dict[str, CPoly] = {}
    for i, g in enumerate(res.generators):
        dg = res.d_of(i)
        if dg.is_zero():
            continue
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                image = abelianize(f_jk_poly(dg, j, k, n, res), variables)
                if not image.is_zero():
                    diff[var_name(g.name, j, k)] = image
    pres = DGCommPresentation(variables, diff)
    return ExpandedAlgebra(n, res, variables, pres)


def h0_ideal(ea: ExpandedAlgebra) -> List[CPoly]:
    """d of the degree -1 basis: generators of the ideal I with H^0 = S / I."""
    return [c_d(CPoly(ea.variables, {b: 1}), ea.presentation) for b in ea.basis(1)]


def detect_weights(res: Resolution) -> Optional[Dict[str, int]]:
    """Internal weights making the differential homogeneous, if they exist.

    Degree-0 generators get weight 1; a negative generator inherits the common
    weight of the words in its differential (weight 1 when d = 0). Returns
    None when some differential mixes weights.
    """
    weights: Dict[str, int] = {}
    for g in sorted(res.generators, key=lambda g: -g.degree):
        if g.degree == 0:
            weights[g.name] = 1
            continue
        dg = res.diff.get(g.name)
        if dg is None or dg.is_zero():
            weights[g.name] = 1
            continue
        ws = set()
        for w in dg.terms:
            names = [res.generators[i].name for i in w]
            if any(nm not in weights for nm in names):
                return None
            ws.add(sum(weights[nm] for nm in names))
        if len(ws) != 1:
            return None
        weights[g.name] = ws.pop()
    return weights
