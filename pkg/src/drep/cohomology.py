"""Cohomology of the expanded algebra R_n, degree by degree, over S = k[degree-0 variables].

Each degree -m piece of R_n is a free S-module on the monomials in the
negative-degree variables; the differential is S-linear, so H^{-m} is the
homology of a complex of free S-modules and every question about it is a
Groebner basis computation.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .expand import ExpandedAlgebra, detect_weights, h0_ideal
from .gcalg import CommMonomial, CPoly, c_d, c_mul
from .groebner import (FreeModuleMap, GroebnerBasis, InhomogeneousError, ModulePresentation, Poly,
                       PolyRing, buchberger, minimal_subset_indices, syzygies, vector_degree)
from .groebner.ring import zero_vector

log = logging.getLogger(__name__)


@dataclass
class DegreeComponent:
    m: int
    basis: List[CommMonomial]
    shifts: Optional[List[int]]
    incoming: FreeModuleMap  # d: degree -(m+1) -> degree -m
    outgoing: FreeModuleMap  # d: degree -m -> degree -(m-1)


@dataclass
class CohomologyClass:
    m: int
    representative: List[Poly]  # coefficients over the degree -m basis
    label: str = ""


@dataclass
class ProductResult:
    product: CohomologyClass
    is_zero: bool


class Complex:
    """The complex (R_n^{-m}, d) as free S-modules, with cached Groebner data."""

    def __init__(self, ea: ExpandedAlgebra, modulus: int = 0):
        self.ea = ea
        self.modulus = modulus
        variables = ea.variables
        self.s_index = {i: k for k, i in enumerate(i for i, v in enumerate(variables) if v.degree == 0)}
        self.ring = PolyRing([variables[i].name for i in self.s_index])
        w = detect_weights(ea.source)
        if w is not None:
            self.var_weight = [w[name_of_gen(v.name)] for v in variables]
        else:
            self.var_weight = None
        self._basis: Dict[int, List[CommMonomial]] = {}
        self._bindex: Dict[int, Dict[CommMonomial, int]] = {}
        self._dmat: Dict[int, FreeModuleMap] = {}
        self._image_gb: Dict[Tuple[int, Optional[int]], GroebnerBasis] = {}
        self._cycles: Dict[Tuple[int, Optional[int]], List[List[Poly]]] = {}

    @property
    def homogeneous(self) -> bool:
        return self.var_weight is not None

    # ---------------------------------------------------------------- bases
    def basis(self, m: int) -> List[CommMonomial]:
        if m not in self._basis:
            self._basis[m] = self.ea.basis(m) if m >= 0 else []
            self._bindex[m] = {b: i for i, b in enumerate(self._basis[m])}
        return self._basis[m]

    def rank(self, m: int) -> int:
        return len(self.basis(m))

    def shifts(self, m: int) -> Optional[List[int]]:
        if self.var_weight is None:
            return None
        wt = self.var_weight
        return [sum(wt[i] * e for i, e in b.evens) + sum(wt[i] for i in b.odds) for b in self.basis(m)]

    def _shifts_or_zero(self, m: int) -> List[int]:
        s = self.shifts(m)
        return s if s is not None else [0] * self.rank(m)

    # ---------------------------------------------------------------- conversions
    def to_vector(self, p: CPoly, m: int) -> List[Poly]:
        """Coordinates of a degree -m element of R_n over the S-basis of that degree."""
        self.basis(m)
        index = self._bindex[m]
        ring = self.ring
        coeffs: List[Dict[int, Fraction]] = [dict() for _ in range(self.rank(m))]
        for mono, c in p.terms.items():
            s_exps = [0] * ring.nvars
            neg_evens = []
            for i, e in mono.evens:
                k = self.s_index.get(i)
                if k is None:
                    neg_evens.append((i, e))
                else:
                    s_exps[k] = e
            b = CommMonomial(tuple(neg_evens), mono.odds)
            if b not in index:
                raise ValueError(f"element is not of degree -{m}")
            code = ring.monomial(s_exps)
            slot = coeffs[index[b]]
            slot[code] = slot.get(code, 0) + c
        return [Poly(ring, d) for d in coeffs]

    def from_vector(self, vec: Sequence[Poly], m: int) -> CPoly:
        variables = self.ea.variables
        s_vars = list(self.s_index)
        out: Dict[CommMonomial, Fraction] = {}
        for b, poly in zip(self.basis(m), vec):
            for code, c in poly.terms.items():
                exps = self.ring.exponents(code)
                evens = dict(b.evens)
                for k, e in enumerate(exps):
                    if e:
                        evens[s_vars[k]] = e
                mono = CommMonomial(tuple(sorted(evens.items())), b.odds)
                out[mono] = out.get(mono, 0) + c
        return CPoly(variables, out)

    # ---------------------------------------------------------------- differentials
    def differential_matrix(self, m: int) -> FreeModuleMap:
        """S-matrix of d from degree -m to degree -(m-1); columns follow basis(m)."""
        if m < 1:
            raise ValueError("differential matrices exist for m >= 1")
        if m not in self._dmat:
            cols = []
            pres = self.ea.presentation
            for b in self.basis(m):
                img = c_d(CPoly(self.ea.variables, {b: 1}), pres)
                cols.append(self.to_vector(img, m - 1))
            self._dmat[m] = FreeModuleMap(self.ring, self.rank(m - 1), cols,
                                          self.shifts(m), self.shifts(m - 1))
        return self._dmat[m]

    def component(self, m: int) -> DegreeComponent:
        return DegreeComponent(m, self.basis(m), self.shifts(m), self.differential_matrix(m + 1),
                               self.differential_matrix(m) if m >= 1 else
                               FreeModuleMap(self.ring, 0, [[] for _ in self.basis(0)]))

    def h0_ideal(self) -> List[Poly]:
        return [self.to_vector(p, 0)[0] for p in h0_ideal(self.ea)]

    # ---------------------------------------------------------------- groebner data
    def image_gb(self, m: int, upto: Optional[int] = None) -> GroebnerBasis:
        """Groebner basis of the coboundaries in degree -m (image of d from -(m+1))."""
        key = (m, upto)
        if key not in self._image_gb:
            dm = self.differential_matrix(m + 1)
            cols = [c for c in dm.columns if any(p.terms for p in c)]
            shifts = self._shifts_or_zero(m)
            if upto is not None and not self.homogeneous:
                raise InhomogeneousError("degree truncation needs a homogeneous differential")
            if cols:
                gb = buchberger(cols, self.ring, self.rank(m), shifts, self.modulus, upto)
            else:
                gb = GroebnerBasis(self.ring, self.rank(m), shifts, [], self.modulus, upto)
            self._image_gb[key] = gb
        return self._image_gb[key]

    def cycles(self, m: int, upto: Optional[int] = None) -> List[List[Poly]]:
        """Generators of the cocycles in degree -m (kernel of the outgoing d)."""
        key = (m, upto)
        if key not in self._cycles:
            if m == 0:
                self._cycles[key] = [[self.ring.poly(1)]] if self.rank(0) else []
            elif self.rank(m) == 0:
                self._cycles[key] = []
            else:
                self._cycles[key] = syzygies(self.differential_matrix(m), upto, self.modulus)
        return self._cycles[key]

    def is_cocycle(self, vec: Sequence[Poly], m: int) -> bool:
        if m == 0:
            return True
        return all(p.is_zero() for p in self.differential_matrix(m).apply(vec))

    def is_coboundary(self, vec: Sequence[Poly], m: int) -> bool:
        if all(p.is_zero() for p in vec):
            return True
        return self.image_gb(m, None).contains(list(vec))

    # ---------------------------------------------------------------- presentations
    def h_presentation(self, m: int, upto: Optional[int] = None) -> ModulePresentation:
        """Presentation of H^{-m}; generators carry cocycle representatives as labels."""
        if m < 0:
            raise ValueError("m must be non-negative")
        if upto is not None and not self.homogeneous:
            raise InhomogeneousError("degree truncation needs a homogeneous differential")
        if m == 0:
            pres = ModulePresentation.quotient_ring(self.ring, self.h0_ideal())
            pres.generator_labels = [[self.ring.poly(1)]]
            if self.homogeneous:
                pres.shifts = [0]
            else:
                pres.shifts = [0]
                pres.flags.append("inhomogeneous")
            return pres
        shifts = self.shifts(m)
        if self.rank(m) == 0:
            return ModulePresentation(self.ring, [], [], [])
        cyc = self.cycles(m, upto)
        coboundaries = [c for c in self.differential_matrix(m + 1).columns if any(p.terms for p in c)]
        if self.homogeneous:
            keep = minimal_subset_indices(self.ring, cyc, shifts, coboundaries, upto, self.modulus)
            gens = [cyc[i] for i in keep]
        else:
            gens = list(cyc)
        gen_shifts = ([vector_degree(g, shifts) for g in gens] if self.homogeneous else None)
        # relations: a with sum a_i g_i in the span of the coboundaries
        cols = [list(g) for g in gens] + coboundaries
        src_shifts = (gen_shifts + [vector_degree(c, shifts) for c in coboundaries]
                      if self.homogeneous else None)
        big = FreeModuleMap(self.ring, self.rank(m), cols, src_shifts, shifts)
        rels = []
        for v in syzygies(big, upto, self.modulus):
            r = v[:len(gens)]
            if any(p.terms for p in r):
                rels.append(r)
        pres = ModulePresentation(self.ring, gen_shifts, rels, gens)
        if upto is not None:
            pres.flags.append(f"truncated at internal degree {upto}")
        if self.homogeneous:
            return pres.minimize(upto)
        return pres.minimize()

    def minimal_generator_counts(self, m: int, upto: Optional[int] = None) -> Dict[int, int]:
        """Minimal generators of H^{-m} per internal degree (graded Nakayama)."""
        if not self.homogeneous:
            raise InhomogeneousError("minimal generators need a homogeneous differential")
        if m == 0:
            ideal = [p for p in self.h0_ideal() if p.terms]
            gb = buchberger(ideal, self.ring, 1, [0], self.modulus) if ideal else None
            return {} if gb is not None and gb.contains(self.ring.poly(1)) else {0: 1}
        shifts = self.shifts(m)
        cyc = self.cycles(m, upto)
        coboundaries = [c for c in self.differential_matrix(m + 1).columns if any(p.terms for p in c)]
        keep = minimal_subset_indices(self.ring, cyc, shifts, coboundaries, upto, self.modulus)
        counts: Dict[int, int] = {}
        for i in keep:
            d = vector_degree(cyc[i], shifts)
            counts[d] = counts.get(d, 0) + 1
        return dict(sorted(counts.items()))

    def minimal_generators(self, m: int, upto: Optional[int] = None) -> List[CohomologyClass]:
        shifts = self.shifts(m)
        cyc = self.cycles(m, upto)
        coboundaries = [c for c in self.differential_matrix(m + 1).columns if any(p.terms for p in c)]
        keep = minimal_subset_indices(self.ring, cyc, shifts, coboundaries, upto, self.modulus)
        return [CohomologyClass(m, cyc[i], f"g{k + 1}") for k, i in enumerate(keep)]

    # ---------------------------------------------------------------- Hilbert functions
    def hilbert_function(self, m: int, up_to: int) -> List[int]:
        """dim_k H^{-m}_d for d = 0..up_to, from quotient Hilbert functions.

        dim H_d = dim coker(d_in)_d + dim coker(d_out)_d - dim F_{m-1, d}.
        """
        if not self.homogeneous:
            raise InhomogeneousError("Hilbert functions need a homogeneous differential")
        if self.rank(m) == 0:
            return [0] * (up_to + 1)
        coker_in = self.image_gb(m, up_to).quotient_hilbert_function(up_to)
        if m == 0:
            return coker_in
        coker_out = self.image_gb(m - 1, up_to).quotient_hilbert_function(up_to)
        free = self.free_hilbert_function(m - 1, up_to)
        return [a + b - c for a, b, c in zip(coker_in, coker_out, free)]

    def free_hilbert_function(self, m: int, up_to: int) -> List[int]:
        shifts = self.shifts(m)
        return [sum(self.ring.dim(d - s) for s in shifts) for d in range(up_to + 1)]

    def hilbert_numerator(self, m: int) -> Dict[int, int]:
        """Numerator (over (1-t)^N) of the Hilbert series of H^{-m}; exact, untruncated."""
        if not self.homogeneous:
            raise InhomogeneousError("Hilbert series need a homogeneous differential")
        if self.rank(m) == 0:
            return {}
        total = dict(self.image_gb(m, None).hilbert_numerator())
        if m >= 1:
            for k, c in self.image_gb(m - 1, None).hilbert_numerator().items():
                total[k] = total.get(k, 0) + c
            for k, c in self._free_numerator(m - 1).items():
                total[k] = total.get(k, 0) - c
        return {k: c for k, c in sorted(total.items()) if c}

    def _free_numerator(self, m: int) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for s in self._shifts_or_zero(m):
            out[s] = out.get(s, 0) + 1
        return out

    # ---------------------------------------------------------------- vanishing
    def vanishing(self, m: int, method: str = "auto") -> bool:
        """True iff every cocycle of degree -m is a coboundary."""
        if m < 1:
            raise ValueError("vanishing is asked for m >= 1")
        if self.rank(m) == 0:
            return True
        if method == "auto":
            method = "hilbert" if self.homogeneous else "containment"
        if method == "hilbert":
            return not self.hilbert_numerator(m)
        if method == "containment":
            gb = self.image_gb(m, None)
            return all(gb.contains(z) for z in self.cycles(m, None))
        raise ValueError(f"unknown method {method!r}")

    # ---------------------------------------------------------------- products
    def cup_product(self, a: CohomologyClass, b: CohomologyClass) -> ProductResult:
        for c in (a, b):
            if not self.is_cocycle(c.representative, c.m):
                raise ValueError(f"representative of degree -{c.m} is not a cocycle")
        pa = self.from_vector(a.representative, a.m)
        pb = self.from_vector(b.representative, b.m)
        m = a.m + b.m
        vec = self.to_vector(c_mul(pa, pb), m)
        label = f"{a.label}*{b.label}" if a.label and b.label else ""
        return ProductResult(CohomologyClass(m, vec, label), self.is_coboundary(vec, m))

    def unit_class(self) -> CohomologyClass:
        return CohomologyClass(0, [self.ring.poly(1)], "1")

    # ---------------------------------------------------------------- Euler characteristic
    def euler_check(self, up_to: int) -> "EulerReport":
        if not self.homogeneous:
            raise InhomogeneousError("euler_check needs a homogeneous differential")
        m_max = self._max_m(up_to)
        chain = [0] * (up_to + 1)
        homology = [0] * (up_to + 1)
        for m in range(m_max + 1):
            if self.rank(m) == 0:
                continue
            sign = -1 if m % 2 else 1
            for d, v in enumerate(self.free_hilbert_function(m, up_to)):
                chain[d] += sign * v
            for d, v in enumerate(self.hilbert_function(m, up_to)):
                homology[d] += sign * v
        return EulerReport(chain, homology)

    def _max_m(self, up_to: int) -> int:
        ratios = []
        for v, w in zip(self.ea.variables, self.var_weight):
            if v.degree < 0:
                if w <= 0:
                    raise ValueError("non-positive weight on a negative variable")
                ratios.append(Fraction(-v.degree, w))
        if not ratios:
            return 0
        return int(up_to * max(ratios))


@dataclass
class EulerReport:
    chain_side: List[int]
    cohomology_side: List[int]

    @property
    def ok(self) -> bool:
        return self.chain_side == self.cohomology_side


def name_of_gen(var: str) -> str:
    """Source generator of an expanded variable name ``g_j_k``."""
    return var.rsplit("_", 2)[0]


# ---------------------------------------------------------------- basis matching


@dataclass
class RelationMatch:
    """Outcome of searching for new generators satisfying prescribed relations."""

    found: bool
    transform: Optional[List[List[Fraction]]]  # new_i = sum_k transform[k][i] * old_k + corrections
    generators: List[List[Poly]]
    residues: List[bool]  # per relation: holds in cohomology


def match_relations(cx: Complex, m: int, old: Sequence[Sequence[Poly]],
                    lower: Sequence[Sequence[Poly]], relations: Sequence[Sequence[Poly]],
                    seed: int = 0) -> RelationMatch:
    """Find new generators ``new = old * P + S-multiples of lower`` with P invertible
    such that every ``sum_i relations[r][i] * new_i`` is a coboundary.

    All data homogeneous: ``old`` share one internal degree; corrections use
    monomials of the complementary degree times ``lower``.
    """
    shifts = cx.shifts(m)
    k = len(old)
    deg = vector_degree(old[0], shifts)
    ring = cx.ring
    # unknowns: P[a][i] for a < k (old index), i < k (new index); then corrections
    unknowns: List[Tuple] = [("P", a, i) for a in range(k) for i in range(k)]
    for i in range(k):
        for li, low in enumerate(lower):
            ld = vector_degree(low, shifts)
            for mono in ring.monomials_of_degree(deg - ld):
                unknowns.append(("L", i, li, mono))
    gb = cx.image_gb(m, None)

    def scaled(vec, poly):
        return [poly * p for p in vec]

    # contribution of each unknown to each relation, reduced modulo coboundaries
    rows: Dict[Tuple, Dict[int, Fraction]] = {}
    for r, rel in enumerate(relations):
        for u, unk in enumerate(unknowns):
            if unk[0] == "P":
                _, a, i = unk
                vec = scaled(old[a], rel[i])
            else:
                _, i, li, mono = unk
                vec = scaled(lower[li], rel[i] * Poly(ring, {mono: Fraction(1)}))
            nf = gb.normal_form(vec)
            for pos, p in enumerate(nf):
                for code, c in p.terms.items():
                    rows.setdefault((r, pos, code), {})[u] = c
    matrix = [[row.get(u, Fraction(0)) for u in range(len(unknowns))] for row in rows.values()]
    kernel = linalg.nullspace(matrix, len(unknowns)) if matrix else [
        [Fraction(int(i == j)) for j in range(len(unknowns))] for i in range(len(unknowns))]
    rng = random.Random(seed)
    for _ in range(50):
        if not kernel:
            break
        lam = [rng.randint(-5, 5) for _ in kernel]
        sol = [sum((l * v[u] for l, v in zip(lam, kernel)), Fraction(0)) for u in range(len(unknowns))]
        P = [[sol[a * k + i] for i in range(k)] for a in range(k)]
        try:
            linalg.inverse(P)
        except ZeroDivisionError:
            continue
        new = []
        for i in range(k):
            vec = zero_vector(ring, cx.rank(m))
            for a in range(k):
                if P[a][i]:
                    vec = [x + y * P[a][i] for x, y in zip(vec, old[a])]
            for u, unk in enumerate(unknowns):
                if unk[0] == "L" and unk[1] == i and sol[u]:
                    _, _, li, mono = unk
                    vec = [x + y * Poly(ring, {mono: sol[u]}) for x, y in zip(vec, lower[li])]
            new.append(vec)
        residues = []
        for rel in relations:
            total = zero_vector(ring, cx.rank(m))
            for i, coeff in enumerate(rel):
                total = [x + coeff * y for x, y in zip(total, new[i])]
            residues.append(cx.is_coboundary(total, m))
        return RelationMatch(all(residues), P, new, residues)
    return RelationMatch(False, None, [], [False] * len(relations))
