"""Groebner bases, syzygies and presentations of graded modules over a PolyRing."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from . import hilbert as hs
from .basis import GBEngine, IVec
from .ring import Poly, PolyRing, Vector, vector_degree, zero_vector

log = logging.getLogger(__name__)


class InhomogeneousError(ValueError):
    """Raised when a graded operation meets an inhomogeneous module."""


def _as_vectors(gens, rank: Optional[int]) -> Tuple[List[Vector], int]:
    vecs = [[g] if isinstance(g, Poly) else list(g) for g in gens]
    if rank is None:
        if not vecs:
            raise ValueError("rank required for an empty generator list")
        rank = len(vecs[0])
    return vecs, rank


class GroebnerBasis:
    """Reduced Groebner basis of a submodule of S^rank (POT, degrevlex)."""

    def __init__(self, ring: PolyRing, rank: int, shifts: Sequence[int], elems: List[IVec],
                 modulus: int = 0, truncated_at: Optional[int] = None):
        self.ring = ring
        self.rank = rank
        self.shifts = list(shifts)
        self.modulus = modulus
        self.truncated_at = truncated_at
        self._engine = GBEngine(ring, rank, shifts, modulus)
        for f in elems:
            e = self._engine
            lt = max(f)
            e.elems.append(f)
            e.leads.append(lt)
            e.lead_packed.append(ring.C - (lt & ring.bmask))
            e.sugar.append(e.vec_sugar(f))
            e.active.append(True)
            e.by_pos.setdefault(lt >> ring.key_bits, []).append(len(e.elems) - 1)
        self._raw = elems

    def __len__(self):
        return len(self._raw)

    @property
    def elements(self) -> List[Vector]:
        return [self._engine.decode(f) for f in self._raw]

    @property
    def polys(self) -> List[Poly]:
        """Elements as polynomials (ideal case)."""
        if self.rank != 1:
            raise ValueError("not an ideal")
        return [v[0] for v in self.elements]

    def _coerce(self, vec) -> Vector:
        if isinstance(vec, Poly):
            vec = [vec]
        return list(vec)

    def normal_form(self, vec) -> Union[Vector, Poly]:
        single = isinstance(vec, Poly)
        v = self._coerce(vec)
        f = self._engine.encode(v)
        # encode makes f primitive; recover the scaling
        raw = {}
        for pos, p in enumerate(v):
            for m, c in p.terms.items():
                raw[pos * self.ring.stride + m] = Fraction(c)
        rem, scale, _ = self._engine.reduce(dict(f), full=True)
        out = self._engine.decode(rem, scale)
        if not self.modulus and raw:
            k = next(iter(f))
            ratio = raw[k] / f[k]
            out = [p * ratio for p in out]
        return out[0] if single else out

    def contains(self, vec) -> bool:
        v = self._coerce(vec)
        f = self._engine.encode(v)
        rem, _, _ = self._engine.reduce(f, full=False)
        return not rem

    def lead_exponents(self) -> Dict[int, List[Tuple[int, ...]]]:
        out: Dict[int, List[Tuple[int, ...]]] = {i: [] for i in range(self.rank)}
        r = self.ring
        for f in self._raw:
            lt = max(f)
            out[lt >> r.key_bits].append(r.exponents(lt & r.mono_mask))
        return out

    def hilbert_numerator(self) -> Dict[int, int]:
        """Numerator of the Hilbert series of S^rank / M (shifted by the module shifts)."""
        total: Dict[int, int] = {}
        for pos, leads in self.lead_exponents().items():
            num = hs.hilbert_numerator(leads, self.ring.nvars)
            for k, c in hs.shifted(num, self.shifts[pos]).items():
                total[k] = total.get(k, 0) + c
        return {k: c for k, c in total.items() if c}

    def quotient_hilbert_function(self, up_to: int) -> List[int]:
        num = self.hilbert_numerator()
        self._check_truncation(up_to)
        return [_series_coeff(num, self.ring.nvars, d) for d in range(up_to + 1)]

    def _check_truncation(self, d: int) -> None:
        if self.truncated_at is not None and d > self.truncated_at:
            raise ValueError(f"basis only valid up to degree {self.truncated_at}")

    def same_module(self, other: "GroebnerBasis") -> bool:
        return (self.ring == other.ring and self.rank == other.rank
                and sorted(map(_freeze, self._raw)) == sorted(map(_freeze, other._raw)))


def _freeze(f: IVec):
    return tuple(sorted(f.items()))


def _series_coeff(num: Dict[int, int], nvars: int, d: int) -> int:
    from math import comb

    total = 0
    for k, c in num.items():
        if k <= d:
            total += c * (comb(d - k + nvars - 1, nvars - 1) if nvars else (1 if k == d else 0))
    return total


def buchberger(gens: Sequence, ring: Optional[PolyRing] = None, rank: Optional[int] = None,
               shifts: Optional[Sequence[int]] = None, modulus: int = 0,
               upto: Optional[int] = None) -> GroebnerBasis:
    """Reduced Groebner basis of the submodule generated by ``gens``.

    ``gens`` are Polys (an ideal) or vectors of Polys. With ``upto`` the
    computation stops at that internal degree (homogeneous input only).
    """
    vecs, rank = _as_vectors(gens, rank)
    if ring is None:
        for v in vecs:
            for p in v:
                ring = p.ring
                break
            if ring is not None:
                break
    if ring is None:
        raise ValueError("cannot infer the ring")
    eng = GBEngine(ring, rank, shifts, modulus)
    eng.add_generators(eng.encode(v) for v in vecs)
    eng.complete(upto)
    log.debug("buchberger: %s", eng.stats)
    return GroebnerBasis(ring, rank, eng.shifts, eng.reduced(), modulus, upto)


# ---------------------------------------------------------------- maps


@dataclass
class FreeModuleMap:
    """S-linear map S^source -> S^target given by its columns."""

    ring: PolyRing
    target: int
    columns: List[Vector]
    source_shifts: Optional[List[int]] = None
    target_shifts: Optional[List[int]] = None

    def __post_init__(self):
        for col in self.columns:
            if len(col) != self.target:
                raise ValueError("column length does not match the target rank")

    @property
    def source(self) -> int:
        return len(self.columns)

    def entry(self, i: int, j: int) -> Poly:
        return self.columns[j][i]

    def apply(self, vec: Sequence[Poly]) -> Vector:
        if len(vec) != self.source:
            raise ValueError("vector length does not match the source rank")
        out = zero_vector(self.ring, self.target)
        for a, col in zip(vec, self.columns):
            if a.is_zero():
                continue
            for i, c in enumerate(col):
                if c.terms:
                    out[i] = out[i] + a * c
        return out

    def compose(self, other: "FreeModuleMap") -> "FreeModuleMap":
        """self o other."""
        return FreeModuleMap(self.ring, self.target, [self.apply(c) for c in other.columns],
                             other.source_shifts, self.target_shifts)

    def is_zero(self) -> bool:
        return all(p.is_zero() for col in self.columns for p in col)

    def is_homogeneous(self) -> bool:
        if self.source_shifts is None or self.target_shifts is None:
            return False
        for j, col in enumerate(self.columns):
            for i, p in enumerate(col):
                for d in p.degrees():
                    if d + self.target_shifts[i] != self.source_shifts[j]:
                        return False
        return True


def syzygies(m: FreeModuleMap, upto: Optional[int] = None, modulus: int = 0) -> List[Vector]:
    """Generators of ker(m), via a Groebner basis of the graph of m.

    The graph vectors (e_j ; m(e_j)) live in S^source (+) S^target with the
    target block in the higher positions, so basis elements whose lead sits
    in the source block have zero image and they generate the kernel.
    """
    r, q = m.source, m.target
    homogeneous = m.is_homogeneous()
    if upto is not None and not homogeneous:
        raise InhomogeneousError("degree-truncated syzygies need a homogeneous map")
    if homogeneous:
        shifts = list(m.source_shifts) + list(m.target_shifts)
    else:
        shifts = [0] * (r + q)
    ring = m.ring
    eng = GBEngine(ring, r + q, shifts, modulus)
    one = ring.poly(1)
    gens = []
    for j, col in enumerate(m.columns):
        vec = zero_vector(ring, r) + list(col)
        vec[j] = one
        gens.append(eng.encode(vec))
    eng.add_generators(gens)
    eng.complete(upto)
    log.debug("syzygies: %s", eng.stats)
    out = []
    for f in eng.reduced():
        if (max(f) >> ring.key_bits) < r:
            vec = eng.decode(f)[:r]
            out.append(vec)
    out.sort(key=lambda v: (vector_degree(v, shifts[:r]) or 0) if homogeneous else 0)
    return out


# ---------------------------------------------------------------- presentations


@dataclass
class ModulePresentation:
    """coker(relations) for a free module with generator degree shifts.

    ``relations`` are vectors of length ``len(shifts)``; ``shifts`` may be
    None for an ungraded presentation.
    """

    ring: PolyRing
    shifts: Optional[List[int]]
    relations: List[Vector] = field(default_factory=list)
    generator_labels: Optional[List[object]] = None
    flags: List[str] = field(default_factory=list)
    _gb: Dict[Optional[int], GroebnerBasis] = field(default_factory=dict, repr=False)

    @property
    def ngens(self) -> int:
        if self.shifts is not None:
            return len(self.shifts)
        if self.generator_labels is not None:
            return len(self.generator_labels)
        return len(self.relations[0]) if self.relations else 0

    def is_homogeneous(self) -> bool:
        if self.shifts is None:
            return False
        return all(r_is_homogeneous(v, self.shifts) for v in self.relations)

    def groebner(self, upto: Optional[int] = None, modulus: int = 0) -> GroebnerBasis:
        key = (upto, modulus)
        if key not in self._gb:
            shifts = self.shifts if self.shifts is not None else [0] * self.ngens
            rels = [v for v in self.relations if any(p.terms for p in v)]
            if not rels:
                self._gb[key] = GroebnerBasis(self.ring, self.ngens, shifts, [], modulus, upto)
            else:
                self._gb[key] = buchberger(rels, self.ring, self.ngens, shifts, modulus, upto)
        return self._gb[key]

    def hilbert_function(self, up_to: int, modulus: int = 0) -> List[int]:
        if not self.is_homogeneous():
            raise InhomogeneousError("Hilbert function of an inhomogeneous presentation")
        return self.groebner(up_to, modulus).quotient_hilbert_function(up_to)

    def hilbert_numerator(self, modulus: int = 0) -> Dict[int, int]:
        if not self.is_homogeneous():
            raise InhomogeneousError("Hilbert series of an inhomogeneous presentation")
        return self.groebner(None, modulus).hilbert_numerator()

    def minimal_generators(self) -> "MinimalGenerators":
        """Graded Nakayama: counts of dim_k (M / S_+ M) per degree."""
        if not self.is_homogeneous():
            raise InhomogeneousError("minimal generators need a homogeneous presentation")
        from ..linalg import rref

        keep: List[int] = []
        by_degree: Dict[int, List[int]] = {}
        for i, s in enumerate(self.shifts):
            by_degree.setdefault(s, []).append(i)
        for d in sorted(by_degree):
            idx = by_degree[d]
            rows = []
            for v in self.relations:
                if vector_degree(v, self.shifts) != d:
                    continue
                rows.append([v[i].terms.get(self.ring.one, Fraction(0)) for i in idx])
            _, pivots = rref(rows, len(idx))
            # generators hit by a pivot are expressible through the others
            keep.extend(i for k, i in enumerate(idx) if k not in pivots)
        counts: Dict[int, int] = {}
        for i in keep:
            counts[self.shifts[i]] = counts.get(self.shifts[i], 0) + 1
        return MinimalGenerators(dict(sorted(counts.items())), sorted(keep))

    def minimize(self, upto: Optional[int] = None) -> "ModulePresentation":
        """Eliminate generators killed by relations with a unit entry, then prune relations.

        Unit elimination needs no grading; pruning relations to a minimal set
        only happens for homogeneous presentations.
        """
        homogeneous = self.is_homogeneous()
        rels = [list(v) for v in self.relations if any(p.terms for p in v)]
        alive = list(range(self.ngens))
        one = self.ring.one
        changed = True
        while changed:
            changed = False
            for ri, v in enumerate(rels):
                unit = next((i for i in alive if v[i].terms and set(v[i].terms) == {one}), None)
                if unit is None:
                    continue
                c = v[unit].terms[one]
                # e_unit = -(1/c) sum_{j != unit} v_j e_j
                new_rels = []
                for k, w in enumerate(rels):
                    if k == ri:
                        continue
                    a = w[unit]
                    if a.terms:
                        factor = a * Fraction(-1) * (Fraction(1) / c)
                        w = [w[j] + factor * v[j] if j != unit else self.ring.poly() for j in range(len(w))]
                    new_rels.append(w)
                rels = new_rels
                alive.remove(unit)
                changed = True
                break
        shifts = [self.shifts[i] for i in alive] if self.shifts is not None else None
        rels = [[v[i] for i in alive] for v in rels]
        rels = [v for v in rels if any(p.terms for p in v)]
        labels = [self.generator_labels[i] for i in alive] if self.generator_labels else None
        if not homogeneous:
            return ModulePresentation(self.ring, shifts, rels, labels, self.flags + ["inhomogeneous: unit generators eliminated, relations not pruned"])
        rels = minimal_subset(self.ring, rels, shifts, upto=upto)
        return ModulePresentation(self.ring, shifts, rels, labels, list(self.flags))

    @classmethod
    def free(cls, ring: PolyRing, shifts: Sequence[int]) -> "ModulePresentation":
        return cls(ring, list(shifts), [])

    @classmethod
    def quotient_ring(cls, ring: PolyRing, ideal: Sequence[Poly]) -> "ModulePresentation":
        return cls(ring, [0], [[p] for p in ideal])

    @classmethod
    def submodule(cls, ring: PolyRing, vectors: Sequence[Vector], shifts: Sequence[int],
                  upto: Optional[int] = None) -> "ModulePresentation":
        """The submodule of S^len(shifts) generated by ``vectors``, as a presentation."""
        gen_shifts = [vector_degree(v, shifts) for v in vectors]
        if any(d is None for d in gen_shifts):
            raise InhomogeneousError("generators must be homogeneous")
        m = FreeModuleMap(ring, len(shifts), [list(v) for v in vectors], gen_shifts, list(shifts))
        return cls(ring, gen_shifts, syzygies(m, upto))


def r_is_homogeneous(v: Sequence[Poly], shifts: Sequence[int]) -> bool:
    degs = set()
    for p, s in zip(v, shifts):
        degs |= {d + s for d in p.degrees()}
    return len(degs) <= 1


@dataclass
class MinimalGenerators:
    counts: Dict[int, int]
    indices: List[int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())


def minimal_subset(ring: PolyRing, vectors: Sequence[Vector], shifts: Sequence[int],
                   base: Sequence[Vector] = (), upto: Optional[int] = None,
                   modulus: int = 0) -> List[Vector]:
    """Greedy minimal generating subset of ``vectors`` modulo the span of ``base``.

    Homogeneous input only. Candidates are scanned by degree; one is kept iff
    it is not in the submodule generated by ``base`` and the kept ones.
    """
    idx = minimal_subset_indices(ring, vectors, shifts, base, upto, modulus)
    return [list(vectors[i]) for i in idx]


def minimal_subset_indices(ring: PolyRing, vectors: Sequence[Vector], shifts: Sequence[int],
                           base: Sequence[Vector] = (), upto: Optional[int] = None,
                           modulus: int = 0) -> List[int]:
    eng = GBEngine(ring, len(shifts), shifts, modulus)
    for b in base:
        if not r_is_homogeneous(b, shifts):
            raise InhomogeneousError("base vectors must be homogeneous")
    eng.add_generators(eng.encode(b) for b in base)
    cands = []
    for i, v in enumerate(vectors):
        f = eng.encode(v)
        if not f:
            continue
        d = eng.vec_degree(f)
        if d is None:
            raise InhomogeneousError("candidate vectors must be homogeneous")
        if upto is not None and d > upto:
            continue
        cands.append((d, i, f))
    cands.sort(key=lambda t: (t[0], t[1]))
    kept = []
    for d, i, f in cands:
        eng.complete(d)
        rem, _, _ = eng.reduce(dict(f), full=False)
        if rem:
            kept.append(i)
            eng.add_generators([f])
    log.debug("minimal_subset: kept %d of %d; %s", len(kept), len(cands), eng.stats)
    return kept
