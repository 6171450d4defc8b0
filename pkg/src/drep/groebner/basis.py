"""Buchberger's algorithm for submodules of free modules over a PolyRing.

Internally a vector is a dict ``{pos * stride + monomial_code: coeff}``;
integer comparison of keys is the position-over-term order (higher position
first, degrevlex inside a position). Coefficients are integers kept primitive
(rational mode) or residues modulo a prime.

S-pairs are processed by sugar degree (the normal strategy) with the
Gebauer-Moeller criteria. For homogeneous input the sugar is the true degree
and the computation may be stopped at any degree: the partial basis is then a
Groebner basis of the truncated module.
"""

from __future__ import annotations

import heapq
import logging
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .ring import Poly, PolyRing, Vector, lcm_packed

log = logging.getLogger(__name__)

IVec = Dict[int, int]


def _content(values) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
        if g == 1:
            return 1
    return g


class GBEngine:
    """Incremental Groebner basis computation.

    ``modulus=0`` computes over Q; a prime modulus computes over F_p (used as
    a fast pre-check). ``shifts`` are the internal degrees of the basis
    vectors of the ambient free module.
    """

    def __init__(self, ring: PolyRing, rank: int, shifts: Optional[Sequence[int]] = None,
                 modulus: int = 0):
        self.ring = ring
        self.rank = rank
        self.shifts = list(shifts) if shifts is not None else [0] * rank
        if len(self.shifts) != rank:
            raise ValueError("one shift per module position required")
        self.p = modulus
        self.elems: List[IVec] = []
        self.leads: List[int] = []
        self.lead_packed: List[int] = []
        self.sugar: List[int] = []
        self.active: List[bool] = []
        self.by_pos: Dict[int, List[int]] = {}
        self.pairs: Dict[Tuple[int, int], Tuple[int, int, int]] = {}
        self.heap: list = []
        self._seq = 0
        self._hit: Dict[int, int] = {}
        self._miss: set = set()
        self.homogeneous = True
        self.completed_to: Optional[int] = None  # None: not yet run
        self.stats = {"pairs": 0, "zero": 0, "added": 0}

    # ------------------------------------------------------------ encoding
    def term_degree(self, key: int) -> int:
        r = self.ring
        return ((key & r.mono_mask) >> r.shift) + self.shifts[key >> r.key_bits]

    def encode(self, vec: Sequence[Poly]) -> IVec:
        if len(vec) != self.rank:
            raise ValueError(f"vector of length {len(vec)} in a rank-{self.rank} module")
        stride = self.ring.stride
        raw: Dict[int, Fraction] = {}
        for pos, poly in enumerate(vec):
            if isinstance(poly, Poly) and poly.ring != self.ring:
                raise ValueError("vector entry from a different ring")
            base = pos * stride
            for m, c in poly.terms.items():
                raw[base + m] = Fraction(c)
        return self._from_fractions(raw)

    def _from_fractions(self, raw: Dict[int, Fraction]) -> IVec:
        if not raw:
            return {}
        if self.p:
            p = self.p
            out = {k: (c.numerator * pow(c.denominator, -1, p)) % p for k, c in raw.items()}
            return {k: v for k, v in out.items() if v}
        den = 1
        for c in raw.values():
            den = den * c.denominator // gcd(den, c.denominator)
        ints = {k: int(c * den) for k, c in raw.items()}
        return self._primitive(ints)

    def _primitive(self, f: IVec) -> IVec:
        if not f:
            return f
        if self.p:
            lc = f[max(f)]
            if lc != 1:
                inv = pow(lc, -1, self.p)
                p = self.p
                return {k: (v * inv) % p for k, v in f.items()}
            return f
        g = _content(f.values())
        if f[max(f)] < 0:
            g = -g
        if g != 1:
            return {k: v // g for k, v in f.items()}
        return f

    def decode(self, f: IVec, scale: int = 1) -> Vector:
        r = self.ring
        vec = [dict() for _ in range(self.rank)]
        for k, c in f.items():
            if self.p:
                val = Fraction(c % self.p)
            else:
                val = Fraction(c) / scale
            vec[k >> r.key_bits][k & r.mono_mask] = val
        return [Poly(r, d) for d in vec]

    def vec_degree(self, f: IVec) -> Optional[int]:
        degs = {self.term_degree(k) for k in f}
        return degs.pop() if len(degs) == 1 else None

    def vec_sugar(self, f: IVec) -> int:
        return max(self.term_degree(k) for k in f)

    # ------------------------------------------------------------ reduction
    def _reducer(self, key: int) -> int:
        hit = self._hit.get(key)
        if hit is not None:
            return hit
        if key in self._miss:
            return -1
        r = self.ring
        cands = self.by_pos.get(key >> r.key_bits)
        if cands:
            H = r.H
            pk = r.C - (key & r.bmask)
            ph = pk | H
            lp = self.lead_packed
            for i in cands:
                if (ph - lp[i]) & H == H:
                    self._hit[key] = i
                    return i
        self._miss.add(key)
        return -1

    def reduce(self, f: IVec, full: bool = True, sugar: int = 0) -> Tuple[IVec, int, int]:
        """Reduce ``f`` (consumed) modulo the current elements.

        Returns ``(remainder, scale, sugar)`` with ``scale * f - remainder`` in
        the module; ``scale`` is a nonzero rational (1 in modular mode).
        """
        elems, leads, sug = self.elems, self.leads, self.sugar
        r = self.ring
        shift, mmask = r.shift, r.mono_mask
        p = self.p
        rem: IVec = {}
        scale = 1
        reducer = self._reducer
        while f:
            lt = max(f)
            i = reducer(lt)
            if i < 0:
                if not full:
                    rem.update(f)
                    break
                rem[lt] = f.pop(lt)
                continue
            c = f[lt]
            g = elems[i]
            gl = leads[i]
            delta = lt - gl
            s = sug[i] + ((lt & mmask) >> shift) - ((gl & mmask) >> shift)
            if s > sugar:
                sugar = s
            get = f.get
            if p:
                # elements are monic
                for k, v in g.items():
                    kk = k + delta
                    val = (get(kk, 0) - c * v) % p
                    if val:
                        f[kk] = val
                    else:
                        del f[kk]
            else:
                gc = g[gl]
                d = gcd(c, gc)
                a, b = gc // d, c // d
                if a < 0:
                    a, b = -a, -b
                if a != 1:
                    for k in f:
                        f[k] *= a
                    for k in rem:
                        rem[k] *= a
                    scale *= a
                if b == 1:
                    for k, v in g.items():
                        kk = k + delta
                        val = get(kk, 0) - v
                        if val:
                            f[kk] = val
                        else:
                            del f[kk]
                elif b == -1:
                    for k, v in g.items():
                        kk = k + delta
                        val = get(kk, 0) + v
                        if val:
                            f[kk] = val
                        else:
                            del f[kk]
                else:
                    for k, v in g.items():
                        kk = k + delta
                        val = get(kk, 0) - b * v
                        if val:
                            f[kk] = val
                        else:
                            del f[kk]
                if a != 1 and len(f) > 8:
                    h = _content(list(f.values()) + list(rem.values()))
                    if h > 1:
                        for k in f:
                            f[k] //= h
                        for k in rem:
                            rem[k] //= h
                        scale = Fraction(scale, h)
        return rem, scale, sugar

    # ------------------------------------------------------------ basis growth
    def add_generators(self, vectors: Iterable[IVec]) -> None:
        for f in vectors:
            if not f:
                continue
            deg = self.vec_degree(f)
            if deg is None:
                self.homogeneous = False
                deg = self.vec_sugar(f)
            self._seq += 1
            heapq.heappush(self.heap, (deg, 0, self._seq, ("gen", dict(f))))

    def _insert(self, h: IVec, sugar: int) -> int:
        h = self._primitive(h)
        k = len(self.elems)
        lt = max(h)
        r = self.ring
        self.elems.append(h)
        self.leads.append(lt)
        self.lead_packed.append(r.C - (lt & r.bmask))
        self.sugar.append(sugar)
        self.active.append(True)
        pos = lt >> r.key_bits
        self._update_pairs(k)
        self.by_pos.setdefault(pos, []).append(k)
        self._miss.clear()
        self.stats["added"] += 1
        return k

    def _update_pairs(self, k: int) -> None:
        r = self.ring
        H = r.H
        lt = self.leads[k]
        pos = lt >> r.key_bits
        ph = self.lead_packed[k]
        ideal = self.rank == 1
        cands = []
        for i in self.by_pos.get(pos, ()):
            if not self.active[i]:
                continue
            L = lcm_packed(self.lead_packed[i], ph, H)
            coprime = ideal and not (r.support(self.lead_packed[i]) & r.support(ph))
            cands.append((i, L, coprime))
        # old pairs whose lcm is a proper multiple chain through h
        dead = []
        for (i, j), (_, L, ppos) in self.pairs.items():
            if ppos != pos or ((L | H) - ph) & H != H:
                continue
            Li = lcm_packed(self.lead_packed[i], ph, H)
            Lj = lcm_packed(self.lead_packed[j], ph, H)
            if Li != L and Lj != L:
                dead.append((i, j))
        for key in dead:
            del self.pairs[key]
        # criterion M/F among the new pairs
        kept: List[Tuple[int, int, bool]] = []
        order = sorted(cands, key=lambda t: (r.from_packed(t[1]), not t[2]))
        for idx, (i, L, cop) in enumerate(order):
            redundant = False
            for j2, (i2, L2, cop2) in enumerate(order):
                if j2 == idx:
                    continue
                if ((L | H) - L2) & H == H:  # L2 divides L
                    if L2 != L:
                        redundant = True
                        break
                    # equal lcm: keep a single representative, prefer the coprime one
                    if cop2 and not cop:
                        redundant = True
                        break
                    if cop2 == cop and j2 < idx:
                        redundant = True
                        break
            if not redundant:
                kept.append((i, L, cop))
        base = pos * r.stride
        for i, L, cop in kept:
            if cop:
                continue
            code = r.from_packed(L)
            deg = (code >> r.shift)
            si = self.sugar[i] + deg - ((self.leads[i] & r.mono_mask) >> r.shift)
            sk = self.sugar[k] + deg - ((lt & r.mono_mask) >> r.shift)
            sug = max(si, sk)
            self.pairs[(i, k)] = (sug, L, pos)
            self._seq += 1
            heapq.heappush(self.heap, (sug, base + code, self._seq, (i, k)))
        # elements whose leads are multiples of the new lead stop spawning pairs
        for i in self.by_pos.get(pos, ()):
            if self.active[i] and ((self.lead_packed[i] | H) - ph) & H == H:
                self.active[i] = False

    def _spoly(self, i: int, j: int) -> Tuple[IVec, int]:
        gi, gj = self.elems[i], self.elems[j]
        li, lj = self.leads[i], self.leads[j]
        r = self.ring
        L = lcm_packed(self.lead_packed[i], self.lead_packed[j], r.H)
        pos = li >> r.key_bits
        Lkey = pos * r.stride + r.from_packed(L)
        di, dj = Lkey - li, Lkey - lj
        ci, cj = gi[li], gj[lj]
        if self.p:
            p = self.p
            f = {k + di: v for k, v in gi.items()}
            for k, v in gj.items():
                kk = k + dj
                val = (f.get(kk, 0) - v) % p
                if val:
                    f[kk] = val
                else:
                    f.pop(kk, None)
        else:
            d = gcd(ci, cj)
            a, b = cj // d, ci // d
            f = {k + di: a * v for k, v in gi.items()}
            for k, v in gj.items():
                kk = k + dj
                val = f.get(kk, 0) - b * v
                if val:
                    f[kk] = val
                else:
                    f.pop(kk, None)
        deg = (Lkey & r.mono_mask) >> r.shift
        sug = max(self.sugar[i] + deg - ((li & r.mono_mask) >> r.shift),
                  self.sugar[j] + deg - ((lj & r.mono_mask) >> r.shift))
        return f, sug

    def complete(self, upto: Optional[int] = None) -> "GBEngine":
        """Process pairs and pending generators of sugar <= ``upto`` (all if None)."""
        if upto is not None and not self.homogeneous:
            raise ValueError("degree truncation requires homogeneous input")
        heap = self.heap
        while heap:
            if upto is not None and heap[0][0] > upto:
                break
            sug, _, _, item = heapq.heappop(heap)
            if item[0] == "gen":
                f = item[1]
            else:
                if item not in self.pairs:
                    continue
                del self.pairs[item]
                self.stats["pairs"] += 1
                f, sug = self._spoly(*item)
            rem, _, sug = self.reduce(f, full=True, sugar=sug)
            if rem:
                self._insert(rem, sug)
            else:
                self.stats["zero"] += 1
        if upto is None:
            self.completed_to = None if heap else float("inf")
        else:
            self.completed_to = upto
        return self

    @property
    def is_complete(self) -> bool:
        return not self.heap

    # ------------------------------------------------------------ results
    def minimal_indices(self) -> List[int]:
        """Indices of elements whose leads are not divisible by another lead."""
        r = self.ring
        H = r.H
        out = []
        n = len(self.elems)
        for i in range(n):
            pi = self.lead_packed[i]
            posi = self.leads[i] >> r.key_bits
            ok = True
            for j in self.by_pos.get(posi, ()):
                if j == i:
                    continue
                pj = self.lead_packed[j]
                if ((pi | H) - pj) & H == H and (pj != pi or j < i):
                    ok = False
                    break
            if ok:
                out.append(i)
        return out

    def reduced(self) -> List[IVec]:
        """Interreduced basis, sorted by lead term."""
        keep = self.minimal_indices()
        sub = GBEngine(self.ring, self.rank, self.shifts, self.p)
        for i in sorted(keep, key=lambda i: self.leads[i]):
            sub.elems.append(self.elems[i])
            sub.leads.append(self.leads[i])
            sub.lead_packed.append(self.lead_packed[i])
            sub.sugar.append(self.sugar[i])
            sub.active.append(True)
            sub.by_pos.setdefault(self.leads[i] >> self.ring.key_bits, []).append(len(sub.elems) - 1)
        out = []
        for idx, f in enumerate(sub.elems):
            lt = sub.leads[idx]
            tail = {k: v for k, v in f.items() if k != lt}
            # the lead itself is only divisible by its own element
            saved = sub.by_pos[lt >> self.ring.key_bits]
            sub.by_pos[lt >> self.ring.key_bits] = [j for j in saved if j != idx]
            sub._hit.clear()
            sub._miss.clear()
            rem, scale, _ = sub.reduce(tail, full=True)
            sub.by_pos[lt >> self.ring.key_bits] = saved
            sub._hit.clear()
            sub._miss.clear()
            if self.p:
                g = dict(rem)
                g[lt] = f[lt]
                out.append(self._primitive(g))
            else:
                g = {k: Fraction(v) for k, v in rem.items()}
                g[lt] = f[lt] * Fraction(scale)
                out.append(self._from_fractions(g))
        return out
