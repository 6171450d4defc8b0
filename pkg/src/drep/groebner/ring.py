"""Commutative polynomial rings over Q with packed-integer monomials.

A monomial ``x_1^e_1 ... x_N^e_N`` is encoded as one Python int whose
integer order *is* degree-reverse-lexicographic order (x_1 > ... > x_N)::

    code = deg << (W*N)  |  (C - packed)

where ``packed`` holds e_N in the most significant W-bit field and ``C`` has
every field saturated. Products of monomials are ``a + b - C``.
Exponents must stay below 2**(W-1) so that the borrow tricks used for
divisibility and lcm stay field-local.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

W = 8
FIELD = (1 << W) - 1
MAX_DEGREE = (1 << (W - 1)) - 1


class PolyRing:
    """Q[x_1, ..., x_N], all variables of internal weight 1, degrevlex order."""

    def __init__(self, names: Sequence[str]):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        n = self.nvars = len(self.names)
        self.index = {s: i for i, s in enumerate(self.names)}
        self.shift = W * n
        self.B = 1 << self.shift
        self.bmask = self.B - 1
        self.ones = sum(1 << (W * i) for i in range(n))
        self.C = FIELD * self.ones
        self.H = (1 << (W - 1)) * self.ones
        # one extra byte for the degree field
        self.key_bits = self.shift + W
        self.stride = 1 << self.key_bits
        self.mono_mask = self.stride - 1
        self.one = self.C  # code of the unit monomial

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"PolyRing({', '.join(self.names)})"

    # -- monomial codes
    def pack(self, exps: Sequence[int]) -> int:
        p = 0
        for i, e in enumerate(exps):
            if e:
                p |= e << (W * i)
        return p

    def monomial(self, exps: Sequence[int]) -> int:
        deg = sum(exps)
        if deg > MAX_DEGREE:
            raise OverflowError(f"monomial degree {deg} exceeds {MAX_DEGREE}")
        return (deg << self.shift) | (self.C - self.pack(exps))

    def variable(self, name_or_index) -> int:
        i = self.index[name_or_index] if isinstance(name_or_index, str) else name_or_index
        exps = [0] * self.nvars
        exps[i] = 1
        return self.monomial(exps)

    def support(self, p: int) -> int:
        """High bit of every nonzero field of a packed exponent vector."""
        return ((p + self.H - self.ones) | p) & self.H

    def packed(self, code: int) -> int:
        return self.C - (code & self.bmask)

    def exponents(self, code: int) -> Tuple[int, ...]:
        p = self.packed(code)
        return tuple((p >> (W * i)) & FIELD for i in range(self.nvars))

    def degree(self, code: int) -> int:
        return code >> self.shift

    def divides(self, a: int, b: int) -> bool:
        pa = self.C - (a & self.bmask)
        pb = self.C - (b & self.bmask)
        return ((pb | self.H) - pa) & self.H == self.H

    def lcm(self, a: int, b: int) -> int:
        return self.from_packed(lcm_packed(self.packed(a), self.packed(b), self.H))

    def from_packed(self, p: int) -> int:
        deg = ((p * self.ones) >> (W * (self.nvars - 1))) & FIELD if self.nvars else 0
        return (deg << self.shift) | (self.C - p)

    def mono_str(self, code: int) -> str:
        parts = []
        for name, e in zip(self.names, self.exponents(code)):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    # -- polynomials
    def poly(self, obj=None) -> "Poly":
        if obj is None:
            return Poly(self, {})
        if isinstance(obj, Poly):
            if obj.ring != self:
                raise ValueError("polynomial from a different ring")
            return obj
        if isinstance(obj, str):
            return self.parse(obj)
        if isinstance(obj, Mapping):
            return Poly(self, {self.monomial(e): Fraction(c) for e, c in obj.items()})
        return Poly(self, {self.one: Fraction(obj)})

    def gen(self, name) -> "Poly":
        return Poly(self, {self.variable(name): Fraction(1)})

    def gens(self) -> List["Poly"]:
        return [self.gen(i) for i in range(self.nvars)]

    def parse(self, text: str) -> "Poly":
        """Parse ``x*y - 2*z^2`` style input (via sympy)."""
        import sympy

        syms = sympy.symbols(self.names) if self.nvars else ()
        if self.nvars == 1:
            syms = (syms,) if not isinstance(syms, tuple) else syms
        local = {n: s for n, s in zip(self.names, syms)}
        expr = sympy.sympify(text.replace("^", "**"), locals=local)
        if self.nvars == 0:
            return self.poly(Fraction(str(expr)))
        sp = sympy.Poly(expr, *syms, domain="QQ")
        terms = {}
        for exps, c in sp.terms():
            terms[self.monomial(exps)] = Fraction(int(c.numerator), int(c.denominator))
        return Poly(self, terms)

    def monomials_of_degree(self, d: int) -> List[int]:
        out = []

        def rec(i, left, acc):
            if i == self.nvars - 1:
                out.append(self.monomial(acc + [left]))
                return
            for e in range(left, -1, -1):
                rec(i + 1, left - e, acc + [e])

        if self.nvars == 0:
            return [self.one] if d == 0 else []
        rec(0, d, [])
        return out

    def dim(self, d: int) -> int:
        """dim_k of the degree-d piece of the ring."""
        if d < 0:
            return 0
        if self.nvars == 0:
            return 1 if d == 0 else 0
        return comb(d + self.nvars - 1, self.nvars - 1)


def lcm_packed(pa: int, pb: int, H: int) -> int:
    ge = ((pa | H) - pb) & H  # high bit set where field(pa) >= field(pb)
    mask = (ge >> (W - 1)) * FIELD
    return (pa & mask) | (pb & ~mask)


class Poly:
    """Polynomial in a PolyRing, coefficients Fraction, terms keyed by monomial code."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: Dict[int, Fraction]):
        self.ring = ring
        self.terms = {m: c for m, c in terms.items() if c}

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValueError("polynomials from different rings")
            return other
        return self.ring.poly(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = Fraction(other)
            return Poly(self.ring, {m: v * c for m, v in self.terms.items()})
        other = self._coerce(other)
        C = self.ring.C
        out: Dict[int, Fraction] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                k = a + b - C
                out[k] = out.get(k, 0) + ca * cb
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = self.ring.poly(1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        return self == self.ring.poly(other)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def lead(self) -> int:
        return max(self.terms)

    def degrees(self) -> set:
        return {m >> self.ring.shift for m in self.terms}

    def homogeneous_degree(self) -> Optional[int]:
        d = self.degrees()
        return d.pop() if len(d) == 1 else None

    def total_degree(self) -> int:
        return max(self.degrees()) if self.terms else -1

    def evaluate(self, values: Sequence) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            v = Fraction(c)
            for x, e in zip(values, self.ring.exponents(m)):
                if e:
                    v *= Fraction(x) ** e
            total += v
        return total

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for k, m in enumerate(sorted(self.terms, reverse=True)):
            c = self.terms[m]
            body = self.ring.mono_str(m)
            mag = abs(c)
            if body == "1":
                body = str(mag)
            elif mag != 1:
                body = f"{mag}*{body}"
            if k == 0:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append(("- " if c < 0 else "+ ") + body)
        return " ".join(out)

    __repr__ = __str__


Vector = List[Poly]


def vector_degree(vec: Sequence[Poly], shifts: Sequence[int]) -> Optional[int]:
    """Internal degree of a homogeneous vector (None when zero or inhomogeneous)."""
    degs = set()
    for p, s in zip(vec, shifts):
        degs |= {d + s for d in p.degrees()}
    return degs.pop() if len(degs) == 1 else None


def zero_vector(ring: PolyRing, rank: int) -> Vector:
    return [ring.poly() for _ in range(rank)]


def unit_vector(ring: PolyRing, rank: int, i: int) -> Vector:
    v = zero_vector(ring, rank)
    v[i] = ring.poly(1)
    return v
