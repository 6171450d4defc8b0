"""Hilbert series of monomial ideals (exponent-tuple input).

HN(S/J) is the numerator of the Hilbert series over (1 - t)^N, computed by the
pivot recursion  HN(J) = HN(J + (m)) + t^deg(m) HN(J : m).
"""

from __future__ import annotations

from math import comb
from typing import Dict, List, Sequence, Tuple

Exps = Tuple[int, ...]


def _poly_add(a: List[int], b: List[int], shift: int = 0) -> List[int]:
    n = max(len(a), len(b) + shift)
    out = a + [0] * (n - len(a))
    for i, c in enumerate(b):
        out[i + shift] += c
    return out


def _poly_mul(a: List[int], b: List[int]) -> List[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _divides(a: Exps, b: Exps) -> bool:
    return all(x <= y for x, y in zip(a, b))


def minimalize(gens: Sequence[Exps]) -> List[Exps]:
    gens = sorted(set(gens), key=lambda e: (sum(e), e))
    out: List[Exps] = []
    for g in gens:
        if not any(_divides(h, g) for h in out):
            out.append(g)
    return out


def hilbert_numerator(gens: Sequence[Exps], nvars: int) -> List[int]:
    """Coefficients of HN(S/J) in t, lowest degree first."""
    return _hn(minimalize(gens), nvars)


def _hn(gens: List[Exps], nvars: int) -> List[int]:
    if not gens:
        return [1]
    if any(sum(g) == 0 for g in gens):
        return [0]
    # pairwise coprime generators: product of (1 - t^deg)
    used = [0] * nvars
    coprime = True
    for g in gens:
        for i, e in enumerate(g):
            if e:
                if used[i]:
                    coprime = False
                    break
                used[i] = 1
        if not coprime:
            break
    if coprime:
        out = [1]
        for g in gens:
            d = sum(g)
            out = _poly_mul(out, [1] + [0] * (d - 1) + [-1])
        return out
    # pivot on the most frequent variable, exponent = a median of its exponents
    counts = [0] * nvars
    for g in gens:
        for i, e in enumerate(g):
            if e:
                counts[i] += 1
    v = max(range(nvars), key=lambda i: counts[i])
    exps = sorted(g[v] for g in gens if g[v])
    e = exps[len(exps) // 2]
    # the pivot must stay outside J, so stay below any pure power of x_v in J;
    # such a power has exponent >= 2 because x_v appears in several generators
    for g in gens:
        if g[v] and sum(g) == g[v]:
            e = min(e, g[v] - 1)
    pivot = tuple(e if i == v else 0 for i in range(nvars))
    # J + (pivot)
    plus = minimalize(list(gens) + [pivot])
    # J : pivot
    colon = minimalize([tuple(max(x - y, 0) for x, y in zip(g, pivot)) for g in gens])
    a = _hn(plus, nvars)
    b = _hn(colon, nvars)
    return _poly_add(a, b, shift=e)


def series_coefficient(numerator: Sequence[int], nvars: int, d: int) -> int:
    """Coefficient of t^d in numerator / (1 - t)^nvars."""
    total = 0
    for k, c in enumerate(numerator):
        if c and k <= d:
            if nvars == 0:
                total += c if k == d else 0
            else:
                total += c * comb(d - k + nvars - 1, nvars - 1)
    return total


def trim(poly: List[int]) -> List[int]:
    out = list(poly)
    while out and out[-1] == 0:
        out.pop()
    return out


def shifted(numerator: Sequence[int], shift: int) -> Dict[int, int]:
    """Numerator as a dict ``{exponent: coeff}`` after multiplying by t^shift."""
    return {k + shift: c for k, c in enumerate(numerator) if c}
