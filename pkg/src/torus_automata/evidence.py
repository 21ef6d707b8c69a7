"""Finite evidence (not proofs) for non-regularity of subgroup languages.

A labeled sample lists every Dom string up to a length bound together with
exact membership in a cyclic subgroup, computed by decoding.  From it we
count prefixes with pairwise different bounded residuals; any Dfa for the
full language needs at least that many states.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from math import gcd
from typing import List, Sequence, Tuple

from . import automata as fa
from .core_ring import poly_mul, residue
from .presentation import Presentation
from .words import format_digits


@dataclass
class LabeledSample:
    maxlen: int
    items: List[Tuple[tuple, bool]]
    descriptor: str = ""

    @property
    def members(self) -> list:
        return [w for w, m in self.items if m]


def _egcd(a: int, b: int) -> tuple:
    """(g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    r0, r1, s0, s1, t0, t1 = a, b, 1, 0, 0, 1
    while r1:
        k = r0 // r1
        r0, r1 = r1, r0 - k * r1
        s0, s1 = s1, s0 - k * s1
        t0, t1 = t1, t0 - k * t1
    if r0 < 0:
        r0, s0, t0 = -r0, -s0, -t0
    return r0, s0, t0


def _bezout(g: Sequence[int]) -> tuple:
    """Coefficients s with sum(s_i * g_i) = gcd(g)."""
    d, coeffs = 0, []
    for x in g:
        d, a, b = _egcd(d, x)
        coeffs = [a * c for c in coeffs] + [b]
    return tuple(coeffs)


class _SubgroupKey:
    """Linear map v -> key with key(v) == zero exactly when v lies in <gen>."""

    def __init__(self, gen: Sequence[int]):
        gen = tuple(gen)
        self.trivial = not any(gen)
        if self.trivial:
            return
        self.d = gcd(*gen)
        self.prim = tuple(x // self.d for x in gen)
        self.s = _bezout(self.prim)
        self.pairs = [(i, j) for i in range(len(gen)) for j in range(i + 1, len(gen))]

    def __call__(self, v: Sequence[int]) -> tuple:
        if self.trivial:
            return tuple(v)
        g = self.prim
        minors = tuple(v[i] * g[j] - v[j] * g[i] for i, j in self.pairs)
        alpha = sum(a * b for a, b in zip(self.s, v))
        return minors + (alpha % self.d,)

    def neg(self, key: tuple) -> tuple:
        if self.trivial:
            return tuple(-x for x in key)
        return tuple(-x for x in key[:-1]) + ((-key[-1]) % self.d,)


def in_cyclic_subgroup(v: Sequence[int], gen: Sequence[int]) -> bool:
    """Is v an integer multiple of gen?"""
    key = _SubgroupKey(gen)
    return not any(key(v))


def _labeled(pres: Presentation, maxlen: int, member) -> list:
    """Dom strings up to maxlen with labels member(decode(w)).

    Values are built prefix by prefix (Horner in reverse), which is the same
    exact arithmetic as decode without re-reducing every string.
    """
    params = pres.params
    n = params.n
    power = [tuple(int(i == 0) for i in range(n))]
    for _ in range(maxlen):
        power.append(_times_x(power[-1], params))
    value: dict = {(): (0,) * n}
    items = []
    for w in fa.enumerate_words(pres.dom, maxlen):
        for i in range(1, len(w) + 1):
            u = w[:i]
            if u not in value:
                v = value[u[:-1]]
                value[u] = tuple(a + u[-1] * b for a, b in zip(v, power[i - 1]))
        items.append((w, member(value[w])))
    return items


def subgroup_language_sample(pres: Presentation, generator: Sequence[int], maxlen: int,
                             descriptor: str = "") -> LabeledSample:
    generator = tuple(generator)
    key = _SubgroupKey(generator)
    items = _labeled(pres, maxlen, lambda v: not any(key(v)))
    return LabeledSample(maxlen, items, descriptor or f"<{list(generator)}>")


def dom_sample(pres: Presentation, maxlen: int) -> LabeledSample:
    """Every Dom string is a member: the regular control language."""
    return LabeledSample(maxlen, [(w, True) for w in fa.enumerate_words(pres.dom, maxlen)], "Dom")


def _times_x(r: tuple, params) -> tuple:
    """Residue of x * r, using x^n = q - sum p_i x^i."""
    top = r[-1]
    out = [0] + list(r[:-1])
    out[0] += top * params.q
    for i, p in enumerate(params.p, start=1):
        out[i] -= top * p
    return tuple(out)


def nerode_lower_bound(sample: LabeledSample, suffix_len: int) -> int:
    """Most same-length prefixes with pairwise different bounded residuals.

    Prefixes of length l are compared on extensions z with
    |z| <= min(suffix_len, maxlen - l), so every word tested lies inside the
    sample and its label is exact for the full language.  Prefixes with
    different residuals are in different Nerode classes, hence the result
    never exceeds the state count of a Dfa for the full language.
    """
    prefixes: dict = defaultdict(set)
    for w, _ in sample.items:
        for i in range(len(w) + 1):
            prefixes[i].add(w[:i])
    residual: dict = defaultdict(list)
    for w in sample.members:
        for i in range(len(w) + 1):
            residual[w[:i]].append(w[i:])
    best = 0
    for length, us in prefixes.items():
        bound = min(suffix_len, sample.maxlen - length)
        sigs = {frozenset(z for z in residual.get(u, ()) if len(z) <= bound) for u in us}
        best = max(best, len(sigs))
    return best


def nerode_report(sample: LabeledSample, suffix_len: int) -> dict:
    return {
        "kind": "EVIDENCE",
        "language": sample.descriptor,
        "maxlen": sample.maxlen,
        "suffix_len": suffix_len,
        "lower_bound": nerode_lower_bound(sample, suffix_len),
        "witness_strings": [format_digits(w) for w in sample.members[:10]],
    }


def leading_zeros(w: Sequence[int]) -> int:
    k = 0
    while k < len(w) and w[k] == 0:
        k += 1
    return k


def zero_prefix_witness(pres: Presentation, k: int) -> tuple:
    """Canonical string of the class of q^k; for k >= 1 it starts with >= k zeros."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    params = pres.params
    w = pres.encode(residue((params.q ** k,), params))
    if leading_zeros(w) < k:
        raise AssertionError(f"canonical string of q^{k} has fewer than {k} leading zeros: {w}")
    return w


def shifted_product(params, k: int) -> tuple:
    """Coefficients of x^k (x + p)^k, lowest degree first (n = 2 form)."""
    f: tuple = (1,)
    base = (params.p[0], 1)
    for _ in range(k):
        f = poly_mul(f, base)
    return (0,) * k + tuple(f)
