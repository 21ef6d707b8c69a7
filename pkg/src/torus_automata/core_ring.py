"""Integer polynomials modulo t(x) = x^n + p_{n-1} x^{n-1} + ... + p_1 x - q.

Polynomials are plain tuples of ints, lowest degree first, with trailing
zeros stripped (the zero polynomial is ``()``).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

from .errors import InvalidParams, ReductionBudgetExceeded

Poly = tuple


def normalize(coeffs: Iterable[int]) -> Poly:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_add(f: Sequence[int], g: Sequence[int]) -> Poly:
    m = max(len(f), len(g))
    return normalize((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(m))


def poly_sub(f: Sequence[int], g: Sequence[int]) -> Poly:
    return poly_add(f, [-c for c in g])


def poly_mul(f: Sequence[int], g: Sequence[int]) -> Poly:
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return normalize(out)


def poly_scale(f: Sequence[int], k: int) -> Poly:
    return normalize(k * c for c in f)


@dataclass(frozen=True)
class ReprParams:
    """Parameters (p_1, ..., p_{n-1}; q) of the presentation.

    ``p`` may be given as a bare int for the quadratic case.  Construction
    validates ``1 + |p_1| + ... + |p_{n-1}| < |q|`` unless ``validate=False``
    (only useful to reproduce the non-terminating reduction).
    """

    p: tuple[int, ...]
    q: int
    validate: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        p = (self.p,) if isinstance(self.p, int) else tuple(int(x) for x in self.p)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", int(self.q))
        if len(p) < 1:
            raise InvalidParams("degree n must be at least 2 (need at least p_1)")
        if self.q == 0:
            raise InvalidParams("q must be nonzero")
        if self.validate and not 1 + sum(abs(x) for x in p) < abs(self.q):
            lhs = "+".join(["1"] + [f"|p{i + 1}|" for i in range(len(p))])
            raise InvalidParams(
                f"{lhs} < |q| fails: {1 + sum(abs(x) for x in p)} >= {abs(self.q)}"
            )

    @property
    def n(self) -> int:
        return len(self.p) + 1

    @property
    def digit_bound(self) -> int:
        return abs(self.q) - 1

    @property
    def t(self) -> Poly:
        """Coefficients of t(x), lowest degree first."""
        return (-self.q, *self.p, 1)

    @property
    def nies_semukhin(self) -> bool:
        return gcd(self.p[0], self.q) == 1

    def header(self) -> dict:
        return {"n": self.n, "p": list(self.p), "q": self.q}


def integral_part(num: int, den: int) -> int:
    """[num/den] truncated toward zero."""
    if den == 0:
        raise ZeroDivisionError("integral part with zero denominator")
    k = abs(num) // abs(den)
    return k if (num >= 0) == (den > 0) or k == 0 else -k


def reduce(f: Sequence[int], params: ReprParams) -> Poly:
    """Equivalent polynomial with every coefficient below |q| in absolute value.

    Sweeps from the constant term upward, replacing ``k*q*x^i`` by
    ``k*(x^{i+n} + p_{n-1} x^{i+n-1} + ... + p_1 x^{i+1})``.
    """
    a = list(f)
    q, n = params.q, params.n
    budget = (len(a) + 1) * (1 + max((abs(c) for c in a), default=0))
    steps = 0
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(a):
            if abs(a[i]) >= abs(q):
                steps += 1
                if steps > budget:
                    raise ReductionBudgetExceeded(
                        f"reduction did not terminate within {budget} eliminations; "
                        f"1+sum|p_i| < |q| is required"
                    )
                k = integral_part(a[i], q)
                a[i] -= k * q
                if len(a) < i + n + 1:
                    a.extend([0] * (i + n + 1 - len(a)))
                for j, pj in enumerate(params.p):
                    a[i + 1 + j] += k * pj
                a[i + n] += k
                changed = True
            i += 1
    return normalize(a)


def residue(f: Sequence[int], params: ReprParams) -> tuple[int, ...]:
    """Remainder of f modulo the monic t(x): a vector (r_0, ..., r_{n-1})."""
    a = list(f)
    n, t = params.n, params.t
    for top in range(len(a) - 1, n - 1, -1):
        c = a[top]
        if c:
            for j in range(n + 1):
                a[top - n + j] -= c * t[j]
    a = a[:n] + [0] * (n - len(a))
    return tuple(a)


def equivalent(f: Sequence[int], g: Sequence[int], params: ReprParams) -> bool:
    return residue(f, params) == residue(g, params)


def vec_to_poly(v: Sequence[int]) -> Poly:
    return normalize(v)
