"""Pell and Pell-type equations, and the recognizable 2x2 automorphisms.

Everything is exact integer arithmetic; interval conditions with square
roots are compared after squaring.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, isqrt
from typing import Iterator, List, NamedTuple, Optional

from .linmaps import IDENTITY, Mat2, det, mat_mul, mat_neg, trace

RHS_VALUES = (1, -1, 4, -4)


class ContinuedFraction(NamedTuple):
    a0: int
    period: tuple


@dataclass(frozen=True)
class PellSolution:
    """(x, y) with x^2 - n*y^2 == rhs; for rhs = +-4 read (c, a)."""

    x: int
    y: int
    rhs: int
    n: int

    def __post_init__(self):
        if self.x * self.x - self.n * self.y * self.y != self.rhs:
            raise ValueError(f"({self.x}, {self.y}) does not solve x^2 - {self.n}y^2 = {self.rhs}")

    @property
    def pair(self) -> tuple:
        return (self.x, self.y)


def _is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def _check_n(n: int):
    if n <= 0 or _is_square(n):
        raise ValueError(f"n must be a positive nonsquare integer, got {n}")


def _floor_div_sqrt(P: int, Q: int, n: int) -> int:
    """floor((P + sqrt n) / Q) for Q != 0, n nonsquare."""

    def below(k: int) -> bool:  # k <= (P + sqrt n) / Q, compared after squaring
        t = k * Q - P
        if Q > 0:
            return t < 0 or t * t < n
        return t > 0 and t * t > n

    a = (P + isqrt(n)) // Q
    while not below(a):
        a -= 1
    while below(a + 1):
        a += 1
    return a


def continued_fraction_sqrt(n: int) -> ContinuedFraction:
    """a0 and the repeating period of sqrt(n)."""
    _check_n(n)
    a0 = isqrt(n)
    m, d, a = 0, 1, a0
    period = []
    while a != 2 * a0:
        m = d * a - m
        d = (n - m * m) // d
        a = (a0 + m) // d
        period.append(a)
    return ContinuedFraction(a0, tuple(period))


def _convergents(quotients: Iterator[int]) -> Iterator[tuple]:
    h0, h1 = 1, 0
    k0, k1 = 0, 1
    for a in quotients:
        h0, h1 = a * h0 + h1, h0
        k0, k1 = a * k0 + k1, k0
        yield h0, k0


def _sqrt_quotients(n: int) -> Iterator[int]:
    cf = continued_fraction_sqrt(n)
    yield cf.a0
    while True:
        yield from cf.period


def _fund_unit_pell(n: int) -> PellSolution:
    """Smallest x + y*sqrt(n) > 1 with norm +-1 (from the sqrt(n) convergents)."""
    for x, y in _convergents(_sqrt_quotients(n)):
        v = x * x - n * y * y
        if v in (1, -1):
            return PellSolution(x, y, v, n)
    raise AssertionError("unreachable")


def _fund_unit_half(n: int) -> PellSolution:
    """Smallest (c + a*sqrt n)/2 > 1 with c^2 - n a^2 = +-4, for n = 1 (mod 4).

    Such a unit is u + v*w with w = (1 + sqrt n)/2, and u/v is a convergent
    of (sqrt n - 1)/2; then c = 2u + v and a = v.
    """
    quotients = (_floor_div_sqrt(P, Q, n) for P, Q in _pq_orbit(-1, 2, n))
    for u, v in _convergents(quotients):
        if v <= 0:
            continue
        c, a = 2 * u + v, v
        val = c * c - n * a * a
        if val in (4, -4) and c > 0:
            return PellSolution(c, a, val, n)
    raise AssertionError("unreachable")


def _pq_orbit(P: int, Q: int, n: int) -> Iterator[tuple]:
    while True:
        yield P, Q
        a = _floor_div_sqrt(P, Q, n)
        P = a * Q - P
        Q = (n - P * P) // Q


def compose(s1: PellSolution, s2: PellSolution) -> PellSolution:
    """Brahmagupta composition; divided by 2 for the +-4 equations."""
    if s1.n != s2.n:
        raise ValueError("solutions for different n")
    x = s1.x * s2.x + s1.n * s1.y * s2.y
    y = s1.x * s2.y + s1.y * s2.x
    if abs(s1.rhs) == 4:
        return PellSolution(x // 2, y // 2, s1.rhs * s2.rhs // 4, s1.n)
    return PellSolution(x, y, s1.rhs * s2.rhs, s1.n)


def _fund_unit(n: int, four: bool) -> PellSolution:
    if not four:
        return _fund_unit_pell(n)
    if n % 4 == 1:
        return _fund_unit_half(n)
    if n % 4 == 0:
        u = _fund_unit_pell(n // 4)
        return PellSolution(2 * u.x, u.y, 4 * u.rhs, n)
    u = _fund_unit_pell(n)
    return PellSolution(2 * u.x, 2 * u.y, 4 * u.rhs, n)


def fundamental_solution(n: int, rhs: int) -> Optional[PellSolution]:
    """Minimal positive solution of x^2 - n y^2 = rhs, or None if there is none."""
    _check_n(n)
    if rhs not in RHS_VALUES:
        raise ValueError(f"rhs must be one of {RHS_VALUES}")
    unit = _fund_unit(n, abs(rhs) == 4)
    if unit.rhs == rhs:
        return unit
    if rhs < 0:
        return None
    return compose(unit, unit)


def generate_solutions(fund: PellSolution, count: int) -> List[PellSolution]:
    """The first ``count`` positive solutions with the same rhs, increasing."""
    if count <= 0:
        return []
    step = fund if fund.rhs > 0 else compose(fund, fund)
    out = [fund]
    while len(out) < count:
        out.append(compose(out[-1], step))
    return out


def cayley_lift(sol: PellSolution) -> PellSolution:
    """Odd solution of c^2 - n a^2 = +-4 -> solution of x^2 - n y^2 = +-1."""
    if abs(sol.rhs) != 4:
        raise ValueError("cayley_lift expects a solution of the +-4 equation")
    u, v = sol.x, sol.y
    if u % 2 == 0 or v % 2 == 0:
        raise ValueError(f"cayley_lift needs an odd solution, got ({u}, {v})")
    if sol.rhs == 4:
        return PellSolution((u * u - 3) * u // 2, (u * u - 1) * v // 2, 1, sol.n)
    return PellSolution((u * u + 3) * u // 2, (u * u + 1) * v // 2, -1, sol.n)


def brute_force_fundamental(n: int, rhs: int, ymax: int = 10_000) -> Optional[PellSolution]:
    """Reference search over y; x is recovered by an exact square root."""
    for y in range(1, ymax + 1):
        x2 = rhs + n * y * y
        if x2 > 0 and _is_square(x2):
            return PellSolution(isqrt(x2), y, rhs, n)
    return None


# -- classification ------------------------------------------------------------------------

@dataclass(frozen=True)
class SearchBounds:
    """``param_max`` bounds the family parameter: |r| where the family is indexed
    by r, otherwise |p|.  ``c_max`` bounds |c|; ``p_max`` optionally filters |p|."""

    param_max: int = 12
    c_max: int = 50
    p_max: Optional[int] = None


@dataclass
class ClassifiedFamily:
    n: int
    case: str
    p: int
    q: int
    param: dict
    matrices: list = field(default_factory=list)  # (c, a, A)

    def records(self) -> list:
        return [
            {"n": self.n, "case": self.case, "p": self.p, "q": self.q, "c": c, "a": a,
             "matrix": [list(row) for row in A], "det": det(A)}
            for c, a, A in self.matrices
        ]


def matrix_from_ca(p: int, q: int, c: int, a: int) -> Mat2:
    """The matrix ((c-ap)/2, a; aq, (c+ap)/2)."""
    if (c - a * p) % 2:
        raise ValueError("c and a*p must have the same parity")
    return (((c - a * p) // 2, a), (a * q, (c + a * p) // 2))


def admissible(p: int, q: int) -> bool:
    return 1 + abs(p) < abs(q) and gcd(p, q) == 1


def _family(n, case, p, q, param, pairs) -> ClassifiedFamily:
    fam = ClassifiedFamily(n, case, p, q, param)
    for c, a in sorted(set(pairs)):
        fam.matrices.append((c, a, matrix_from_ca(p, q, c, a)))
    return fam


def _signed(pairs) -> list:
    out = []
    for c, a in pairs:
        for sc in (1, -1) if c else (1,):
            for sa in (1, -1):
                out.append((sc * c, sa * a))
    return out


def _positive_pairs(n: int, c_max: int) -> list:
    """All (c, a), c, a > 0, with c^2 - n a^2 = +-4 and c <= c_max."""
    unit = _fund_unit(n, True)
    out = []
    cur = unit
    while cur.x <= c_max:
        out.append((cur.x, cur.y))
        cur = compose(cur, unit)
    return out


def enumerate_theorem3(n: int, bounds: SearchBounds = SearchBounds()) -> List[ClassifiedFamily]:
    """Nontrivial recognizable matrices for n = p^2 + 4q, one family per (p, q)."""
    R, C = bounds.param_max, bounds.c_max
    span = range(-R, R + 1)
    fams: list = []

    def emit(case, p, q, param, pairs):
        if bounds.p_max is not None and abs(p) > bounds.p_max:
            return
        pairs = [(c, a) for c, a in pairs if abs(c) <= C]
        if pairs:
            fams.append(_family(n, case, p, q, param, pairs))

    if n == -4:
        for r in span:
            if abs(r) >= 4 and r % 2 == 0:
                emit("n=-4", 2 * r, -(r * r + 1), {"r": r}, [(0, 1), (0, -1)])
    elif n == -3:
        for r in span:
            if (r <= -3 or r >= 2) and r % 3 in (0, 2):
                pairs = [(c, a) for c in (1, -1) for a in (1, -1)]
                emit("n=-3", 2 * r + 1, -(r * r + r + 1), {"r": r}, pairs)
    elif n == 1:
        for r in span:
            if r <= -4 or r >= 3:
                emit("n=1", 2 * r + 1, -(r * r + r), {"r": r}, [(0, 2), (0, -2)])
    elif n == 4:
        for r in span:
            if abs(r) >= 4 and r % 2 == 0:
                emit("n=4", 2 * r, 1 - r * r, {"r": r}, [(0, 1), (0, -1)])
    elif n > 0 and not _is_square(n) and n % 4 == 0:
        s = n // 4
        pairs = _signed(_positive_pairs(n, C))
        for r in span:
            ar = abs(r)
            if not ((ar + 1) ** 2 < s or (ar > 1 and (ar - 1) ** 2 > s + 2)):
                continue
            if gcd(r, s) == 1 and (r - s) % 2:
                emit("n=0 mod 4", 2 * r, s - r * r, {"r": r, "s": s}, pairs)
    elif n > 0 and not _is_square(n) and n % 4 == 1:
        pairs = _signed(_positive_pairs(n, C))
        for p in span:
            ap = abs(p)
            if p % 2 == 0 or gcd(p, n) != 1:
                continue
            if (ap + 2) ** 2 < n or (ap > 2 and (ap - 2) ** 2 > n + 8):
                emit("n=1 mod 4", p, (n - p * p) // 4, {}, pairs)
    return fams


def brute_force_theorem3(n: int, p_max: int = 12, c_max: int = 50) -> set:
    """Raw-predicate scan: {(p, q, c, a)} with a != 0, |p| <= p_max, |c| <= c_max."""
    out = set()
    for p in range(-p_max, p_max + 1):
        if (n - p * p) % 4:
            continue
        q = (n - p * p) // 4
        if not admissible(p, q):
            continue
        for c in range(-c_max, c_max + 1):
            for rhs in (4, -4):
                num = c * c - rhs
                if n == 0:
                    continue  # c^2 = +-4 leaves a free, but no (p, q) is admissible
                if num % n:
                    continue
                a2 = num // n
                if a2 <= 0 or not _is_square(a2):
                    continue
                a = isqrt(a2)
                out.add((p, q, c, a))
                out.add((p, q, c, -a))
    return out


def enumerate_within(n: int, p_max: int = 12, c_max: int = 50) -> set:
    """Enumerator output as {(p, q, c, a)}, restricted to |p| <= p_max."""
    fams = enumerate_theorem3(n, SearchBounds(p_max, c_max, p_max))
    return flatten(fams)


def flatten(fams: List[ClassifiedFamily]) -> set:
    return {(f.p, f.q, c, a) for f in fams for c, a, _ in f.matrices}


# -- the monoid S_{p,q} --------------------------------------------------------------------

def in_S(A: Mat2, p: int, q: int) -> bool:
    a, b = A[0][1], A[1][1]
    return A[0][0] == b - a * p and A[1][0] == a * q and det(A) in (1, -1)


def element_order(A: Mat2, limit: int = 12) -> Optional[int]:
    """Smallest k <= limit with A^k = I, or None (infinite order for these matrices)."""
    M = A
    for k in range(1, limit + 1):
        if M == IDENTITY:
            return k
        M = mat_mul(M, A)
    return None


def monoid_structure(p: int, q: int, c_bound: int = 50) -> dict:
    """Collect S_{p,q} up to |c| <= c_bound and classify it by its torsion."""
    n = p * p + 4 * q
    elems = {IDENTITY, mat_neg(IDENTITY)}
    for fam in enumerate_theorem3(n, SearchBounds(abs(p), c_bound, abs(p))):
        if (fam.p, fam.q) == (p, q):
            elems.update(A for _, _, A in fam.matrices)
    elems_sorted = sorted(elems)
    closed = all(in_S(mat_mul(A, B), p, q) for A in elems_sorted for B in elems_sorted)
    orders = {A: element_order(A) for A in elems_sorted}
    finite = [o for o in orders.values() if o is not None]
    if any(o is None for o in orders.values()):
        kind = "Z x Z2"
    elif max(finite) == 6:
        kind = "Z6"
    elif max(finite) == 4:
        kind = "Z4"
    elif len(elems_sorted) == 4:
        kind = "Z2 x Z2"
    else:
        kind = "Z2"
    return {
        "p": p, "q": q, "n": n, "type": kind, "size": len(elems_sorted), "closed": closed,
        "orders": sorted((o if o is not None else 0) for o in orders.values()),
        "elements": elems_sorted,
        "traces": [trace(A) for A in elems_sorted],
    }
