"""Multiplication maps phi_g on a presentation, and the 2x2 matrix bridge.

Matrices act on coordinates (h1, h2) of h = h1*x + h2, i.e. the basis
(eta, xi).  Residue vectors are stored lowest degree first as (r0, r1), so
``to_basis((r0, r1)) == (r1, r0)``.  All conversions between the two go
through :func:`to_basis` / :func:`from_basis`.
"""
from __future__ import annotations

from typing import Optional, Sequence

from . import automata as fa
from .automata import Alphabet, Automaton, Join
from .core_ring import ReprParams, normalize, poly_mul, residue
from .presentation import CarryChecker, CarryTransducer, Presentation
from .words import PAD

Mat2 = tuple  # ((a11, a12), (a21, a22))


# -- 2x2 integer matrices ------------------------------------------------------------------

IDENTITY: Mat2 = ((1, 0), (0, 1))


def mat_mul(a: Mat2, b: Mat2) -> Mat2:
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def mat_neg(a: Mat2) -> Mat2:
    return tuple(tuple(-x for x in row) for row in a)


def det(a: Mat2) -> int:
    return a[0][0] * a[1][1] - a[0][1] * a[1][0]


def trace(a: Mat2) -> int:
    return a[0][0] + a[1][1]


def mat_inv(a: Mat2) -> Mat2:
    """Exact inverse of a unimodular matrix via the adjugate."""
    d = det(a)
    if d not in (1, -1):
        raise ValueError(f"matrix {a} is not invertible over Z (det {d})")
    return ((a[1][1] * d, -a[0][1] * d), (-a[1][0] * d, a[0][0] * d))


def mat_pow(a: Mat2, k: int) -> Mat2:
    if k < 0:
        a, k = mat_inv(a), -k
    result = IDENTITY
    while k:
        if k & 1:
            result = mat_mul(result, a)
        a = mat_mul(a, a)
        k >>= 1
    return result


def mat_vec(a: Mat2, v: Sequence[int]) -> tuple:
    return (a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1])


def to_basis(r: Sequence[int]) -> tuple:
    """Residue (r0, r1) -> matrix coordinates (h1, h2) = (r1, r0)."""
    return (r[1], r[0])


def from_basis(h: Sequence[int]) -> tuple:
    return (h[1], h[0])


# -- polynomial <-> matrix (n = 2) ---------------------------------------------------------

def _require_quadratic(params: ReprParams):
    if params.n != 2:
        raise ValueError("the matrix bridge is defined for n = 2 only")


def matrix_of_poly(g: Sequence[int], params: ReprParams) -> Mat2:
    """Matrix of h -> g*h for g = b + a*x (given low-first as ``(b, a)``)."""
    _require_quadratic(params)
    b, a = residue(normalize(g), params)
    p, q = params.p[0], params.q
    return ((b - a * p, a), (a * q, b))


def poly_of_matrix(m: Mat2, params: ReprParams) -> Optional[tuple]:
    """``(b, a)`` with matrix_of_poly((b, a)) == m, or None if m has another shape."""
    _require_quadratic(params)
    a, b = m[0][1], m[1][1]
    p, q = params.p[0], params.q
    if m[0][0] == b - a * p and m[1][0] == a * q:
        return (b, a)
    return None


def is_recognizable_automorphism(m: Mat2, params: ReprParams) -> bool:
    return poly_of_matrix(m, params) is not None and det(m) in (1, -1)


def apply_poly(g: Sequence[int], r: Sequence[int], params: ReprParams) -> tuple:
    """Residue of g * r (both given low-first)."""
    return residue(poly_mul(normalize(g), normalize(r)), params)


# -- relations -----------------------------------------------------------------------------

class DelayRelation(fa.Automaton):
    """{(u, 0u)}: the second track is the first shifted one place up."""

    END = "end"

    def __init__(self, alphabet: Alphabet):
        super().__init__()
        self.alphabet = alphabet.with_arity(2)

    def initial_states(self):
        return (0,)

    def _successors(self, held):
        if held == self.END:
            return []
        out = [((a, held), a) for a in self.alphabet.digits]
        out.append(((PAD, held), self.END))
        return out

    def _accepting(self, held):
        return held == self.END


class _Builder:
    """Wires relations onto numbered tracks; tracks 0 and 1 are the visible pair."""

    def __init__(self, pres: Presentation):
        self.pres = pres
        self.digits = pres.alphabet.digits
        self.parts: list = []
        self.ntracks = 2

    def fresh(self) -> int:
        self.ntracks += 1
        return self.ntracks - 1

    def add(self, aut: Automaton, tracks: tuple):
        self.parts.append((aut, tracks))

    def build(self, labels=("u", "v")) -> Join:
        return Join(self.ntracks, self.digits, self.parts, keep=(0, 1), labels=labels)


def shift_relation(pres: Presentation) -> Join:
    """{(u, v) : v ~ x * u}, as a delay followed by the equivalence."""
    b = _Builder(pres)
    s = b.fresh()
    b.add(DelayRelation(pres.alphabet), (0, s))
    b.add(pres.equiv, (s, 1))
    return b.build()


def scalar_transducer(pres: Presentation, m: int) -> CarryTransducer:
    """{(u, w)} with w the carry machine's digit string for m * u."""
    return CarryTransducer(pres.params, (m,), labels=("u", "w"))


def build_phi_g_relation(g: Sequence[int], pres: Presentation) -> Join:
    """{(u, v) : v ~ g * u} composed from delays, scalar multiples and additions."""
    g = normalize(g)
    b = _Builder(pres)
    terms = []
    shifted = 0
    for j, coeff in enumerate(g):
        if j > 0:
            nxt = b.fresh()
            b.add(DelayRelation(pres.alphabet), (shifted, nxt))
            shifted = nxt
        if coeff == 0:
            continue
        if coeff == 1:
            terms.append(shifted)
        else:
            t = b.fresh()
            b.add(scalar_transducer(pres, coeff), (shifted, t))
            terms.append(t)
    if not terms:
        # g ~ 0: every u relates to the zero class
        b.add(fa.UniversalAutomaton(pres.alphabet), (0,))
        b.add(CarryChecker(pres.params, (1,)), (1,))
        return b.build()
    acc = terms[0]
    for t in terms[1:]:
        w = b.fresh()
        b.add(pres.add_rel, (acc, t, w))
        acc = w
    b.add(pres.equiv, (acc, 1))
    if len(b.parts) == 1 and b.ntracks == 2:
        return Join(2, b.digits, b.parts, labels=("u", "v"))
    return b.build()


def on_dom(rel: Automaton, pres: Presentation) -> Join:
    """Restrict a binary relation to Dom x Dom."""
    return Join(2, pres.alphabet.digits,
                [(rel, (0, 1)), (pres.dom, (0,)), (pres.dom, (1,))], labels=rel.labels)


def image_in_dom(rel: Automaton, u: Sequence[int]) -> Optional[tuple]:
    """Llex-least v with (u, v) accepted; for a functional relation on Dom, the image."""
    return fa.llex_least_member(fa.fix_track(rel, 0, tuple(u)))
