"""The group Z^2 x|_A Z and its Cayley automatic representation L = L1 L2.

An element (b, h) is written as the Z-part code of b followed by the Dom
string of h.  The Z-part uses letters outside the digit range of the
presentation, so the split point of a word is unambiguous.  Vectors h are
kept in matrix coordinates (h1, h2); see :mod:`torus_automata.linmaps`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

from . import automata as fa
from .automata import Alphabet, Automaton, Dfa, Join
from .errors import NotRecognizable
from .linmaps import (
    Mat2, build_phi_g_relation, det, from_basis, mat_pow, mat_vec, on_dom, poly_of_matrix,
    to_basis,
)
from .presentation import Presentation
from .words import PAD


@dataclass(frozen=True)
class SemiElement:
    b: int
    h: tuple

    def __post_init__(self):
        object.__setattr__(self, "h", tuple(self.h))


def multiply(g1: SemiElement, g2: SemiElement, A: Mat2) -> SemiElement:
    """(b1, h1)(b2, h2) = (b1 + b2, A^b2 h1 + h2)."""
    Ah = mat_vec(mat_pow(A, g2.b), g1.h)
    return SemiElement(g1.b + g2.b, tuple(x + y for x, y in zip(Ah, g2.h)))


def identity_element(n: int = 2) -> SemiElement:
    return SemiElement(0, (0,) * n)


def inverse(g: SemiElement, A: Mat2) -> SemiElement:
    h = mat_vec(mat_pow(A, -g.b), g.h)
    return SemiElement(-g.b, tuple(-x for x in h))


def generators(n: int = 2) -> list:
    """g0 = (1, 0) and g_i = (0, e_i)."""
    gens = [SemiElement(1, (0,) * n)]
    for i in range(n):
        gens.append(SemiElement(0, tuple(int(j == i) for j in range(n))))
    return gens


# -- the Z factor --------------------------------------------------------------------------

class ZCodec:
    """0 -> empty; otherwise a sign letter and the binary magnitude, least significant first."""

    def __init__(self, first_code: int):
        self.plus, self.minus, self.bit0, self.bit1 = range(first_code, first_code + 4)
        self.digits = (self.plus, self.minus, self.bit0, self.bit1)

    def encode(self, b: int) -> tuple:
        if b == 0:
            return ()
        out = [self.plus if b > 0 else self.minus]
        m = abs(b)
        while m:
            out.append(self.bit1 if m & 1 else self.bit0)
            m >>= 1
        return tuple(out)

    def decode(self, w: Sequence[int]) -> int:
        w = tuple(w)
        if not w:
            return 0
        if w[0] not in (self.plus, self.minus) or len(w) < 2 or w[-1] != self.bit1:
            raise ValueError(f"not a Z code: {w}")
        m = 0
        for i, c in enumerate(w[1:]):
            if c not in (self.bit0, self.bit1):
                raise ValueError(f"not a Z code: {w}")
            m |= (c == self.bit1) << i
        return m if w[0] == self.plus else -m

    def language(self) -> Dfa:
        """Valid codes: empty, or sign then bits ending in 1."""
        alpha = Alphabet(1, self.digits)
        sign = {(self.plus,): 1, (self.minus,): 1}
        bits = {(self.bit0,): 2, (self.bit1,): 3}
        return Dfa(alpha, [sign, bits, bits, bits], 0, {0, 3})

    def successor_relation(self) -> Join:
        """{(code(b), code(b + 1))}."""
        lang = self.language()
        return Join(2, self.digits,
                    [(_ZSuccessor(self), (0, 1)), (lang, (0,)), (lang, (1,))],
                    labels=("b", "b+1"))

    def identity_relation(self) -> Join:
        lang = self.language()
        return Join(2, self.digits,
                    [(fa.IdentityRelation(Alphabet(2, self.digits)), (0, 1)), (lang, (0,))],
                    labels=("b", "b"))


class _ZSuccessor(Automaton):
    """Binary increment/decrement; canonical shape is enforced by the code language."""

    def __init__(self, z: ZCodec):
        super().__init__()
        self.z = z
        self.alphabet = Alphabet(2, z.digits)

    def initial_states(self):
        return ("start",)

    def _successors(self, state):
        z = self.z
        b0, b1 = z.bit0, z.bit1
        if state == "start":
            return [((PAD, z.plus), "one"), ((z.plus, z.plus), "inc"),
                    ((z.minus, z.minus), "dec"), ((z.minus, PAD), "neg_one")]
        if state == "one":  # 0 -> +1
            return [((PAD, b1), "done")]
        if state == "neg_one":  # -1 -> 0
            return [((b1, PAD), "done")]
        if state == "inc":
            return [((b1, b0), "inc"), ((b0, b1), "copy"), ((PAD, b1), "done")]
        if state == "dec":  # magnitude decreases by one
            return [((b0, b1), "dec"), ((b1, b0), "copy"), ((b1, PAD), "done")]
        if state == "copy":
            return [((b0, b0), "copy"), ((b1, b1), "copy")]
        return []

    def _accepting(self, state):
        return state in ("copy", "done")


# -- concatenation of two relations over disjoint alphabets --------------------------------

_FIN = "fin"


class ConcatProduct(Automaton):
    """{(u1 v1, u2 v2) : (u1, u2) in first, (v1, v2) in second}.

    The first relation reads letters of the Z factor, the second reads
    presentation digits.  Each track moves from phase 1 (Z letters) to phase
    2 (digits) to phase 3 (padding).  Digits of the track that reaches its
    second part earlier wait in a short buffer until the other track catches
    up or ends.
    """

    def __init__(self, first: Automaton, second: Automaton, max_buffer: int = 8,
                 labels: Optional[tuple] = None):
        super().__init__()
        self.first = fa.determinize(first)
        self.second = fa.determinize(second)
        self.zset = frozenset(first.alphabet.digits)
        self.qdigits = second.alphabet.digits
        if self.zset & set(self.qdigits):
            raise ValueError("the two alphabets must be disjoint")
        self.alphabet = Alphabet(2, tuple(self.qdigits) + tuple(first.alphabet.digits))
        self.max_buffer = max_buffer
        self.labels = labels
        self._options = {
            1: tuple(first.alphabet.digits) + tuple(self.qdigits) + (PAD,),
            2: tuple(self.qdigits) + (PAD,),
            3: (PAD,),
        }

    def initial_states(self):
        return ((self.first.initial, self.second.initial, (1, 1), ((), ())),)

    def _feed(self, s2, queues, ended):
        """Pair up buffered digits; a track that has ended contributes padding."""
        q0, q1 = list(queues[0]), list(queues[1])
        while q0 or q1:
            if q0 and q1:
                sym = (q0.pop(0), q1.pop(0))
            elif q0 and ended[1]:
                sym = (q0.pop(0), PAD)
            elif q1 and ended[0]:
                sym = (PAD, q1.pop(0))
            else:
                break
            ts = self.second.targets(s2, sym)
            if not ts:
                return None
            s2 = ts[0]
        if len(q0) > self.max_buffer or len(q1) > self.max_buffer:
            return None
        return s2, (tuple(q0), tuple(q1))

    def _step(self, state, sym):
        s1, s2, phases, queues = state
        new_phases = list(phases)
        view = []
        queues = [list(queues[0]), list(queues[1])]
        for t, x in enumerate(sym):
            ph = phases[t]
            if x is PAD:
                new_phases[t] = 3
                view.append(PAD)
            elif x in self.zset:
                if ph != 1:
                    return None
                view.append(x)
            else:
                if ph == 3:
                    return None
                new_phases[t] = 2
                view.append(PAD)
                queues[t].append(x)
        if all(v is PAD for v in view):
            if s1 != _FIN:
                if not self.first.is_accepting(s1):
                    return None
                s1 = _FIN
        else:
            if s1 == _FIN:
                return None
            ts = self.first.targets(s1, tuple(view))
            if not ts:
                return None
            s1 = ts[0]
        ended = tuple(p == 3 for p in new_phases)
        fed = self._feed(s2, queues, ended)
        if fed is None:
            return None
        s2, qs = fed
        return (s1, s2, tuple(new_phases), qs)

    def targets(self, state, sym) -> list:
        if any(x is not PAD and x not in self.zset and x not in self.qdigits for x in sym):
            return []
        if all(x is PAD for x in sym):
            return []
        t = self._step(state, tuple(sym))
        return [t] if t is not None else []

    def _successors(self, state):
        phases = state[2]
        out = []
        for x0 in self._options[phases[0]]:
            for x1 in self._options[phases[1]]:
                if x0 is PAD and x1 is PAD:
                    continue
                t = self._step(state, (x0, x1))
                if t is not None:
                    out.append(((x0, x1), t))
        return out

    def _accepting(self, state):
        s1, s2, _, queues = state
        if s1 != _FIN and not self.first.is_accepting(s1):
            return False
        fed = self._feed(s2, queues, (True, True))
        return fed is not None and self.second.is_accepting(fed[0])


# -- the representation --------------------------------------------------------------------

@dataclass
class SemiRepresentation:
    A: Mat2
    g: tuple
    pres: Presentation
    z: ZCodec
    _multipliers: dict = field(default_factory=dict, repr=False)

    @property
    def n(self) -> int:
        return self.pres.params.n

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet(1, tuple(self.pres.alphabet.digits) + self.z.digits)

    def encode(self, g: SemiElement) -> tuple:
        return self.z.encode(g.b) + self.pres.encode(from_basis(g.h))

    def split(self, w: Sequence[int]) -> tuple:
        w = tuple(w)
        k = 0
        while k < len(w) and w[k] in self.z.digits:
            k += 1
        return w[:k], w[k:]

    def decode(self, w: Sequence[int]) -> SemiElement:
        u, v = self.split(w)
        return SemiElement(self.z.decode(u), to_basis(self.pres.decode(v)))

    def in_language(self, w: Sequence[int]) -> bool:
        u, v = self.split(w)
        return fa.accepts(self.z.language(), u) and self.pres.in_dom(v)

    @cached_property
    def action_relation(self) -> Join:
        """R_A = {(v, v') in Dom^2 : decode(v') = A decode(v)}."""
        return on_dom(build_phi_g_relation(self.g, self.pres), self.pres)

    def unit_translation(self, i: int) -> Automaton:
        """{(v, v') in Dom^2 : decode(v') = decode(v) + e_i}, i >= 1."""
        e = tuple(int(j == i - 1) for j in range(self.n))
        word = self.pres.encode(from_basis(e))
        return fa.fix_track(self.pres.add_on_dom, 1, word)

    def multiplier(self, i: int) -> ConcatProduct:
        if i not in self._multipliers:
            self._multipliers[i] = build_multiplier(self, i)
        return self._multipliers[i]

    def apply(self, i: int, w: Sequence[int]) -> Optional[tuple]:
        """The image of w under right multiplication by g_i, read off the automaton."""
        imgs = fa.images(self.multiplier(i), w)
        if len(imgs) != 1:
            return None
        return next(iter(imgs))


def build_representation(A: Mat2, pres: Presentation) -> SemiRepresentation:
    params = pres.params
    g = poly_of_matrix(A, params)
    if g is None:
        raise NotRecognizable(
            f"matrix {A} is not multiplication by a polynomial for (p, q) = ({params.p[0]}, {params.q})")
    if det(A) not in (1, -1):
        raise NotRecognizable(f"matrix {A} has determinant {det(A)}, not +-1")
    z = ZCodec(params.digit_bound + 1)
    return SemiRepresentation(A, g, pres, z)


def build_multiplier(rep: SemiRepresentation, i: int) -> ConcatProduct:
    """Right multiplication by g_i as a binary relation on L."""
    if not 0 <= i <= rep.n:
        raise IndexError(f"generator index {i} out of range 0..{rep.n}")
    if i == 0:
        return ConcatProduct(rep.z.successor_relation(), rep.action_relation,
                             labels=("w", "w*g0"))
    return ConcatProduct(rep.z.identity_relation(), rep.unit_translation(i),
                         labels=("w", f"w*g{i}"))


def verify_property_a(rep: SemiRepresentation, samples: Sequence[SemiElement] = ()) -> dict:
    """Regularity of the fibre language and of the action relation, with spot checks."""
    dom = rep.pres.dom
    R = rep.action_relation
    checks = []
    basis = [tuple(int(j == i) for j in range(rep.n)) for i in range(rep.n)]
    for h in list(basis) + [SemiElement(0, s.h).h for s in samples]:
        v = rep.pres.encode(from_basis(h))
        Av = rep.pres.encode(from_basis(mat_vec(rep.A, h)))
        checks.append({"h": list(h), "accepts_Ah": fa.accepts(R, v, Av),
                       "accepts_h": fa.accepts(R, v, v), "fixed": mat_vec(rep.A, h) == tuple(h)})
    ok = all(c["accepts_Ah"] and (c["fixed"] or not c["accepts_h"]) for c in checks)
    return {
        "L_Zn": {"states": dom.num_states, "nonempty": not fa.is_empty(dom)},
        "R_A": {"nonempty": not fa.is_empty(R), "parts": len(R.parts)},
        "spot_checks": checks,
        "ok": ok,
    }
