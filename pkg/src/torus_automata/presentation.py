"""The automatic presentation of (Z^n, +) attached to t(x) = x^n + ... + p_1 x - q.

Everything here is driven by one carry recurrence.  Reading position i of a
tuple of digit strings with weights w, the running sum
``s = r_0 + sum_j w_j * d_j`` is split as ``s = k*q + c``.  The carries then
move one position up:

    r_0 <- r_1 + p_1 k,  ...,  r_{n-2} <- r_{n-1} + p_{n-1} k,  r_{n-1} <- k

because ``k*q*x^i`` is equivalent to ``k*(x^{i+n} + ... + p_1 x^{i+1})``.
The equivalence checker insists on ``c == 0``; the addition transducer emits
``c`` (truncated division keeps ``|c| <= |q|-1`` with the sign of ``s``).
"""
from __future__ import annotations

from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from . import automata as fa
from .automata import Alphabet, Automaton, Join, advance_mask
from .core_ring import ReprParams, integral_part, reduce, residue
from .errors import CarryBoundError, CarryCycleError
from .words import PAD, DigitString, check_digits, string_to_poly


def declared_carry_bounds(params: ReprParams) -> tuple:
    """Bounds on |r_0|, ..., |r_{n-1}| for the equivalence and addition machines."""
    n, qq = params.n, abs(params.q) - 1
    bounds = [0] * n
    bounds[n - 1] = qq
    for j in range(1, n - 1):
        bounds[j] = qq * (1 + sum(abs(params.p[i]) for i in range(j, n - 1)))
    bounds[0] = qq * qq
    return tuple(bounds)


def generic_carry_bounds(params: ReprParams, weights: Sequence[int]) -> tuple:
    """Valid (not tight) bounds for an arbitrary weight vector."""
    qq = abs(params.q)
    total_p = 1 + sum(abs(x) for x in params.p)
    w = sum(abs(x) for x in weights) * (qq - 1)
    k = -(-w // (qq - total_p))
    n = params.n
    return tuple(k * (1 + sum(abs(params.p[i]) for i in range(j, n - 1))) for j in range(n - 1)) + (k,)


def step_carries(params: ReprParams, carries: tuple, k: int) -> tuple:
    p = params.p
    return tuple(carries[j + 1] + p[j] * k for j in range(len(p))) + (k,)


class _CarryMachine(Automaton):
    def __init__(self, params: ReprParams, weights: Sequence[int], arity: int,
                 bounds: Optional[tuple], labels):
        super().__init__()
        self.params = params
        self.weights = tuple(weights)
        self.alphabet = Alphabet.signed(arity, params.digit_bound)
        self.bounds = bounds if bounds is not None else generic_carry_bounds(params, weights)
        self.labels = labels
        self.zero = (0,) * params.n

    def initial_states(self):
        return ((self.zero, 0),)

    def _checked(self, carries: tuple, k: int) -> tuple:
        new = step_carries(self.params, carries, k)
        for r, b in zip(new, self.bounds):
            if abs(r) > b:
                raise CarryBoundError(f"carry vector {new} exceeds bounds {self.bounds}")
        return new


class CarryChecker(_CarryMachine):
    """Accepts the convolution of (w_1, ..., w_m) iff sum_j weights[j]*poly(w_j) ~ 0."""

    def __init__(self, params: ReprParams, weights: Sequence[int],
                 bounds: Optional[tuple] = None, labels=None):
        super().__init__(params, weights, len(weights), bounds, labels)
        qq = abs(params.q)
        last = self.weights[-1]
        self._last_by_residue: dict = {}
        for d in self.alphabet.digits + (PAD,):
            v = 0 if d is PAD else last * d
            self._last_by_residue.setdefault(v % qq, []).append(d)
        self._closure: dict = {self.zero: True}

    def _successors(self, state):
        carries, mask = state
        m = self.arity
        q, qq = self.params.q, abs(self.params.q)
        last_bit = 1 << (m - 1)
        if m > 1:
            heads = fa._legal_symbols(self.alphabet.with_arity(m - 1), mask & (last_bit - 1))
            heads = heads + [(PAD,) * (m - 1)]
        else:
            heads = [()]
        out = []
        for h in heads:
            base = carries[0] + sum(w * d for w, d in zip(self.weights, h) if d is not PAD)
            for d in self._last_by_residue.get((-base) % qq, ()):
                if d is not PAD and mask & last_bit:
                    continue
                sym = h + (d,)
                if all(x is PAD for x in sym):
                    continue
                s = base + (0 if d is PAD else self.weights[-1] * d)
                out.append((sym, (self._checked(carries, s // q), advance_mask(mask, sym))))
        out.sort(key=lambda kv: fa.sym_key(kv[0]))
        return out

    def in_zero_closure(self, carries: tuple) -> bool:
        """Whether (0,...,0) steps drive these carries to zero without rejection."""
        path = []
        c = carries
        result = False
        while True:
            if c in self._closure:
                result = self._closure[c]
                break
            if c in path or c[0] % self.params.q:
                result = False
                break
            path.append(c)
            c = step_carries(self.params, c, c[0] // self.params.q)
        for x in path:
            self._closure[x] = result
        return result

    def _accepting(self, state):
        return self.in_zero_closure(state[0])


class CarryTransducer(_CarryMachine):
    """Relation {(w_1, ..., w_m, out)} where ``out`` is emitted by the carry machine.

    ``out`` has the digits c_i of ``r_0 + sum_j weights[j]*d_j = k*q + c_i``;
    after the inputs end, it continues while the carries are nonzero.  For
    every input tuple exactly one ``out`` is accepted.
    """

    def __init__(self, params: ReprParams, weights: Sequence[int],
                 bounds: Optional[tuple] = None, labels=None):
        super().__init__(params, weights, len(weights) + 1, bounds, labels)
        self._inputs = self.alphabet.with_arity(len(self.weights))

    def _successors(self, state):
        carries, mask = state
        m = len(self.weights)
        if mask >> m & 1:
            return []
        q = self.params.q
        in_mask = mask & ((1 << m) - 1)
        heads = list(fa._legal_symbols(self._inputs, in_mask))
        if carries != self.zero:
            heads.append((PAD,) * m)
        out = []
        for h in heads:
            s = carries[0] + sum(w * d for w, d in zip(self.weights, h) if d is not PAD)
            k = integral_part(s, q)
            c = s - k * q
            sym = h + (c,)
            out.append((sym, (self._checked(carries, k), advance_mask(mask, sym))))
        out.sort(key=lambda kv: fa.sym_key(kv[0]))
        return out

    def _accepting(self, state):
        return state[0] == self.zero


_STEP_CACHE: dict = {}


def _carry_step(params: ReprParams, carries: tuple, s: int) -> tuple:
    """(digit, next carries) for running sum ``carries[0] + s``; memoized."""
    key = (params, carries, s)
    hit = _STEP_CACHE.get(key)
    if hit is None:
        total = carries[0] + s
        k = integral_part(total, params.q)
        hit = _STEP_CACHE[key] = (total - k * params.q, step_carries(params, carries, k))
    return hit


def run_transducer(params: ReprParams, weights: Sequence[int], words: Sequence[Sequence[int]]) -> DigitString:
    """Output of the carry transducer on the given input words."""
    zero = (0,) * params.n
    carries = zero
    out = []
    length = max((len(w) for w in words), default=0)
    cols = [[w * d for d in word] + [0] * (length - len(word)) for w, word in zip(weights, words)]
    for s in map(sum, zip(*cols)):
        c, carries = _carry_step(params, carries, s)
        out.append(c)
    seen = set()
    while carries != zero:
        if carries in seen:
            raise CarryCycleError(f"carries {carries} cycle without reaching zero")
        seen.add(carries)
        c, carries = _carry_step(params, carries, 0)
        out.append(c)
    return tuple(out)


def add_strings_batch(us, vs, params: ReprParams):
    """Vectorized :func:`add_strings` for many pairs at once.

    ``us`` and ``vs`` are integer arrays of shape (N, L) whose rows are digit
    strings padded with zeros.  Returns an (N, L + F) array; row i is the
    output of ``add_strings`` on row i followed by zeros.  Runs the same carry
    recurrence, one position per numpy step.
    """
    us = np.asarray(us, dtype=np.int64)
    vs = np.asarray(vs, dtype=np.int64)
    if us.shape != vs.shape or us.ndim != 2:
        raise ValueError("us and vs must be 2-d arrays of equal shape")
    N, L = us.shape
    q, p, n = params.q, params.p, params.n
    carries = [np.zeros(N, dtype=np.int64) for _ in range(n)]
    out = []
    step = 0
    while step < L or any(c.any() for c in carries):
        s = carries[0] + (us[:, step] + vs[:, step] if step < L else 0)
        k = np.sign(s) * np.sign(q) * (np.abs(s) // abs(q))
        out.append(s - k * q)
        carries = [carries[j + 1] + p[j] * k for j in range(n - 1)] + [k]
        step += 1
        if step > L + 4 * abs(q) ** n:
            raise CarryCycleError("batch carries did not reach zero")
    return np.stack(out, axis=1) if out else np.zeros((N, 0), dtype=np.int64)


class LlexLess(Automaton):
    """Binary relation u <_llex w on (track 0, track 1)."""

    EQ, LT, GT, SHORT = "eq", "lt", "gt", "short"

    def __init__(self, alphabet: Alphabet):
        super().__init__()
        self.alphabet = alphabet.with_arity(2)

    def initial_states(self):
        return (self.EQ,)

    def _successors(self, state):
        digits = self.alphabet.digits
        out = [((PAD, b), self.SHORT) for b in digits]
        if state == self.SHORT:
            return out
        for a in digits:
            for b in digits:
                if state == self.EQ:
                    nxt = self.LT if a < b else self.GT if a > b else self.EQ
                else:
                    nxt = state
                out.append(((a, b), nxt))
        out.sort(key=lambda kv: fa.sym_key(kv[0]))
        return out

    def _accepting(self, state):
        return state in (self.LT, self.SHORT)


def build_equiv_automaton(params: ReprParams) -> CarryChecker:
    return CarryChecker(params, (1, -1), declared_carry_bounds(params), labels=("u", "v"))


def build_add_relation(params: ReprParams) -> CarryTransducer:
    return CarryTransducer(params, (1, 1), declared_carry_bounds(params), labels=("x", "y", "w"))


def add_strings(u: Sequence[int], v: Sequence[int], params: ReprParams) -> DigitString:
    return run_transducer(params, (1, 1), (u, v))


def build_dom(params: ReprParams, equiv: Optional[Automaton] = None, budget: Optional[int] = None) -> fa.Dfa:
    """Minimal Dfa for the llex-least member of every equivalence class."""
    equiv = equiv or build_equiv_automaton(params)
    alpha = equiv.alphabet
    smaller_equivalent = Join(2, alpha.digits, [(equiv, (0, 1)), (LlexLess(alpha), (0, 1))], keep=(1,))
    not_canonical = fa.determinize(smaller_equivalent, budget, prune=_prune_llex)
    return fa.minimize(fa.complement(not_canonical), budget)


_LLEX_RANK = {LlexLess.GT: 0, LlexLess.EQ: 1, LlexLess.LT: 2, LlexLess.SHORT: 3, fa.FINISHED: 4}


def _prune_llex(states) -> frozenset:
    # With the carry state fixed, LT accepts every continuation EQ accepts and
    # EQ every continuation GT accepts, so only the strongest needs keeping.
    best: dict = {}
    rank = _LLEX_RANK
    for carry, order in states:
        old = best.get(carry)
        if old is None or rank[order] > rank[old]:
            best[carry] = order
    return frozenset(best.items())


class Presentation:
    """Compiled presentation psi_{p,q}: equivalence, addition, canonical domain."""

    def __init__(self, params: ReprParams, budget: Optional[int] = None):
        self.params = params
        self.budget = budget

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet.signed(1, self.params.digit_bound)

    @cached_property
    def equiv(self) -> CarryChecker:
        return build_equiv_automaton(self.params)

    @cached_property
    def add_rel(self) -> CarryTransducer:
        return build_add_relation(self.params)

    @cached_property
    def dom(self) -> fa.Dfa:
        return build_dom(self.params, self.equiv, self.budget)

    @cached_property
    def add_on_dom(self) -> Automaton:
        """Add = {(x, y, z) in Dom^3 : exists w. R(x, y, w) and w ~ z}."""
        d = self.alphabet.digits
        composed = Join(4, d, [(self.add_rel, (0, 1, 3)), (self.equiv, (3, 2))], keep=(0, 1, 2))
        return Join(3, d, [(composed, (0, 1, 2)), (self.dom, (0,)), (self.dom, (1,)), (self.dom, (2,))],
                    labels=("x", "y", "z"))

    # -- bijection with Z^n ---------------------------------------------------------------

    def decode(self, w: Sequence[int]) -> tuple:
        check_digits(w, self.params.q)
        return residue(string_to_poly(w), self.params)

    def canonical(self, w: Sequence[int]) -> DigitString:
        """The Dom representative of the class of ``w``."""
        cls = fa.fix_track(self.equiv, 1, tuple(w))
        return fa.llex_least_member(cls)

    def encode(self, v: Sequence[int]) -> DigitString:
        if len(v) != self.params.n:
            raise ValueError(f"expected a vector of length {self.params.n}")
        return self.canonical(reduce(tuple(v), self.params))

    def in_dom(self, w: Sequence[int]) -> bool:
        return fa.accepts(self.dom, tuple(w))

    def add(self, u: Sequence[int], v: Sequence[int]) -> DigitString:
        """Canonical string of the sum."""
        return self.canonical(add_strings(u, v, self.params))

    def equivalent_strings(self, u: Sequence[int], v: Sequence[int]) -> bool:
        return fa.accepts(self.equiv, tuple(u), tuple(v))

    def header(self) -> dict:
        return self.params.header()


def brute_force_canonical(w: Sequence[int], params: ReprParams, maxlen: Optional[int] = None) -> DigitString:
    """Llex-least equivalent string by plain enumeration (test oracle)."""
    import itertools

    from .words import sigma

    target = residue(string_to_poly(w), params)
    maxlen = len(w) if maxlen is None else maxlen
    digits = list(sigma(params.q))
    for length in range(maxlen + 1):
        for cand in itertools.product(digits, repeat=length):
            if residue(cand, params) == target:
                return tuple(cand)
    return None
