"""Finite automata over convolution alphabets.

A symbol is a tuple with one entry per track; each entry is a digit or
``PAD``.  Padding is part of the universe: once a track reads ``PAD`` it
reads ``PAD`` forever, and the all-``PAD`` symbol never occurs.

Automata are explored lazily.  Every automaton exposes ``initial_states()``,
``is_accepting(state)`` and ``successors(state)``; transitions that are not
listed go to an implicit dead state.  Products, projections, subset
construction and complement are themselves lazy automata, so a pipeline only
ever touches the states reachable from the inputs it is asked about.
``to_dfa`` and ``minimize`` materialize an explicit :class:`Dfa`.
"""
from __future__ import annotations

import itertools
import json
import os
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .errors import AlphabetMismatch, StateBudgetExceeded
from .words import PAD, convolve

DEFAULT_STATE_BUDGET = 10**6

Symbol = tuple


def state_budget() -> int:
    env = os.environ.get("TORUS_AUTOMATA_STATE_BUDGET")
    return int(env) if env else DEFAULT_STATE_BUDGET


def sym_key(sym: Symbol) -> tuple:
    """Sort key putting digits in increasing order and PAD last."""
    return tuple((1, 0) if x is PAD else (0, x) for x in sym)


def _all_pad(sym: Symbol) -> bool:
    return all(x is PAD for x in sym)


@dataclass(frozen=True)
class Alphabet:
    """``arity`` tracks, each carrying a digit from ``digits`` or PAD."""

    arity: int
    digits: tuple

    @classmethod
    def signed(cls, arity: int, bound: int) -> "Alphabet":
        return cls(arity, tuple(range(-bound, bound + 1)))

    @property
    def bound(self) -> int:
        return max((abs(d) for d in self.digits), default=0)

    @property
    def is_signed_range(self) -> bool:
        return self.digits == tuple(range(-self.bound, self.bound + 1))

    def with_arity(self, arity: int) -> "Alphabet":
        return Alphabet(arity, self.digits)

    def symbols(self, mask: int = 0) -> list:
        """Legal symbols given the bitmask of tracks already padded."""
        return _legal_symbols(self, mask)

    def contains(self, sym: Symbol) -> bool:
        return len(sym) == self.arity and all(x is PAD or x in self.digits for x in sym)


_SYMBOL_CACHE: dict = {}


def _legal_symbols(alpha: Alphabet, mask: int) -> list:
    key = (alpha, mask)
    if key not in _SYMBOL_CACHE:
        choices = [
            (PAD,) if mask >> i & 1 else alpha.digits + (PAD,) for i in range(alpha.arity)
        ]
        _SYMBOL_CACHE[key] = [s for s in itertools.product(*choices) if not _all_pad(s)]
    return _SYMBOL_CACHE[key]


def advance_mask(mask: int, sym: Symbol) -> int:
    for i, x in enumerate(sym):
        if x is PAD:
            mask |= 1 << i
    return mask


class Automaton:
    """Common interface; subclasses implement ``_successors``/``_accepting``."""

    alphabet: Alphabet
    deterministic: bool = True
    labels: Optional[tuple] = None

    def __init__(self):
        self._succ: dict = {}
        self._acc: dict = {}
        self._index: dict = {}

    @property
    def arity(self) -> int:
        return self.alphabet.arity

    def initial_states(self) -> tuple:
        raise NotImplementedError

    def _successors(self, state) -> list:
        raise NotImplementedError

    def _accepting(self, state) -> bool:
        raise NotImplementedError

    def successors(self, state) -> list:
        try:
            return self._succ[state]
        except KeyError:
            out = self._succ[state] = self._successors(state)
            return out

    def is_accepting(self, state) -> bool:
        try:
            return self._acc[state]
        except KeyError:
            out = self._acc[state] = self._accepting(state)
            return out

    def targets(self, state, sym) -> list:
        try:
            idx = self._index[state]
        except KeyError:
            idx = {}
            for s, t in self.successors(state):
                idx.setdefault(s, []).append(t)
            self._index[state] = idx
        return idx.get(sym, ())

    @property
    def initial(self):
        (s,) = self.initial_states()
        return s


class Dfa(Automaton):
    """Explicit deterministic automaton with integer states ``0..len(delta)-1``."""

    def __init__(self, alphabet: Alphabet, delta: Sequence[dict], initial: int,
                 accepting: Iterable[int], labels: Optional[tuple] = None):
        super().__init__()
        self.alphabet = alphabet
        self.delta = tuple(delta)
        self._initial = initial
        self.accepting = frozenset(accepting)
        self.labels = labels

    def initial_states(self):
        return (self._initial,)

    @property
    def num_states(self) -> int:
        return len(self.delta)

    def _successors(self, state):
        return sorted(self.delta[state].items(), key=lambda kv: sym_key(kv[0]))

    def _accepting(self, state):
        return state in self.accepting

    def step(self, state, sym):
        return self.delta[state].get(sym)

    @property
    def num_transitions(self) -> int:
        return sum(len(d) for d in self.delta)

    def __repr__(self):
        return f"Dfa(arity={self.arity}, states={self.num_states}, accepting={len(self.accepting)})"


class Nfa(Automaton):
    """Explicit nondeterministic automaton (no epsilon moves)."""

    deterministic = False

    def __init__(self, alphabet: Alphabet, delta: Sequence[dict], initials: Iterable[int],
                 accepting: Iterable[int]):
        super().__init__()
        self.alphabet = alphabet
        self.delta = tuple(delta)
        self._initials = tuple(initials)
        self.accepting = frozenset(accepting)

    def initial_states(self):
        return self._initials

    def _successors(self, state):
        return [(s, t) for s, ts in self.delta[state].items() for t in ts]

    def _accepting(self, state):
        return state in self.accepting


class WordAutomaton(Automaton):
    """Accepts exactly one word (arity 1)."""

    def __init__(self, word: Sequence[int], alphabet: Alphabet):
        super().__init__()
        self.word = tuple(word)
        self.alphabet = alphabet.with_arity(1)

    def initial_states(self):
        return (0,)

    def _successors(self, pos):
        return [((self.word[pos],), pos + 1)] if pos < len(self.word) else []

    def _accepting(self, pos):
        return pos == len(self.word)


class UniversalAutomaton(Automaton):
    """All padding-legal strings of the given alphabet."""

    def __init__(self, alphabet: Alphabet):
        super().__init__()
        self.alphabet = alphabet

    def initial_states(self):
        return (0,)

    def _successors(self, mask):
        return [(s, advance_mask(mask, s)) for s in self.alphabet.symbols(mask)]

    def _accepting(self, mask):
        return True


class EmptyAutomaton(Automaton):
    def __init__(self, alphabet: Alphabet):
        super().__init__()
        self.alphabet = alphabet

    def initial_states(self):
        return (0,)

    def _successors(self, state):
        return []

    def _accepting(self, state):
        return False


class IdentityRelation(Automaton):
    """{(w, w)} over a binary convolution alphabet."""

    def __init__(self, alphabet: Alphabet):
        super().__init__()
        self.alphabet = alphabet.with_arity(2)

    def initial_states(self):
        return (0,)

    def _successors(self, state):
        return [((d, d), 0) for d in self.alphabet.digits]

    def _accepting(self, state):
        return True


FINISHED = "finished"


class Join(Automaton):
    """Synchronized product of relations over shared tracks, then projection.

    ``parts`` is a list of ``(automaton, tracks)`` where ``tracks[j]`` is the
    global track read by the part's local track ``j``.  Every global track
    must be read by some part.  A part whose tracks are all padded from some
    position on must be accepting there; it then sits in ``FINISHED``.
    Only tracks in ``keep`` are visible; moves on which every kept track is
    padded are silent and only matter for acceptance (they can only occur
    after the visible string has ended).
    """

    def __init__(self, arity: int, digits: tuple, parts: Sequence[tuple],
                 keep: Optional[Sequence[int]] = None, labels: Optional[tuple] = None):
        super().__init__()
        self.total_arity = arity
        self.parts = [(aut, tuple(tracks)) for aut, tracks in parts]
        self.keep = tuple(range(arity)) if keep is None else tuple(keep)
        covered = set(itertools.chain.from_iterable(t for _, t in self.parts))
        if covered != set(range(arity)):
            raise ValueError("every track of a join must be read by some part")
        for aut, tracks in self.parts:
            if aut.arity != len(tracks):
                raise AlphabetMismatch("part arity does not match its track list")
        self.alphabet = Alphabet(len(self.keep), tuple(digits))
        self.labels = labels
        self.deterministic = (
            all(aut.deterministic for aut, _ in self.parts) and self.keep == tuple(range(arity))
        )
        self._silent: dict = {}
        # for each part: local positions already fixed by earlier parts, and the rest
        seen: set = set()
        self._plan = []
        for aut, tracks in self.parts:
            shared = tuple(j for j, tr in enumerate(tracks) if tr in seen)
            fresh = tuple(j for j, tr in enumerate(tracks) if tr not in seen)
            self._plan.append((shared, fresh))
            seen.update(tracks)

    def initial_states(self):
        return tuple(itertools.product(*(aut.initial_states() for aut, _ in self.parts)))

    def _options(self, idx, ps):
        aut, tracks = self.parts[idx]
        allpad = (PAD,) * len(tracks)
        if ps == FINISHED:
            return [(allpad, FINISHED)]
        opts = list(aut.successors(ps))
        if aut.is_accepting(ps):
            opts.append((allpad, FINISHED))
        return opts

    def _moves(self, state):
        unset = object()
        partial = [((unset,) * self.total_arity, ())]
        for idx, (aut, tracks) in enumerate(self.parts):
            shared, fresh = self._plan[idx]
            groups: dict = {}
            for sym, tgt in self._options(idx, state[idx]):
                groups.setdefault(tuple(sym[j] for j in shared), []).append((sym, tgt))
            nxt = []
            for assign, sts in partial:
                key = tuple(assign[tracks[j]] for j in shared)
                for sym, tgt in groups.get(key, ()):
                    if fresh:
                        a = list(assign)
                        for j in fresh:
                            a[tracks[j]] = sym[j]
                        a = tuple(a)
                    else:
                        a = assign
                    nxt.append((a, sts + (tgt,)))
            partial = nxt
            if not partial:
                break
        visible, silent = [], []
        for assign, sts in partial:
            if _all_pad(assign):
                continue
            kept = tuple(assign[k] for k in self.keep)
            (silent if _all_pad(kept) else visible).append((kept, sts))
        return visible, silent

    def _successors(self, state):
        visible, silent = self._moves(state)
        self._silent[state] = [t for _, t in silent]
        if self.deterministic:
            return visible
        # drop duplicate (symbol, target) pairs produced through different hidden values
        return list(dict.fromkeys(visible))

    def _silent_targets(self, state):
        if state not in self._silent:
            self.successors(state)
        return self._silent[state]

    def _plain_accepting(self, state):
        return all(
            ps == FINISHED or aut.is_accepting(ps) for (aut, _), ps in zip(self.parts, state)
        )

    def _accepting(self, state):
        stack, seen = [state], {state}
        while stack:
            s = stack.pop()
            if self._plain_accepting(s):
                return True
            for t in self._silent_targets(s):
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return False


class Subset(Automaton):
    """Lazy subset construction."""

    def __init__(self, nfa: Automaton, budget: Optional[int] = None, prune=None):
        super().__init__()
        self.nfa = nfa
        self.prune = prune
        self.alphabet = nfa.alphabet
        self.labels = nfa.labels
        self.budget = state_budget() if budget is None else budget
        self._count = 0
        self._one: dict = {}

    def initial_states(self):
        init = frozenset(self.nfa.initial_states())
        return (self.prune(init) if self.prune else init,)

    def _successors(self, subset):
        groups: dict = {}
        for s in subset:
            for sym, t in self.nfa.successors(s):
                g = groups.get(sym)
                if g is None:
                    groups[sym] = [t]
                else:
                    g.append(t)
        prune = self.prune or frozenset
        out = [(sym, prune(groups[sym])) for sym in sorted(groups, key=sym_key)]
        self._count += 1
        if self._count > self.budget:
            raise StateBudgetExceeded(f"subset construction exceeded {self.budget} states")
        return out

    def targets(self, subset, sym) -> list:
        # one symbol at a time, so single runs avoid expanding every successor
        if subset in self._succ:
            return super().targets(subset, sym)
        key = (subset, sym)
        out = self._one.get(key)
        if out is None:
            ts: list = []
            for s in subset:
                ts.extend(self.nfa.targets(s, sym))
            out = self._one[key] = [(self.prune or frozenset)(ts)] if ts else []
        return out

    def _accepting(self, subset):
        return any(self.nfa.is_accepting(s) for s in subset)


DEAD = "dead"


class Complement(Automaton):
    """Complement relative to the padding-legal strings of the alphabet."""

    def __init__(self, dfa: Automaton):
        super().__init__()
        self.inner = _deterministic(dfa)
        self.alphabet = dfa.alphabet
        self.labels = dfa.labels

    def initial_states(self):
        return ((self.inner.initial, 0),)

    def _successors(self, state):
        s, mask = state
        out = []
        for sym in self.alphabet.symbols(mask):
            if s == DEAD:
                t = DEAD
            else:
                ts = self.inner.targets(s, sym)
                t = ts[0] if ts else DEAD
            out.append((sym, (t, advance_mask(mask, sym))))
        return out

    def _accepting(self, state):
        s, _ = state
        return s == DEAD or not self.inner.is_accepting(s)


class Union(Automaton):
    def __init__(self, a: Automaton, b: Automaton):
        super().__init__()
        _check_same(a, b)
        self.a, self.b = _deterministic(a), _deterministic(b)
        self.alphabet = a.alphabet

    def initial_states(self):
        return ((self.a.initial, self.b.initial),)

    def _successors(self, state):
        sa, sb = state
        da = dict(self.a.successors(sa)) if sa != DEAD else {}
        db = dict(self.b.successors(sb)) if sb != DEAD else {}
        return [
            (sym, (da.get(sym, DEAD), db.get(sym, DEAD)))
            for sym in sorted(set(da) | set(db), key=sym_key)
        ]

    def _accepting(self, state):
        sa, sb = state
        return (sa != DEAD and self.a.is_accepting(sa)) or (sb != DEAD and self.b.is_accepting(sb))


def _check_same(a: Automaton, b: Automaton):
    if a.alphabet != b.alphabet:
        raise AlphabetMismatch(f"alphabets differ: {a.alphabet} vs {b.alphabet}")


def _deterministic(aut: Automaton) -> Automaton:
    return aut if aut.deterministic else Subset(aut)


# -- boolean algebra and quantification ----------------------------------------------------

def intersect(a: Automaton, b: Automaton) -> Automaton:
    _check_same(a, b)
    tracks = tuple(range(a.arity))
    return Join(a.arity, a.alphabet.digits, [(a, tracks), (b, tracks)])


def union(a: Automaton, b: Automaton) -> Automaton:
    return Union(a, b)


def complement(a: Automaton) -> Automaton:
    return Complement(a)


def project(r: Automaton, track: int) -> Automaton:
    """Existentially quantify ``track`` away."""
    if r.arity < 2 or not 0 <= track < r.arity:
        raise IndexError(f"cannot project track {track} of an arity-{r.arity} relation")
    keep = [i for i in range(r.arity) if i != track]
    labels = tuple(r.labels[i] for i in keep) if r.labels else None
    return Join(r.arity, r.alphabet.digits, [(r, tuple(range(r.arity)))], keep, labels)


def fix_track(r: Automaton, track: int, word: Sequence[int]) -> Automaton:
    """Tuples completing ``word`` on ``track``, over the remaining tracks."""
    if not 0 <= track < r.arity:
        raise IndexError(f"no track {track} in an arity-{r.arity} relation")
    keep = [i for i in range(r.arity) if i != track]
    labels = tuple(r.labels[i] for i in keep) if r.labels else None
    lit = WordAutomaton(word, r.alphabet)
    return Join(r.arity, r.alphabet.digits,
                [(lit, (track,)), (r, tuple(range(r.arity)))], keep, labels)


def cylinder(arity: int, digits: tuple, parts: Sequence[tuple]) -> Automaton:
    """Intersection of relations placed on chosen tracks of an arity-``arity`` universe."""
    return Join(arity, digits, parts)


def determinize(n: Automaton, budget: Optional[int] = None, prune=None) -> Automaton:
    """Subset construction.

    ``prune`` may shrink each subset to an equivalent one (e.g. by dropping
    states simulated by other members); it must not change which suffixes the
    subset accepts.
    """
    return n if n.deterministic else Subset(n, budget, prune)


# -- exploration ---------------------------------------------------------------------------

def to_dfa(aut: Automaton, budget: Optional[int] = None) -> Dfa:
    """Materialize the reachable part of ``aut`` as an explicit Dfa."""
    if isinstance(aut, Dfa):
        return aut
    aut = determinize(aut, budget)
    budget = state_budget() if budget is None else budget
    init = aut.initial
    index = {init: 0}
    order = [init]
    delta: list = []
    i = 0
    while i < len(order):
        s = order[i]
        row = {}
        for sym, t in aut.successors(s):
            j = index.get(t)
            if j is None:
                j = index[t] = len(order)
                order.append(t)
                if len(order) > budget:
                    raise StateBudgetExceeded(f"exploration exceeded {budget} states")
            row[sym] = j
        delta.append(row)
        i += 1
    acc = [k for k, s in enumerate(order) if aut.is_accepting(s)]
    return Dfa(aut.alphabet, delta, 0, acc, aut.labels)


def reachable_count(aut: Automaton, budget: Optional[int] = None) -> int:
    return to_dfa(aut, budget).num_states


def _coaccessible(d: Dfa) -> set:
    rev: list = [[] for _ in range(d.num_states)]
    for s, row in enumerate(d.delta):
        for t in row.values():
            rev[t].append(s)
    live = set(d.accepting)
    stack = list(live)
    while stack:
        t = stack.pop()
        for s in rev[t]:
            if s not in live:
                live.add(s)
                stack.append(s)
    return live


def trim(d: Dfa) -> Dfa:
    """Drop states that cannot reach acceptance (they behave like the dead state)."""
    live = _coaccessible(d)
    if d.initial not in live:
        return Dfa(d.alphabet, [{}], 0, [], d.labels)
    keep = sorted(live)
    ren = {s: i for i, s in enumerate(keep)}
    delta = [{sym: ren[t] for sym, t in d.delta[s].items() if t in live} for s in keep]
    return Dfa(d.alphabet, delta, ren[d.initial], [ren[s] for s in d.accepting], d.labels)


def _canonical(d: Dfa) -> Dfa:
    """Renumber reachable states in BFS order over sorted symbols."""
    index = {d.initial: 0}
    order = [d.initial]
    i = 0
    while i < len(order):
        for sym, t in sorted(d.delta[order[i]].items(), key=lambda kv: sym_key(kv[0])):
            if t not in index:
                index[t] = len(order)
                order.append(t)
        i += 1
    delta = [{sym: index[t] for sym, t in d.delta[s].items()} for s in order]
    return Dfa(d.alphabet, delta, 0, [index[s] for s in order if s in d.accepting], d.labels)


def minimize(aut: Automaton, budget: Optional[int] = None) -> Dfa:
    """Minimal trim Dfa (dead state implicit), canonically numbered.

    Two automata accept the same language iff their minimizations compare
    equal with :func:`same_dfa`.
    """
    d = trim(to_dfa(aut, budget))
    n = d.num_states
    cls = [1 if s in d.accepting else 0 for s in range(n)]
    count = len(set(cls))
    while True:
        sigs = {}
        new = []
        for s in range(n):
            sig = (cls[s], tuple(sorted(((sym_key(sym), cls[t]) for sym, t in d.delta[s].items()))))
            new.append(sigs.setdefault(sig, len(sigs)))
        if len(sigs) == count:
            break
        cls, count = new, len(sigs)
    cls = new
    delta: list = [None] * count
    for s in range(n):
        if delta[cls[s]] is None:
            delta[cls[s]] = {sym: cls[t] for sym, t in d.delta[s].items()}
    acc = {cls[s] for s in d.accepting}
    return _canonical(Dfa(d.alphabet, delta, cls[d.initial], acc, d.labels))


def same_dfa(a: Dfa, b: Dfa) -> bool:
    return (
        a.alphabet == b.alphabet and a.delta == b.delta
        and a.initial == b.initial and a.accepting == b.accepting
    )


def equivalent_languages(a: Automaton, b: Automaton, budget: Optional[int] = None) -> bool:
    return same_dfa(minimize(a, budget), minimize(b, budget))


# -- queries -------------------------------------------------------------------------------

def _as_conv(aut: Automaton, words) -> tuple:
    if aut.arity == 1:
        if len(words) == 1 and not isinstance(words[0], int):
            words = words[0]
        return tuple((d,) for d in words)
    if len(words) != aut.arity:
        raise AlphabetMismatch(f"expected {aut.arity} words, got {len(words)}")
    return convolve(*words)


def run(aut: Automaton, conv: Sequence[Symbol]) -> set:
    cur = set(aut.initial_states())
    for sym in conv:
        nxt = set()
        for s in cur:
            nxt.update(aut.targets(s, tuple(sym)))
        if not nxt:
            return nxt
        cur = nxt
    return cur


def accepts(aut: Automaton, *words) -> bool:
    """Membership of one word (arity 1) or of the convolution of ``arity`` words."""
    return any(aut.is_accepting(s) for s in run(aut, _as_conv(aut, words)))


def accepts_conv(aut: Automaton, conv: Sequence[Symbol]) -> bool:
    return any(aut.is_accepting(s) for s in run(aut, conv))


def is_empty(aut: Automaton, budget: Optional[int] = None) -> bool:
    """Emptiness by plain reachability; no determinization needed."""
    budget = state_budget() if budget is None else budget
    seen = set(aut.initial_states())
    queue = deque(seen)
    while queue:
        s = queue.popleft()
        if aut.is_accepting(s):
            return False
        for _, t in aut.successors(s):
            if t not in seen:
                seen.add(t)
                if len(seen) > budget:
                    raise StateBudgetExceeded(f"emptiness check exceeded {budget} states")
                queue.append(t)
    return True


def _by_track(aut: Automaton, state, track: int) -> dict:
    cache = aut.__dict__.setdefault("_track_index", {})
    key = (state, track)
    idx = cache.get(key)
    if idx is None:
        idx = {}
        for sym, t in aut.successors(state):
            idx.setdefault(sym[track], []).append((sym, t))
        cache[key] = idx
    return idx


def images(rel: Automaton, word: Sequence[int], max_extra: int = 8) -> set:
    """All v with (word, v) accepted by a binary relation, |v| <= |word| + max_extra.

    Walks the relation's own states with the first track fixed, so the
    successor caches are shared between calls on the same automaton.
    """
    if rel.arity != 2:
        raise AlphabetMismatch("images needs a binary relation")
    word = tuple(word)
    found: set = set()
    stack = [(s, 0, ()) for s in rel.initial_states()]
    seen: set = set()
    while stack:
        s, i, v = stack.pop()
        if (s, i, v) in seen:
            continue
        seen.add((s, i, v))
        if i >= len(word) and rel.is_accepting(s):
            found.add(v)
        if i >= len(word) + max_extra:
            continue
        x = word[i] if i < len(word) else PAD
        for sym, t in _by_track(rel, s, 0).get(x, ()):
            y = sym[1]
            stack.append((t, i + 1, v if y is PAD else v + (y,)))
    return found


def count_accepted(aut: Automaton, maxlen: int) -> int:
    """Number of accepted strings of length at most ``maxlen``."""
    aut = determinize(aut)
    layer = {aut.initial: 1}
    total = 0
    for length in range(maxlen + 1):
        total += sum(c for s, c in layer.items() if aut.is_accepting(s))
        if length == maxlen:
            break
        nxt: dict = {}
        for s, c in layer.items():
            for _, t in aut.successors(s):
                nxt[t] = nxt.get(t, 0) + c
        layer = nxt
    return total


def language_size(aut: Automaton, budget: Optional[int] = None) -> Optional[int]:
    """Number of accepted strings, or None when the language is infinite."""
    d = trim(to_dfa(aut, budget))
    if not d.accepting:
        return 0
    color = [0] * d.num_states
    order: list = []
    stack = [(d.initial, iter(d.delta[d.initial].values()))]
    color[d.initial] = 1
    while stack:
        s, it = stack[-1]
        t = next(it, None)
        if t is None:
            color[s] = 2
            order.append(s)
            stack.pop()
        elif color[t] == 1:
            return None
        elif color[t] == 0:
            color[t] = 1
            stack.append((t, iter(d.delta[t].values())))
    paths = {}
    for s in order:  # reverse topological: successors first
        paths[s] = (1 if s in d.accepting else 0) + sum(paths[t] for t in d.delta[s].values())
    return paths[d.initial]


def llex_least_member(aut: Automaton) -> Optional[tuple]:
    """The length-lexicographically least accepted word (arity 1), or None.

    Finds the shortest accepted length by forward layers, marks the states
    of each layer that can still finish in time, then descends greedily on
    the smallest digit.
    """
    if aut.arity != 1:
        raise AlphabetMismatch("llex_least_member needs a unary automaton")
    aut = determinize(aut)
    layers = [{aut.initial}]
    seen = {aut.initial}
    while not any(aut.is_accepting(s) for s in layers[-1]):
        nxt = {t for s in layers[-1] for _, t in aut.successors(s)}
        if not nxt or nxt <= seen:
            return None
        seen |= nxt
        layers.append(nxt)
    good = [set() for _ in layers]
    good[-1] = {s for s in layers[-1] if aut.is_accepting(s)}
    for i in range(len(layers) - 2, -1, -1):
        good[i] = {s for s in layers[i] if any(t in good[i + 1] for _, t in aut.successors(s))}
    word = []
    s = aut.initial
    for i in range(len(layers) - 1):
        for sym, t in sorted(aut.successors(s), key=lambda e: sym_key(e[0])):
            if t in good[i + 1]:
                word.append(sym[0])
                s = t
                break
    return tuple(word)


def enumerate_words(aut: Automaton, maxlen: int) -> Iterator[tuple]:
    """Accepted unary words of length <= maxlen, in llex order."""
    if aut.arity != 1:
        raise AlphabetMismatch("enumerate_words needs a unary automaton")
    d = trim(to_dfa(aut))
    if not d.accepting:
        return
    rev: list = [[] for _ in range(d.num_states)]
    for s, row in enumerate(d.delta):
        for t in row.values():
            rev[t].append(s)
    # shortest distance to acceptance, to prune dead branches
    dist = {s: 0 for s in d.accepting}
    queue = deque(d.accepting)
    while queue:
        t = queue.popleft()
        for s in rev[t]:
            if s not in dist:
                dist[s] = dist[t] + 1
                queue.append(s)
    rows = [sorted(row.items(), key=lambda kv: sym_key(kv[0])) for row in d.delta]
    for length in range(maxlen + 1):
        stack = [(d.initial, ())]
        # depth-first in reverse digit order so pops come out lexicographically
        while stack:
            s, w = stack.pop()
            if len(w) == length:
                if s in d.accepting:
                    yield w
                continue
            rem = length - len(w) - 1
            for sym, t in reversed(rows[s]):
                if dist.get(t, maxlen + 1) <= rem:
                    stack.append((t, w + (sym[0],)))


# -- serialization -------------------------------------------------------------------------

def _sym_out(sym):
    return ["pad" if x is PAD else x for x in sym]


def _sym_in(raw):
    return tuple(PAD if x == "pad" else int(x) for x in raw)


def to_json(aut: Automaton, **extra) -> str:
    d = to_dfa(aut)
    doc = {
        "arity": d.arity,
        "digit_bound": d.alphabet.bound,
        "states": list(range(d.num_states)),
        "initial": d.initial,
        "accepting": sorted(d.accepting),
        "transitions": [
            {"from": s, "symbol": _sym_out(sym), "to": t}
            for s, row in enumerate(d.delta)
            for sym, t in sorted(row.items(), key=lambda kv: sym_key(kv[0]))
        ],
    }
    if not d.alphabet.is_signed_range:
        doc["digits"] = list(d.alphabet.digits)
    if d.labels:
        doc["labels"] = list(d.labels)
    doc.update(extra)
    return json.dumps(doc)


def from_json(text: str) -> Dfa:
    try:
        doc = json.loads(text)
        arity = int(doc["arity"])
        bound = int(doc["digit_bound"])
        digits = tuple(doc["digits"]) if "digits" in doc else tuple(range(-bound, bound + 1))
        alpha = Alphabet(arity, digits)
        states = list(doc["states"])
        index = {s: i for i, s in enumerate(states)}
        delta: list = [dict() for _ in states]
        for tr in doc["transitions"]:
            sym = _sym_in(tr["symbol"])
            if len(sym) != arity or not alpha.contains(sym) or _all_pad(sym):
                raise ValueError(f"bad symbol {tr['symbol']}")
            row = delta[index[tr["from"]]]
            if sym in row:
                raise ValueError("transition table is not deterministic")
            row[sym] = index[tr["to"]]
        labels = tuple(doc["labels"]) if "labels" in doc else None
        return Dfa(alpha, delta, index[doc["initial"]], [index[s] for s in doc["accepting"]], labels)
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise ValueError(f"malformed automaton JSON: {exc}") from exc


def to_dot(aut: Automaton, name: str = "automaton") -> str:
    d = to_dfa(aut)
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  init [shape=point];']
    for s in range(d.num_states):
        shape = "doublecircle" if s in d.accepting else "circle"
        lines.append(f"  s{s} [shape={shape}];")
    lines.append(f"  init -> s{d.initial};")
    for s, row in enumerate(d.delta):
        by_target: dict = {}
        for sym, t in sorted(row.items(), key=lambda kv: sym_key(kv[0])):
            by_target.setdefault(t, []).append(
                ",".join("#" if x is PAD else str(x) for x in sym)
            )
        for t, syms in by_target.items():
            label = " | ".join("(" + x + ")" for x in syms)
            lines.append(f'  s{s} -> s{t} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines)
