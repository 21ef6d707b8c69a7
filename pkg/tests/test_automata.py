import itertools

import pytest
from hypothesis import given, settings, strategies as st

from torus_automata import automata as fa
from torus_automata.automata import Alphabet, Dfa, Nfa
from torus_automata.errors import AlphabetMismatch, StateBudgetExceeded

BIN = Alphabet(1, (0, 1))


def even_ones() -> Dfa:
    return Dfa(BIN, [{(0,): 0, (1,): 1}, {(0,): 1, (1,): 0}], 0, {0})


def ends_in_one() -> Dfa:
    return Dfa(BIN, [{(0,): 0, (1,): 1}, {(0,): 0, (1,): 1}], 0, {1})


def third_from_last() -> Nfa:
    # guess the position of the 1
    delta = [{(0,): [0], (1,): [0, 1]}, {(0,): [2], (1,): [2]}, {(0,): [3], (1,): [3]}, {}]
    return Nfa(BIN, delta, [0], [3])


def words(maxlen):
    for n in range(maxlen + 1):
        yield from itertools.product((0, 1), repeat=n)


def test_boolean_operations_match_predicates():
    a, b = even_ones(), ends_in_one()
    both, either, neither = fa.intersect(a, b), fa.union(a, b), fa.complement(a)
    for w in words(7):
        pa, pb = w.count(1) % 2 == 0, w[-1:] == (1,)
        assert fa.accepts(both, w) == (pa and pb)
        assert fa.accepts(either, w) == (pa or pb)
        assert fa.accepts(neither, w) == (not pa)


def test_alphabet_mismatch():
    other = Dfa(Alphabet(1, (0, 1, 2)), [{}], 0, {0})
    with pytest.raises(AlphabetMismatch):
        fa.intersect(even_ones(), other)


def test_determinize_and_minimize_preserve_language():
    n = third_from_last()
    d = fa.to_dfa(n)
    m = fa.minimize(n)
    assert m.num_states == 8
    for w in words(8):
        expected = len(w) >= 3 and w[-3] == 1
        assert fa.accepts(n, w) == fa.accepts(d, w) == fa.accepts(m, w) == expected


def test_minimize_is_canonical():
    m1 = fa.minimize(even_ones())
    doubled = Dfa(BIN, [{(0,): 0, (1,): 1}, {(0,): 1, (1,): 2}, {(0,): 2, (1,): 3}, {(0,): 3, (1,): 0}],
                  0, {0, 2})
    assert fa.same_dfa(m1, fa.minimize(doubled))
    assert fa.equivalent_languages(even_ones(), doubled)
    assert not fa.equivalent_languages(even_ones(), ends_in_one())


def test_state_budget():
    with pytest.raises(StateBudgetExceeded):
        fa.to_dfa(third_from_last(), budget=3)


def test_emptiness_and_counting():
    assert not fa.is_empty(even_ones())
    assert fa.is_empty(fa.intersect(even_ones(), fa.complement(even_ones())))
    assert fa.count_accepted(ends_in_one(), 3) == 1 + 2 + 4
    assert fa.language_size(ends_in_one()) is None
    single = fa.WordAutomaton((1, 0, 1), BIN)
    assert fa.language_size(single) == 1


def test_llex_least_and_enumeration_order():
    a = fa.intersect(ends_in_one(), fa.complement(even_ones()))
    assert fa.llex_least_member(a) == (1,)
    listed = list(fa.enumerate_words(a, 4))
    assert listed == sorted(listed, key=lambda w: (len(w), w))
    assert listed == [w for w in words(4) if w[-1:] == (1,) and w.count(1) % 2]
    assert fa.llex_least_member(fa.EmptyAutomaton(BIN)) is None


def test_relations_projection_and_fixing():
    ident = fa.IdentityRelation(BIN)
    assert fa.accepts(ident, (0, 1), (0, 1))
    assert not fa.accepts(ident, (0, 1), (0,))
    assert fa.accepts(fa.project(ident, 1), (1, 1, 0))
    assert fa.llex_least_member(fa.fix_track(ident, 0, (1, 0))) == (1, 0)
    assert fa.images(ident, (1, 1, 0)) == {(1, 1, 0)}


def test_universal_binary_relation_accepts_all_pairs():
    uni = fa.UniversalAutomaton(Alphabet(2, (0, 1)))
    for u in words(2):
        for v in words(2):
            assert fa.accepts(uni, u, v)
    assert fa.images(uni, (1,), max_extra=1) == {w for w in words(2)}


def test_json_and_dot_roundtrip():
    m = fa.minimize(third_from_last())
    back = fa.from_json(fa.to_json(m, what="test"))
    assert fa.same_dfa(m, back)
    assert fa.to_dot(m).startswith("digraph")


@settings(max_examples=40)
@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 1), st.integers(0, 3)), max_size=14),
       st.sets(st.integers(0, 3), max_size=4))
def test_random_nfa_determinization(edges, accepting):
    delta = [dict() for _ in range(4)]
    for s, a, t in edges:
        delta[s].setdefault((a,), []).append(t)
    n = Nfa(BIN, delta, [0], accepting)
    m = fa.minimize(n)
    for w in words(6):
        assert fa.accepts(n, w) == fa.accepts(m, w)
