import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from torus_automata import automata as fa
from torus_automata.core_ring import ReprParams, residue
from torus_automata.presentation import (
    CarryTransducer, add_strings, brute_force_canonical, declared_carry_bounds, run_transducer,
)
from torus_automata.words import sigma, string_to_poly


def strings(q, maxlen):
    for n in range(maxlen + 1):
        yield from itertools.product(sigma(q), repeat=n)


def test_equiv_examples(pres13):
    eq = pres13.equiv
    assert fa.accepts(eq, (1, 1, 1), (-2, 2, 2))
    assert not fa.accepts(eq, (1,), (0, 1))
    for w in [(), (2, -1), (0, 0, 1)]:
        assert fa.accepts(eq, w, w)


def test_equiv_matches_oracle_cubic(pres_cubic):
    pr = pres_cubic.params
    ws = list(strings(pr.q, 2))
    rng = random.Random(3)
    for _ in range(3000):
        u, v = rng.choice(ws), rng.choice(ws)
        assert pres_cubic.equivalent_strings(u, v) == (residue(u, pr) == residue(v, pr))


def test_transducer_examples():
    pr = ReprParams(1, 3)
    assert add_strings((2,), (2,), pr) == (1, 1, 1)
    assert residue(add_strings((1,), (-1,), pr), pr) == (0, 0)
    rel = CarryTransducer(pr, (1, 1))
    assert fa.accepts(rel, (2,), (2,), (1, 1, 1))
    assert fa.accepts(rel, (), (), ())
    assert not fa.accepts(rel, (1,), (1,), (1,))


def test_add_on_dom_examples(pres13):
    add = pres13.add_on_dom
    assert fa.accepts(add, (2,), (2,), (-2, 2, 2))
    assert fa.accepts(add, (1,), (1,), (2,))
    assert fa.accepts(add, (0, 1), (), (0, 1))
    assert not fa.accepts(add, (2,), (2,), (1, 1, 1))


def test_add_total_on_small_pairs(pres13):
    total = fa.project(pres13.add_on_dom, 2)
    dom = list(fa.enumerate_words(pres13.dom, 2))
    for u in dom:
        for v in dom:
            assert fa.accepts(total, u, v)


def test_encode_decode_examples(pres13):
    assert pres13.encode((4, 0)) == (-2, 2, 2)
    assert pres13.encode((0, 0)) == ()
    assert pres13.decode((0, 1)) == (0, 1)
    assert pres13.decode((1,)) == (1, 0)
    assert pres13.decode(()) == (0, 0)


def test_dom_matches_brute_force(pres13):
    pr = pres13.params
    for w in strings(3, 3):
        canon = brute_force_canonical(w, pr, maxlen=6)
        assert pres13.in_dom(w) == (canon == w)
        assert pres13.canonical(w) == canon


@settings(max_examples=60, deadline=None)
@given(st.integers(-200, 200), st.integers(-200, 200))
def test_encode_roundtrip_quadratic(a, b):
    from tests.conftest import presentation

    pres = presentation(7, -11)
    w = pres.encode((a, b))
    assert pres.decode(w) == (a, b)
    assert pres.in_dom(w)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-20, 20), min_size=3, max_size=3))
def test_encode_roundtrip_cubic(v):
    from tests.conftest import presentation

    pres = presentation((1, 1), 5)
    w = pres.encode(v)
    assert pres.decode(w) == tuple(v)
    assert pres.in_dom(w)


@pytest.mark.parametrize("p,q", [(1, 3), (7, -11), ((1, 1), 5), ((2, -1), -7)])
def test_transducer_carries_stay_bounded(p, q):
    pr = ReprParams(p, q)
    bounds = declared_carry_bounds(pr)
    rng = random.Random(0)
    digits = list(sigma(q))
    for _ in range(300):
        u = [rng.choice(digits) for _ in range(rng.randint(0, 10))]
        v = [rng.choice(digits) for _ in range(rng.randint(0, 10))]
        out = run_transducer(pr, (1, 1), (u, v))
        assert residue(string_to_poly(out), pr) == tuple(
            a + b for a, b in zip(residue(u, pr), residue(v, pr)))
    assert all(b >= 0 for b in bounds)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(st.lists(st.integers(-4, 4), max_size=5), st.lists(st.integers(-4, 4), max_size=5)),
                min_size=1, max_size=20))
def test_batch_adder_matches_add_strings(pairs):
    import numpy as np

    from torus_automata.presentation import add_strings_batch

    pr = ReprParams((1, 1), 5)
    pad = lambda w: list(w) + [0] * (5 - len(w))  # noqa: E731
    out = add_strings_batch(np.array([pad(u) for u, _ in pairs]), np.array([pad(v) for _, v in pairs]), pr)
    for row, (u, v) in zip(out.tolist(), pairs):
        lit = list(add_strings(tuple(u), tuple(v), pr))
        assert row[:len(lit)] == lit and not any(row[len(lit):])
