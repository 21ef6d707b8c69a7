import random

import pytest
from hypothesis import given, strategies as st

from torus_automata import automata as fa
from torus_automata.errors import NotRecognizable
from torus_automata.linmaps import IDENTITY, mat_vec
from torus_automata.semidirect import (
    SemiElement, ZCodec, build_representation, generators, identity_element, inverse, multiply,
    verify_property_a,
)

A = ((-3, 1), (-11, 4))
T1 = ((1, 0), (1, 1))
elements = st.builds(SemiElement, st.integers(-5, 5),
                     st.tuples(st.integers(-50, 50), st.integers(-50, 50)))


@pytest.fixture(scope="module")
def rep(pres7):
    return build_representation(A, pres7)


def test_multiply_examples():
    assert multiply(SemiElement(1, (0, 0)), SemiElement(-1, (0, 0)), A) == identity_element()
    assert multiply(SemiElement(0, (1, 0)), SemiElement(1, (0, 0)), A) == SemiElement(1, mat_vec(A, (1, 0)))
    assert multiply(SemiElement(0, (1, 2)), SemiElement(0, (3, -1)), A) == SemiElement(0, (4, 1))


@given(elements, elements, elements)
def test_group_axioms(g, h, k):
    assert multiply(multiply(g, h, A), k, A) == multiply(g, multiply(h, k, A), A)
    assert multiply(g, inverse(g, A), A) == identity_element()
    assert multiply(inverse(g, A), g, A) == identity_element()


@given(st.integers(-1000, 1000))
def test_zcodec_roundtrip(b):
    z = ZCodec(11)
    w = z.encode(b)
    assert z.decode(w) == b
    assert fa.accepts(z.language(), w)


def test_zcodec_relations():
    z = ZCodec(3)
    succ, ident = z.successor_relation(), z.identity_relation()
    for b in range(-20, 20):
        assert fa.accepts(succ, z.encode(b), z.encode(b + 1))
        assert not fa.accepts(succ, z.encode(b), z.encode(b + 2))
        assert fa.accepts(ident, z.encode(b), z.encode(b))
    with pytest.raises(ValueError):
        z.decode((z.bit1,))


def test_rejects_t1(pres7):
    with pytest.raises(NotRecognizable):
        build_representation(T1, pres7)
    with pytest.raises(NotRecognizable):
        build_representation(((2, 0), (0, 2)), pres7)


def test_encode_decode(rep):
    for g in [identity_element(), SemiElement(3, (4, -7)), SemiElement(-2, (0, 1))]:
        w = rep.encode(g)
        assert rep.decode(w) == g
        assert rep.in_language(w)


def test_multipliers_match_oracle(rep):
    rng = random.Random(11)
    gens = generators(2)
    for _ in range(40):
        g = SemiElement(rng.randint(-5, 5), (rng.randint(-50, 50), rng.randint(-50, 50)))
        for i, gi in enumerate(gens):
            want = rep.encode(multiply(g, gi, A))
            assert fa.accepts(rep.multiplier(i), rep.encode(g), want)
            assert rep.apply(i, rep.encode(g)) == want


def test_property_a(rep):
    report = verify_property_a(rep, [SemiElement(0, (3, 5))])
    assert report["ok"]
    assert report["L_Zn"]["nonempty"] and report["R_A"]["nonempty"]
    e1 = rep.pres.encode((0, 1))
    assert fa.accepts(rep.action_relation, e1, rep.pres.encode((-11, -3)))


def test_identity_matrix_gives_direct_product(pres7):
    rep = build_representation(IDENTITY, pres7)
    for h in [(1, 0), (2, -5)]:
        v = rep.pres.encode((h[1], h[0]))
        assert fa.images(rep.action_relation, v) == {v}
    g = SemiElement(2, (1, 1))
    assert rep.apply(0, rep.encode(g)) == rep.encode(SemiElement(3, (1, 1)))
