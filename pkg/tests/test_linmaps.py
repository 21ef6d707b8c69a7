import itertools

import pytest
from hypothesis import given, strategies as st

from torus_automata import automata as fa
from torus_automata.core_ring import ReprParams, residue
from torus_automata.linmaps import (
    IDENTITY, apply_poly, build_phi_g_relation, det, from_basis, is_recognizable_automorphism,
    mat_inv, mat_mul, mat_pow, mat_vec, matrix_of_poly, on_dom, poly_of_matrix, shift_relation,
    to_basis, trace,
)
from torus_automata.words import sigma

P7 = ReprParams(7, -11)
A = ((-3, 1), (-11, 4))
T1 = ((1, 0), (1, 1))
mats = st.tuples(st.tuples(st.integers(-9, 9), st.integers(-9, 9)),
                 st.tuples(st.integers(-9, 9), st.integers(-9, 9)))


def test_matrix_bridge_examples():
    assert matrix_of_poly((4, 1), P7) == A
    assert det(A) == -1
    assert matrix_of_poly((1,), P7) == IDENTITY
    assert matrix_of_poly((), P7) == ((0, 0), (0, 0))
    assert poly_of_matrix(A, P7) == (4, 1)
    assert poly_of_matrix(IDENTITY, P7) == (1, 0)
    assert poly_of_matrix(T1, P7) is None


def test_recognizability():
    assert is_recognizable_automorphism(A, P7)
    assert is_recognizable_automorphism(IDENTITY, P7)
    assert is_recognizable_automorphism(((-1, 0), (0, -1)), P7)
    assert not is_recognizable_automorphism(T1, P7)
    assert not is_recognizable_automorphism(matrix_of_poly((2,), P7), P7)


@given(st.integers(-30, 30), st.integers(-30, 30), st.integers(-30, 30), st.integers(-30, 30))
def test_matrix_acts_like_multiplication(b, a, r0, r1):
    m = matrix_of_poly((b, a), P7)
    assert from_basis(mat_vec(m, to_basis((r0, r1)))) == apply_poly((b, a), (r0, r1), P7)


@given(mats)
def test_inverse_and_powers(m):
    if det(m) not in (1, -1):
        with pytest.raises(ValueError):
            mat_inv(m)
        return
    assert mat_mul(m, mat_inv(m)) == IDENTITY
    assert mat_pow(m, -2) == mat_pow(mat_inv(m), 2)
    assert mat_pow(m, 3) == mat_mul(m, mat_mul(m, m))


def test_trace_and_det_of_powers():
    assert trace(A) == 1
    assert [trace(mat_pow(A, k)) for k in (1, 2, 3)] == [1, 3, 4]


def test_shift_relation_examples(pres13):
    x = shift_relation(pres13)
    assert fa.accepts(x, (1,), (0, 1))
    assert fa.accepts(x, (), ())
    ws = [w for n in range(3) for w in itertools.product(sigma(3), repeat=n)]
    target = residue((0, 0, 1), pres13.params)
    for w in ws:
        assert fa.accepts(x, (0, 1), w) == (residue(w, pres13.params) == target)


def test_phi_identity_is_equivalence(pres13):
    phi = build_phi_g_relation((1,), pres13)
    assert fa.accepts(phi, (1, 1, 1), (-2, 2, 2))
    assert not fa.accepts(phi, (1,), (0, 1))


def test_phi_zero(pres13):
    phi = build_phi_g_relation((), pres13)
    assert fa.accepts(phi, (2, 1), ())
    assert not fa.accepts(phi, (2, 1), (1,))


def test_phi_g_small_sample(pres7):
    rel = on_dom(build_phi_g_relation((4, 1), pres7), pres7)
    for h in [(1, 0), (0, 1), (2, -3), (-5, 7)]:
        u = pres7.encode(from_basis(h))
        v = pres7.encode(from_basis(mat_vec(A, h)))
        assert fa.images(rel, u) == {v}
