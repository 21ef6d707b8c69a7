import pytest
from hypothesis import given, settings, strategies as st

from torus_automata.linmaps import IDENTITY, det, mat_mul, mat_neg, mat_pow
from torus_automata.pell_classify import (
    PellSolution, SearchBounds, brute_force_fundamental, brute_force_theorem3, cayley_lift,
    compose, continued_fraction_sqrt, enumerate_theorem3, enumerate_within, fundamental_solution,
    generate_solutions, matrix_from_ca, monoid_structure,
)

nonsquares = st.integers(2, 300).filter(lambda n: int(n ** 0.5) ** 2 != n)


def test_continued_fractions():
    assert continued_fraction_sqrt(5) == (2, (4,))
    assert continued_fraction_sqrt(2) == (1, (2,))
    assert continued_fraction_sqrt(7) == (2, (1, 1, 1, 4))
    with pytest.raises(ValueError):
        continued_fraction_sqrt(4)


@pytest.mark.parametrize("n,rhs,expected", [
    (5, 1, (9, 4)), (5, -1, (2, 1)), (5, -4, (1, 1)), (5, 4, (3, 1)), (2, 1, (3, 2)),
    (13, -4, (3, 1)), (12, 4, (4, 1)), (8, -4, (2, 1)), (12, -4, None),
])
def test_fundamental_examples(n, rhs, expected):
    sol = fundamental_solution(n, rhs)
    assert (sol.pair if sol else None) == expected


def test_no_negative_solution_for_3():
    assert fundamental_solution(3, -1) is None


@settings(max_examples=80, deadline=None)
@given(nonsquares, st.sampled_from([1, -1, 4, -4]))
def test_fundamental_matches_brute_force(n, rhs):
    sol = fundamental_solution(n, rhs)
    ref = brute_force_fundamental(n, rhs, ymax=3000)
    if sol is not None and sol.y > 3000:
        return  # outside the reference window
    assert (sol.pair if sol else None) == (ref.pair if ref else None)


def test_generate_solutions():
    fund = fundamental_solution(5, 1)
    assert [s.pair for s in generate_solutions(fund, 2)] == [(9, 4), (161, 72)]
    assert [s.pair for s in generate_solutions(fundamental_solution(2, 1), 1)] == [(3, 2)]
    assert generate_solutions(fund, 0) == []
    neg = generate_solutions(fundamental_solution(5, -4), 5)
    assert [s.pair for s in neg] == [(1, 1), (4, 2), (11, 5), (29, 13), (76, 34)]


@given(nonsquares, st.sampled_from([1, -1, 4, -4]))
def test_generated_solutions_solve_and_increase(n, rhs):
    fund = fundamental_solution(n, rhs)
    if fund is None:
        return
    sols = generate_solutions(fund, 4)
    assert all(s.rhs == rhs for s in sols)
    assert [s.x for s in sols] == sorted({s.x for s in sols})


def test_compose_checks_solution():
    with pytest.raises(ValueError):
        PellSolution(2, 2, 1, 5)
    assert compose(PellSolution(3, 1, 4, 5), PellSolution(3, 1, 4, 5)).pair == (7, 3)


def test_cayley_lift():
    assert cayley_lift(PellSolution(1, 1, -4, 5)).pair == (2, 1)
    assert cayley_lift(PellSolution(3, 1, 4, 5)).pair == (9, 4)
    with pytest.raises(ValueError):
        cayley_lift(PellSolution(4, 2, -4, 5))


def test_spot_families():
    fams = enumerate_theorem3(-4, SearchBounds(6))
    r4 = [f for f in fams if f.param.get("r") == 4]
    assert r4 and (r4[0].p, r4[0].q) == (8, -17)
    assert ((-4, 1), (-17, 4)) in [A for _, _, A in r4[0].matrices]
    assert enumerate_theorem3(0) == []
    five = enumerate_theorem3(5, SearchBounds(10))
    hit = [f for f in five if (f.p, f.q) == (7, -11)]
    assert hit and ((-3, 1), (-11, 4)) in [A for _, _, A in hit[0].matrices]
    assert all(abs(f.p) >= 7 for f in five)


@pytest.mark.parametrize("n", [-4, -3, 1, 4, 5, 8, 12, 13, 17, 21, 24, 28, 33, 45])
def test_enumerator_equals_brute_force(n):
    assert enumerate_within(n, 12, 50) == brute_force_theorem3(n, 12, 50)


def test_records_are_unimodular():
    for fam in enumerate_theorem3(13, SearchBounds(12, 30)):
        for rec in fam.records():
            assert rec["det"] in (1, -1)
            assert rec["matrix"] == [list(r) for r in matrix_from_ca(fam.p, fam.q, rec["c"], rec["a"])]


def test_matrix_from_ca_parity():
    with pytest.raises(ValueError):
        matrix_from_ca(7, -11, 2, 1)


@pytest.mark.parametrize("p,q,kind", [(8, -17, "Z4"), (5, -7, "Z6"), (7, -12, "Z2 x Z2"), (7, -11, "Z x Z2")])
def test_monoid_types(p, q, kind):
    info = monoid_structure(p, q)
    assert info["type"] == kind
    assert info["closed"]


def test_monoid_orders():
    A = ((-4, 1), (-17, 4))
    assert mat_mul(A, A) == mat_neg(IDENTITY)
    B = ((-2, 1), (-7, 3))
    assert mat_pow(B, 3) == mat_neg(IDENTITY)
    C = ((-7, 2), (-24, 7))
    assert mat_mul(C, C) == IDENTITY and det(C) == -1
