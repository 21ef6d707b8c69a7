import pytest
from hypothesis import given, strategies as st

from torus_automata.words import (
    PAD, check_digits, convolve, deconvolve, format_digits, is_padding_legal, llex_compare,
    parse_digits, sigma,
)

digit_strings = st.lists(st.integers(-2, 2), max_size=6).map(tuple)


def test_sigma():
    assert list(sigma(3)) == [-2, -1, 0, 1, 2]
    assert list(sigma(-11)) == list(range(-10, 11))


def test_check_digits():
    check_digits((2, -2, 0), 3)
    with pytest.raises(ValueError):
        check_digits((3,), 3)


def test_parse_forms():
    assert parse_digits("[-2,2,2]") == (-2, 2, 2)
    assert parse_digits("[]") == ()
    assert parse_digits("011") == (0, 1, 1)
    with pytest.raises(ValueError):
        parse_digits("1,2")


@given(digit_strings)
def test_format_parse_roundtrip(w):
    assert parse_digits(format_digits(w)) == w


def test_llex_order():
    assert llex_compare((2,), (0, 0)) == -1
    assert llex_compare((-1, 0), (0, -2)) == -1
    assert llex_compare((1,), (1,)) == 0


@given(st.lists(digit_strings, min_size=1, max_size=3))
def test_convolution_roundtrip(words):
    conv = convolve(*words)
    assert is_padding_legal(conv)
    assert deconvolve(conv, len(words)) == tuple(words)


def test_padding_rules():
    assert not is_padding_legal([(PAD, 1), (1, 1)])
    assert not is_padding_legal([(PAD, PAD)])
    assert convolve((1,), (0, 1)) == ((1, 0), (PAD, 1))
