"""Digit strings over Sigma_q, the llex order, and convolution of tuples."""
from __future__ import annotations

import re
from typing import Iterable, Optional, Sequence

from .core_ring import Poly, normalize

PAD = None
DigitString = tuple

_BRACKETED = re.compile(r"^\[\s*(-?\d+(\s*,\s*-?\d+)*)?\s*\]$")


def sigma(q: int) -> range:
    """Sigma_q = {-(|q|-1), ..., |q|-1} in its llex digit order."""
    b = abs(q) - 1
    return range(-b, b + 1)


def check_digits(w: Sequence[int], q: int) -> None:
    b = abs(q) - 1
    for d in w:
        if abs(d) > b:
            raise ValueError(f"digit {d} outside Sigma_{abs(q)}")


def string_to_poly(w: Sequence[int]) -> Poly:
    return normalize(w)


def poly_to_string(f: Sequence[int]) -> DigitString:
    return normalize(f)


def llex_key(w: Sequence[int]) -> tuple:
    return (len(w), tuple(w))


def llex_compare(u: Sequence[int], v: Sequence[int]) -> int:
    """-1, 0 or 1 as u precedes, equals or follows v."""
    ku, kv = llex_key(u), llex_key(v)
    return (ku > kv) - (ku < kv)


def format_digits(w: Sequence[int]) -> str:
    return "[" + ",".join(str(d) for d in w) + "]"


def parse_digits(text: str) -> DigitString:
    """Parse ``[d0,d1,...]``; a bare run of single digits like ``011`` is also accepted."""
    s = text.strip()
    if _BRACKETED.match(s):
        body = s[1:-1].strip()
        return tuple(int(x) for x in body.split(",")) if body else ()
    if s in ("", "eps", "ε"):
        return ()
    if s.isdigit():
        return tuple(int(c) for c in s)
    raise ValueError(f"cannot parse digit string {text!r}; use [d0,d1,...]")


def convolve(*words: Sequence) -> tuple:
    """Stack words track by track, padding the shorter ones with PAD."""
    m = max((len(w) for w in words), default=0)
    return tuple(
        tuple(w[i] if i < len(w) else PAD for w in words) for i in range(m)
    )


def deconvolve(conv: Iterable[Sequence[Optional[int]]], arity: int) -> tuple:
    tracks = [[] for _ in range(arity)]
    for sym in conv:
        for i, x in enumerate(sym):
            if x is not PAD:
                tracks[i].append(x)
    return tuple(tuple(t) for t in tracks)


def is_padding_legal(conv: Sequence[Sequence[Optional[int]]]) -> bool:
    if not conv:
        return True
    arity = len(conv[0])
    ended = [False] * arity
    for sym in conv:
        if all(x is PAD for x in sym):
            return False
        for i, x in enumerate(sym):
            if x is PAD:
                ended[i] = True
            elif ended[i]:
                return False
    return True
