"""Minimal linear recurrences over the rationals, and small exact linear algebra."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .algebra import ScalarLike, to_scalar


class NoRecurrenceFound(Exception):
    """Only the vacuous full-length recurrence fits the supplied window."""


def berlekamp_massey(values: Sequence[ScalarLike]) -> tuple[int, list[Fraction]]:
    """Shortest LFSR generating ``values``.

    Returns ``(L, c)`` with connection polynomial ``1 + c[1] z + ... + c[L] z^L``,
    i.e. ``values[n] + sum_i c[i] values[n-i] = 0`` for ``L <= n < len(values)``.
    """
    s = [to_scalar(v) for v in values]
    C = [Fraction(1)]
    B = [Fraction(1)]
    L, m, b = 0, 1, Fraction(1)
    for n, sn in enumerate(s):
        d = sn + sum((C[i] * s[n - i] for i in range(1, L + 1) if i < len(C)), Fraction(0))
        if d == 0:
            m += 1
            continue
        coef = d / b
        T = list(C)
        if len(C) < len(B) + m:
            C.extend([Fraction(0)] * (len(B) + m - len(C)))
        for i, bi in enumerate(B):
            C[i + m] -= coef * bi
        if 2 * L <= n:
            L, B, b, m = n + 1 - L, T, d, 1
        else:
            m += 1
    C.extend([Fraction(0)] * (L + 1 - len(C)))
    return L, C[:L + 1]


def infer_recurrence(values: Sequence[ScalarLike]) -> tuple[int, tuple[Fraction, ...]]:
    """Minimal ``(r, (h1, ..., hr))`` with ``f_n = sum h_i f_{n-i}`` on the window.

    The all-zero sequence is reported as ``(1, (0,))``.  Raises
    :class:`NoRecurrenceFound` when the linear complexity equals the window
    length, where every recurrence of that order fits vacuously.
    """
    if len(values) < 2:
        raise ValueError("need at least two values")
    L, C = berlekamp_massey(values)
    if L == 0:
        return 1, (Fraction(0),)
    if L >= len(values):
        raise NoRecurrenceFound(f"linear complexity {L} of a length-{len(values)} window")
    return L, tuple(-c for c in C[1:])


def extend_recurrence(seeds: Sequence[Fraction], h: Sequence[Fraction], count: int) -> list[Fraction]:
    out = list(seeds)
    r = len(h)
    while len(out) < count:
        out.append(sum((h[i] * out[-1 - i] for i in range(r)), Fraction(0)))
    return out[:count]


# -- exact linear algebra over Q ---------------------------------------------

def row_reduce(rows: Sequence[Sequence[ScalarLike]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    M = [[to_scalar(v) for v in row] for row in rows]
    pivots: list[int] = []
    if not M:
        return M, pivots
    ncols = len(M[0])
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][col]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][col]
        M[r] = [v * inv for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][col]:
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(col)
        r += 1
        if r == len(M):
            break
    return M, pivots


def rank(rows: Sequence[Sequence[ScalarLike]]) -> int:
    return len(row_reduce(rows)[1])


def solve(A: Sequence[Sequence[ScalarLike]], b: Sequence[ScalarLike]) -> list[Fraction]:
    """Unique solution of a square nonsingular system ``A v = b``."""
    n = len(A)
    aug = [list(row) + [b[i]] for i, row in enumerate(A)]
    R, pivots = row_reduce(aug)
    if pivots != list(range(n)):
        raise ValueError("singular system")
    return [R[i][n] for i in range(n)]
